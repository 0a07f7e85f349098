// Copyright 2026 The Ambient Corpus Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ambient/document.hpp"
#include "ambient/errors.hpp"
#include "ambient/label_store.hpp"

namespace ambient {

enum class SamplingStrategy { Random, Uncertainty };
SamplingStrategy parse_strategy(std::string_view name);
std::string_view to_string(SamplingStrategy s);

class UnknownDocument : public Error {
 public:
  using Error::Error;
};

struct SessionCounts {
  std::size_t r = 0;
  std::size_t nr = 0;
  std::size_t skipped = 0;
};

/// One annotator's pass over the corpus.
struct LabelSession {
  std::string id;
  std::vector<std::string> order;  // random: seeded shuffle; uncertainty: corpus order
  std::size_t cursor = 0;          // documents consumed (labeled or skipped)
  SamplingStrategy strategy = SamplingStrategy::Random;
  SessionCounts counts;
  std::set<std::string> skipped;
};

/// Next document to show. Random: first id in `order` that is neither
/// labeled in `store` nor skipped. Uncertainty: the unlabeled, unskipped id
/// whose score is nearest 0.5, ties by id; unscored ids come last. Throws
/// ExhaustedSample when nothing remains.
std::string next_to_label(LabelSession& session, const LabelStore& store,
                          const std::map<std::string, double>* scores = nullptr);

struct Progress {
  std::size_t labeled_r = 0;
  std::size_t labeled_nr = 0;
  std::size_t skipped = 0;
  std::size_t remaining = 0;
  std::optional<double> percent_r;  // 100 * R / (R + NR); nothing when no labels
};

/// Labeling workflow over a loaded corpus and an open store. Thread-safe.
class LabelingService {
 public:
  struct Options {
    SamplingStrategy strategy = SamplingStrategy::Random;
    std::uint64_t seed = 0;
    std::map<std::string, double> scores;  // model P(R), for uncertainty sampling
    std::function<std::int64_t()> clock;   // defaults to system time
  };

  LabelingService(std::vector<Document> corpus, LabelStore& store, Options options);

  const Document& next(const std::string& session);
  /// Appends a human label durably. Throws UnknownDocument for ids outside
  /// the corpus. Returns the stored entry and whether it was new.
  std::pair<LabelEntry, LabelStore::AppendResult> label(const std::string& id, Label label,
                                                        const std::string& session);
  void skip(const std::string& id, const std::string& session);
  Progress progress(const std::optional<std::string>& session = std::nullopt) const;
  const Document& document(const std::string& id) const;
  /// Resolved entries in label-file format, one per line.
  std::string export_labels() const;

 private:
  LabelSession& session_locked(const std::string& name);

  std::vector<Document> corpus_;
  std::map<std::string, std::size_t> by_id_;
  LabelStore& store_;
  Options options_;
  std::map<std::string, LabelSession> sessions_;
  mutable std::mutex mutex_;
};

/// HTTP front end for LabelingService.
class LabelingServer {
 public:
  explicit LabelingServer(LabelingService& service, std::string static_dir = {});
  ~LabelingServer();

  /// Binds `host:port` (port 0 picks a free one) and returns the bound
  /// port. Throws Error when the address is unavailable.
  int bind(const std::string& host, int port);
  /// Serves until stop() is called.
  void listen();
  /// Blocks until listen() is accepting connections.
  void wait_until_ready() const;
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// "host:port" -> pair; throws ValidationError.
std::pair<std::string, int> parse_bind_address(const std::string& text);

}  // namespace ambient
