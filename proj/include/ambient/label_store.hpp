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
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ambient {

enum class Label { R, NR };
enum class LabelSource { Human, Model };

std::string_view to_string(Label label);
std::string_view to_string(LabelSource source);
Label parse_label(std::string_view text);
LabelSource parse_label_source(std::string_view text);

struct LabelEntry {
  std::string id;
  Label label = Label::NR;
  LabelSource source = LabelSource::Human;
  std::optional<double> score;  // model probability of R, in [0, 1]
  std::int64_t at = 0;          // UTC seconds

  bool operator==(const LabelEntry&) const = default;
};

/// One line of the label file, without the trailing newline.
std::string serialize_label(const LabelEntry& entry);
LabelEntry parse_label_line(std::string_view line, std::size_t row = 0);

/// Document id -> label, backed by an append-only newline-delimited log.
///
/// Replay is last-writer-wins per id, except that a model entry never
/// replaces a human one. Appends are single write() calls followed by
/// fdatasync, so after a crash the file holds a prefix of acknowledged
/// appends plus at most one torn trailing line, which replay drops.
class LabelStore {
 public:
  enum class AppendResult { Appended, Unchanged, HumanPrecedence };

  LabelStore() = default;  // in-memory only
  ~LabelStore();
  LabelStore(LabelStore&& other) noexcept;
  LabelStore& operator=(LabelStore&& other) noexcept;
  LabelStore(const LabelStore&) = delete;
  LabelStore& operator=(const LabelStore&) = delete;

  /// Read-only load. Throws LoadError on a malformed complete line.
  static LabelStore load(const std::string& path);
  /// Loads (creating if absent) and keeps the file open for appends. A torn
  /// trailing line is truncated away.
  static LabelStore open(const std::string& path);

  /// Applies and, for file-backed stores, durably appends the entry before
  /// returning. Resubmitting the current label from the same source is a
  /// no-op; model entries for human-labeled ids are rejected.
  AppendResult append(const LabelEntry& entry);

  std::optional<LabelEntry> get(const std::string& id) const;
  std::optional<Label> label_of(const std::string& id) const;

  /// Resolved entries ordered by the log position of their latest write.
  std::vector<LabelEntry> resolved() const;
  /// Every accepted log record in file order.
  const std::vector<LabelEntry>& log() const noexcept { return log_; }

  std::size_t size() const;
  std::size_t torn_lines() const noexcept { return torn_lines_; }
  const std::string& path() const noexcept { return path_; }

 private:
  AppendResult apply(const LabelEntry& entry);
  static LabelStore replay(const std::string& path, bool truncate_torn_tail);

  struct Slot {
    LabelEntry entry;
    std::size_t log_index;
  };

  std::string path_;
  int fd_ = -1;
  std::map<std::string, Slot> entries_;
  std::vector<LabelEntry> log_;
  std::size_t torn_lines_ = 0;
  mutable std::mutex mutex_;
};

/// Advisory lock on `<labels>.lock`. The labeling service holds it
/// exclusively; measurement commands check it before reading the store.
class StoreLock {
 public:
  /// Acquires an exclusive lock or throws ValidationError if it is held.
  static StoreLock acquire_exclusive(const std::string& labels_path);
  /// Throws ValidationError when an exclusive holder is present.
  static void ensure_unlocked(const std::string& labels_path);

  StoreLock(StoreLock&& other) noexcept : fd_(other.fd_) { other.fd_ = -1; }
  StoreLock& operator=(StoreLock&&) = delete;
  ~StoreLock();

 private:
  explicit StoreLock(int fd) : fd_(fd) {}
  int fd_;
};

}  // namespace ambient
