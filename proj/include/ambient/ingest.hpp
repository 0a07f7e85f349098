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
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ambient/binning.hpp"
#include "ambient/document.hpp"
#include "ambient/keyword.hpp"
#include "ambient/location.hpp"

namespace ambient {

struct IngestOptions {
  AnchorQuery query;
  std::optional<Gazetteer> gazetteer;  // when set, documents need a matching location
  TimeBinning binning;
};

struct BinnedDocument {
  Document doc;
  std::int64_t bin = 0;
  std::optional<CityState> location;
};

struct IngestCounts {
  std::size_t records = 0;
  std::size_t bad_records = 0;
  std::size_t duplicate_ids = 0;
  std::size_t language_excluded = 0;
  std::size_t location_excluded = 0;
  std::size_t keyword_excluded = 0;
  std::size_t before_epoch = 0;
  std::size_t matched = 0;
};

struct IngestResult {
  std::vector<BinnedDocument> documents;  // input order
  IngestCounts counts;
  std::map<std::int64_t, std::size_t> per_bin;
};

/// Filters a newline-delimited corpus stream. Bad records are skipped and
/// counted; nothing short of an unreadable stream aborts the run.
IngestResult ingest(std::istream& in, const IngestOptions& options);
IngestResult ingest_file(const std::string& path, const IngestOptions& options);

/// Writes `corpus.jsonl` and `manifest.json` into `dir` (created if needed).
void write_ingest_output(const std::string& dir, const IngestResult& result, const IngestOptions& options);

/// An ingest output directory read back for measurement.
struct BinnedCorpus {
  TimeBinning binning;
  std::string anchor;
  std::vector<BinnedDocument> documents;

  std::int64_t max_bin() const;
};

BinnedCorpus load_binned_corpus(const std::string& dir);

/// Bins a plain corpus file with an explicit binning; documents before the
/// epoch are dropped.
BinnedCorpus bin_corpus_file(const std::string& path, const TimeBinning& binning);

}  // namespace ambient
