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

#include "ambient/ingest.hpp"

#include <filesystem>
#include <fstream>
#include <unordered_set>

#include <json.hpp>

#include "ambient/errors.hpp"

namespace ambient {

namespace fs = std::filesystem;
using json = nlohmann::json;

IngestResult ingest(std::istream& in, const IngestOptions& options) {
  IngestResult result;
  auto& counts = result.counts;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty() || line == "\r") continue;
    ++counts.records;

    Document doc;
    try {
      doc = parse_document(line, line_number);
    } catch (const RecordError&) {
      ++counts.bad_records;
      continue;
    }
    if (!seen.insert(doc.id).second) {
      ++counts.duplicate_ids;
      continue;
    }
    if (!language_accepted(doc, options.query)) {
      ++counts.language_excluded;
      continue;
    }
    std::optional<CityState> location;
    if (options.gazetteer) {
      if (doc.location_raw) location = parse_location(*doc.location_raw, *options.gazetteer);
      if (!location) {
        ++counts.location_excluded;
        continue;
      }
    }
    if (!match_keyword(doc.text, options.query)) {
      ++counts.keyword_excluded;
      continue;
    }
    if (doc.timestamp < options.binning.epoch_start) {
      ++counts.before_epoch;
      continue;
    }
    const std::int64_t bin = assign_bin(doc.timestamp, options.binning);
    ++result.per_bin[bin];
    ++counts.matched;
    result.documents.push_back({std::move(doc), bin, std::move(location)});
  }
  if (in.bad()) throw Error("read error while ingesting corpus");
  return result;
}

IngestResult ingest_file(const std::string& path, const IngestOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot open corpus file: " + path);
  return ingest(in, options);
}

void write_ingest_output(const std::string& dir, const IngestResult& result, const IngestOptions& options) {
  fs::create_directories(dir);
  {
    std::ofstream out(fs::path(dir) / "corpus.jsonl", std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + dir + "/corpus.jsonl");
    for (const auto& bd : result.documents) out << serialize_document(bd.doc) << '\n';
  }

  const auto& c = result.counts;
  json manifest;
  manifest["anchor"] = options.query.anchor;
  manifest["match_mode"] = std::string(to_string(options.query.match_mode));
  manifest["language"] = options.query.required_language ? json(*options.query.required_language) : json(nullptr);
  manifest["location_filter"] = options.gazetteer.has_value();
  manifest["epoch"] = format_iso8601(options.binning.epoch_start);
  manifest["epoch_seconds"] = options.binning.epoch_start;
  manifest["bin_width_seconds"] = options.binning.width;
  manifest["counts"] = {{"records", c.records},
                        {"bad_records", c.bad_records},
                        {"duplicate_ids", c.duplicate_ids},
                        {"language_excluded", c.language_excluded},
                        {"location_excluded", c.location_excluded},
                        {"keyword_excluded", c.keyword_excluded},
                        {"before_epoch", c.before_epoch},
                        {"matched", c.matched}};
  json bins = json::array();
  if (!result.per_bin.empty()) {
    const std::int64_t last = result.per_bin.rbegin()->first;
    for (std::int64_t i = 0; i <= last; ++i) {
      auto it = result.per_bin.find(i);
      bins.push_back({{"index", i},
                      {"start", format_iso8601(options.binning.bin_start(i))},
                      {"n_documents", it == result.per_bin.end() ? 0 : it->second}});
    }
  }
  manifest["bins"] = std::move(bins);

  std::ofstream out(fs::path(dir) / "manifest.json", std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + dir + "/manifest.json");
  out << manifest.dump(2) << '\n';
}

std::int64_t BinnedCorpus::max_bin() const {
  std::int64_t m = -1;
  for (const auto& d : documents) m = std::max(m, d.bin);
  return m;
}

BinnedCorpus load_binned_corpus(const std::string& dir) {
  const fs::path manifest_path = fs::path(dir) / "manifest.json";
  std::ifstream in(manifest_path);
  if (!in) throw LoadError("cannot open " + manifest_path.string());
  json manifest = json::parse(in, nullptr, false);
  if (manifest.is_discarded() || !manifest.contains("epoch_seconds") || !manifest.contains("bin_width_seconds"))
    throw LoadError("malformed ingest manifest: " + manifest_path.string());

  TimeBinning binning{manifest["epoch_seconds"].get<std::int64_t>(),
                      manifest["bin_width_seconds"].get<std::int64_t>()};
  BinnedCorpus corpus = bin_corpus_file((fs::path(dir) / "corpus.jsonl").string(), binning);
  corpus.anchor = manifest.value("anchor", "");
  return corpus;
}

BinnedCorpus bin_corpus_file(const std::string& path, const TimeBinning& binning) {
  BinnedCorpus corpus;
  corpus.binning = binning;
  for (auto& doc : read_corpus_file(path).documents) {
    if (doc.timestamp < binning.epoch_start) continue;
    const std::int64_t bin = assign_bin(doc.timestamp, binning);
    corpus.documents.push_back({std::move(doc), bin, std::nullopt});
  }
  return corpus;
}

}  // namespace ambient
