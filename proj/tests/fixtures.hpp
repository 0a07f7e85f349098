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

// Builders for the fixture files that the pipeline and CLI tests share.

#include <json.hpp>

#include "ambient/embeddings.hpp"
#include "ambient/label_store.hpp"
#include "oracles.hpp"

namespace testutil {

/// Relevance of the fixture corpus documents, used to place their synthetic
/// embeddings on either side of a separating direction.
inline const std::map<std::string, bool>& fixture_relevance() {
  static const std::map<std::string, bool> r = {
      {"s01", true},  {"s02", true},  {"s03", false}, {"s04", false}, {"s05", true},  {"s06", false},
      {"s07", false}, {"s08", true},  {"s09", true},  {"s10", false}, {"s11", true},  {"s12", true},
      {"s13", false}, {"s14", true},  {"s18", false}, {"s19", true},  {"s20", true}};
  return r;
}

inline void write_fixture_embeddings(const std::string& path, int dim = 4) {
  ambient::EmbeddingMatrix m;
  const auto& rel = fixture_relevance();
  m.vectors.resize(static_cast<Eigen::Index>(rel.size()), dim);
  Eigen::Index row = 0;
  for (const auto& [id, relevant] : rel) {
    m.ids.push_back(id);
    for (int j = 0; j < dim; ++j)
      m.vectors(row, j) = static_cast<float>((relevant ? 1.0 : -1.0) * (1.0 + 0.1 * j) + 0.05 * (row % 3));
    ++row;
  }
  ambient::write_embeddings(path, m);
}

/// A pipeline config over the fixture data, written into `dir`.
inline std::string write_fixture_config(const TempDir& dir, const std::string& out = "out") {
  write_fixture_embeddings(dir.file("emb.bin"));
  spit(dir.file("labels.jsonl"), slurp(data_path("labels_fixture.jsonl")));
  nlohmann::json cfg = {{"anchor", "solar"},
                        {"match_mode", "word"},
                        {"language", "en"},
                        {"corpus", data_path("corpus_fixture.jsonl")},
                        {"lexicon", data_path("lexicon_fixture.tsv")},
                        {"gazetteer", data_path("gazetteer.tsv")},
                        {"embeddings", "emb.bin"},
                        {"labels", "labels.jsonl"},
                        {"out_dir", out},
                        {"epoch", "2020-01-01"},
                        {"bin_days", 14},
                        {"seed", 7},
                        {"sample_size", 10},
                        {"train_frac", 0.67},
                        {"train", {{"epochs", 300}, {"learning_rate", 0.5}}},
                        {"shift_top", 10},
                        {"rtd_top", 10}};
  const auto path = dir.file("config.json");
  spit(path, cfg.dump(2));
  return path;
}

}  // namespace testutil
