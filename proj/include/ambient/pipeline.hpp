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

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ambient/classifier.hpp"
#include "ambient/keyword.hpp"
#include "ambient/lexicon.hpp"

namespace ambient {

inline constexpr const char* kToolkitVersion = "0.3.0";

/// Command-level operations shared by the CLI and run_pipeline.
namespace commands {

struct IngestArgs {
  std::string corpus;
  std::string anchor;
  MatchMode match_mode = MatchMode::WordBoundary;
  std::optional<std::string> language;
  std::optional<std::string> gazetteer;
  std::string epoch;  // ISO-8601
  int bin_days = 14;
  std::string out_dir;
};
/// Returns the number of matched documents.
std::size_t ingest(const IngestArgs& args);

struct SeriesArgs {
  std::string corpus_dir;
  std::string labels;
  std::string lexicon;
  std::optional<std::pair<double, double>> lens;
  std::optional<std::string> background;
  std::string out;
  std::optional<std::string> plot;
};
void sentiment_series(const SeriesArgs& args);

struct ShiftArgs {
  // Either ref/comp corpus files, or corpus_dir + labels (ref = NR, comp = R).
  std::optional<std::string> ref;
  std::optional<std::string> comp;
  std::optional<std::string> corpus_dir;
  std::optional<std::string> labels;
  std::string lexicon;
  std::optional<std::pair<double, double>> lens;
  std::size_t top = 20;
  std::string out;
  std::optional<std::string> plot;
};
void wordshift(const ShiftArgs& args);

struct RtdArgs {
  // Either corpus1/corpus2 files, or corpus_dir + labels (corpus1 = R, corpus2 = NR).
  std::optional<std::string> corpus1;
  std::optional<std::string> corpus2;
  std::optional<std::string> corpus_dir;
  std::optional<std::string> labels;
  double alpha = 0.25;
  int ngram = 1;
  std::size_t top = 40;
  int cells_per_decade = 4;
  std::string out_dir;
};
/// Returns the divergence.
double rtd(const RtdArgs& args);

struct TrainArgs {
  std::string embeddings;
  std::string labels;
  double train_frac = kDefaultTrainFraction;
  std::uint64_t seed = 0;
  bool stratified = false;
  double threshold = 0.5;
  TrainConfig config;
  std::string model_out;
};
EvalReport train(const TrainArgs& args);

struct ClassifyArgs {
  std::string embeddings;
  std::string model;
  std::string labels_out;
  std::optional<std::int64_t> at;  // timestamp stamped on model labels; default now
};
/// Appends model labels to `labels_out`; human entries there are kept.
std::size_t classify(const ClassifyArgs& args);

/// Restricts predictions to the truth ids before scoring.
EvalReport evaluate(const std::string& pred_path, const std::string& truth_path);

}  // namespace commands

struct PipelineConfig {
  std::string config_path;
  std::string anchor;
  MatchMode match_mode = MatchMode::WordBoundary;
  std::optional<std::string> language;
  std::string corpus;
  std::string lexicon;
  std::optional<std::string> gazetteer;
  std::string embeddings;
  std::string labels;
  std::string out_dir;
  std::string epoch;
  int bin_days = 14;
  double alpha = 0.25;
  std::optional<std::uint64_t> seed;
  std::optional<std::pair<double, double>> lens;
  double threshold = 0.5;
  std::size_t sample_size = kDefaultLabelSample;
  double train_frac = kDefaultTrainFraction;
  bool stratified = false;
  TrainConfig train;
  std::size_t shift_top = 20;
  std::size_t rtd_top = 40;
  int ngram = 1;
};

/// Reads a JSON config; relative paths resolve against its directory.
PipelineConfig load_pipeline_config(const std::string& path);

/// Throws ValidationError naming the first problem.
void validate(const PipelineConfig& config);

struct StageRecord {
  std::string name;
  std::string key;
  bool cached = false;
  std::vector<std::pair<std::string, std::string>> outputs;  // path, sha256
};

struct RunManifest {
  std::vector<StageRecord> stages;
  std::string path;
};

/// Runs ingest, label, train, classify and measure in order, skipping
/// stages whose key and recorded outputs are unchanged since the last run.
/// Writes `<out_dir>/run_manifest.json`. Throws ValidationError before any
/// stage runs, StageError on a stage failure.
RunManifest run_pipeline(const PipelineConfig& config);

}  // namespace ambient
