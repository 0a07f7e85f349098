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

#include "ambient/pipeline.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>

#include <json.hpp>

#include "ambient/allotax.hpp"
#include "ambient/binning.hpp"
#include "ambient/digest.hpp"
#include "ambient/errors.hpp"
#include "ambient/ingest.hpp"
#include "ambient/label_store.hpp"
#include "ambient/sentiment.hpp"
#include "ambient/svg.hpp"
#include "ambient/wordshift.hpp"

namespace ambient {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

Lexicon lexicon_with_lens(const std::string& path, const std::optional<std::pair<double, double>>& lens) {
  Lexicon lex = load_lexicon(path);
  return lens ? apply_lens(lex, lens->first, lens->second) : lex;
}

FrequencyDistribution file_distribution(const std::string& path, int ngram) {
  FrequencyDistribution dist;
  for (const auto& doc : read_corpus_file(path).documents) dist.add(tokenize(doc.text, ngram));
  return dist;
}

/// R and NR distributions of a labeled ingest directory.
std::pair<FrequencyDistribution, FrequencyDistribution> partition_distributions(const std::string& corpus_dir,
                                                                                const std::string& labels_path,
                                                                                int ngram) {
  StoreLock::ensure_unlocked(labels_path);
  const BinnedCorpus corpus = load_binned_corpus(corpus_dir);
  const LabelStore labels = LabelStore::load(labels_path);
  FrequencyDistribution r, nr;
  for (const auto& bd : corpus.documents) {
    const auto label = labels.label_of(bd.doc.id);
    if (!label) throw ValidationError("document '" + bd.doc.id + "' has no label");
    (*label == Label::R ? r : nr).add(tokenize(bd.doc.text, ngram));
  }
  return {std::move(r), std::move(nr)};
}

std::ofstream open_output(const std::string& path) {
  if (fs::path(path).has_parent_path()) fs::create_directories(fs::path(path).parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path);
  out.precision(17);
  return out;
}

std::int64_t now_seconds() {
  return std::chrono::duration_cast<std::chrono::seconds>(std::chrono::system_clock::now().time_since_epoch()).count();
}

}  // namespace

namespace commands {

std::size_t ingest(const IngestArgs& args) {
  IngestOptions options;
  options.query = make_anchor_query(args.anchor, args.match_mode, args.language);
  if (args.gazetteer) options.gazetteer = Gazetteer::load(*args.gazetteer);
  if (args.bin_days <= 0) throw ValidationError("bin width must be at least one day");
  options.binning = TimeBinning{parse_iso8601(args.epoch), static_cast<std::int64_t>(args.bin_days) * kSecondsPerDay};
  const IngestResult result = ingest_file(args.corpus, options);
  write_ingest_output(args.out_dir, result, options);
  return result.counts.matched;
}

void sentiment_series(const SeriesArgs& args) {
  StoreLock::ensure_unlocked(args.labels);
  const BinnedCorpus corpus = load_binned_corpus(args.corpus_dir);
  const LabelStore labels = LabelStore::load(args.labels);
  const Lexicon lexicon = lexicon_with_lens(args.lexicon, args.lens);
  const std::int64_t last = corpus.max_bin();

  std::vector<SentimentSeries> series;
  for (Partition p : {Partition::R, Partition::NR, Partition::Combined})
    series.push_back(build_series(corpus, labels, lexicon, p, last));
  if (args.background) {
    const BinnedCorpus background = bin_corpus_file(*args.background, corpus.binning);
    series.push_back(build_series(background, labels, lexicon, Partition::Background, last));
  }
  auto out = open_output(args.out);
  write_series(out, series, corpus.binning, lexicon);
  if (args.plot) {
    auto svg = open_output(*args.plot);
    write_series_svg(svg, series, corpus.binning);
  }
}

void wordshift(const ShiftArgs& args) {
  FrequencyDistribution ref, comp;
  if (args.ref && args.comp) {
    ref = file_distribution(*args.ref, 1);
    comp = file_distribution(*args.comp, 1);
  } else if (args.corpus_dir && args.labels) {
    auto [r, nr] = partition_distributions(*args.corpus_dir, *args.labels, 1);
    ref = std::move(nr);
    comp = std::move(r);
  } else {
    throw ValidationError("wordshift needs --ref and --comp, or --corpus and --labels");
  }
  const Lexicon lexicon = lexicon_with_lens(args.lexicon, args.lens);
  const ShiftReport report = shift_contributions(ref, comp, lexicon);
  auto out = open_output(args.out);
  write_shift(out, report, args.top);
  if (args.plot) {
    auto svg = open_output(*args.plot);
    write_shift_svg(svg, report, args.top);
  }
}

double rtd(const RtdArgs& args) {
  if (args.ngram != 1 && args.ngram != 2) throw ValidationError("--ngram must be 1 or 2");
  FrequencyDistribution d1, d2;
  if (args.corpus1 && args.corpus2) {
    d1 = file_distribution(*args.corpus1, args.ngram);
    d2 = file_distribution(*args.corpus2, args.ngram);
  } else if (args.corpus_dir && args.labels) {
    std::tie(d1, d2) = partition_distributions(*args.corpus_dir, *args.labels, args.ngram);
  } else {
    throw ValidationError("rtd needs --corpus1 and --corpus2, or --corpus and --labels");
  }
  if (d1.empty() || d2.empty()) throw ValidationError("rtd needs two nonempty corpora");
  const RtdReport report = ambient::rtd(d1, d2, RtdConfig{args.alpha});
  write_rtd_output(args.out_dir, report, args.top, args.cells_per_decade, args.ngram);
  return report.divergence;
}

EvalReport train(const TrainArgs& args) {
  StoreLock::ensure_unlocked(args.labels);
  const EmbeddingMatrix embeddings = read_embeddings(args.embeddings);
  const LabelStore labels = LabelStore::load(args.labels);

  std::vector<LabeledId> labeled;
  for (const auto& e : labels.resolved())
    if (e.source == LabelSource::Human) labeled.push_back({e.id, e.label});
  std::sort(labeled.begin(), labeled.end(), [](const auto& a, const auto& b) { return a.id < b.id; });

  const SplitResult parts = split(labeled, args.train_frac, args.seed, args.stratified);
  TrainConfig config = args.config;
  config.seed = args.seed;
  Model model = ambient::train(embeddings, labels, parts.train, config);
  if (!(args.threshold > 0.0 && args.threshold < 1.0)) throw ValidationError("threshold must lie in (0, 1)");
  model.threshold = args.threshold;

  EvalReport report;
  if (!parts.test.empty()) {
    const auto row_of = embeddings.index();
    EmbeddingMatrix test;
    test.vectors.resize(static_cast<Eigen::Index>(parts.test.size()), embeddings.dim());
    std::map<std::string, Label> truth;
    for (std::size_t i = 0; i < parts.test.size(); ++i) {
      auto row = row_of.find(parts.test[i]);
      if (row == row_of.end()) throw TrainError("no embedding for test id '" + parts.test[i] + "'");
      test.ids.push_back(parts.test[i]);
      test.vectors.row(static_cast<Eigen::Index>(i)) = embeddings.vectors.row(row->second);
      truth[parts.test[i]] = *labels.label_of(parts.test[i]);
    }
    std::map<std::string, Label> predicted;
    for (const auto& p : predict(model, test)) predicted[p.id] = p.label;
    report = evaluate(predicted, truth);
  }
  report.train_frac = parts.train_frac;
  report.seed = parts.seed;
  save_model(args.model_out, model, &report);
  return report;
}

std::size_t classify(const ClassifyArgs& args) {
  StoreLock::ensure_unlocked(args.labels_out);
  const EmbeddingMatrix embeddings = read_embeddings(args.embeddings);
  const Model model = load_model(args.model);
  if (fs::path(args.labels_out).has_parent_path()) fs::create_directories(fs::path(args.labels_out).parent_path());
  LabelStore store = LabelStore::open(args.labels_out);
  const std::int64_t at = args.at.value_or(now_seconds());
  std::size_t appended = 0;
  for (const auto& p : predict(model, embeddings))
    appended += store.append({p.id, p.label, LabelSource::Model, p.score, at}) == LabelStore::AppendResult::Appended;
  return appended;
}

EvalReport evaluate(const std::string& pred_path, const std::string& truth_path) {
  const LabelStore pred = LabelStore::load(pred_path);
  const LabelStore truth_store = LabelStore::load(truth_path);
  std::map<std::string, Label> truth, predicted;
  for (const auto& e : truth_store.resolved()) truth[e.id] = e.label;
  for (const auto& [id, label] : truth) {
    auto p = pred.label_of(id);
    if (!p) throw EvalError("no prediction for id '" + id + "'");
    predicted[id] = *p;
  }
  return ambient::evaluate(predicted, truth);
}

}  // namespace commands

PipelineConfig load_pipeline_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config: " + path);
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw ValidationError("config is not a JSON object: " + path);

  const fs::path base = fs::absolute(path).parent_path();
  auto resolve = [&](const std::string& p) { return fs::path(p).is_absolute() ? p : (base / p).lexically_normal().string(); };
  auto req_path = [&](const char* key) -> std::string {
    if (!j.contains(key) || !j[key].is_string()) throw ValidationError(std::string("config needs a '") + key + "' path");
    return resolve(j[key].get<std::string>());
  };

  try {
    PipelineConfig c;
    c.config_path = path;
    c.anchor = j.at("anchor").get<std::string>();
    c.match_mode = parse_match_mode(j.value("match_mode", std::string("word")));
    if (j.contains("language") && !j["language"].is_null()) c.language = j["language"].get<std::string>();
    c.corpus = req_path("corpus");
    c.lexicon = req_path("lexicon");
    if (j.contains("gazetteer") && !j["gazetteer"].is_null()) c.gazetteer = req_path("gazetteer");
    c.embeddings = req_path("embeddings");
    c.labels = req_path("labels");
    c.out_dir = req_path("out_dir");
    c.epoch = j.at("epoch").get<std::string>();
    c.bin_days = j.value("bin_days", 14);
    c.alpha = j.value("alpha", 0.25);
    if (j.contains("seed") && !j["seed"].is_null()) c.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("lens") && !j["lens"].is_null()) c.lens = parse_lens(j["lens"].get<std::string>());
    c.threshold = j.value("threshold", 0.5);
    c.sample_size = j.value("sample_size", kDefaultLabelSample);
    c.train_frac = j.value("train_frac", kDefaultTrainFraction);
    c.stratified = j.value("stratified", false);
    if (auto t = j.find("train"); t != j.end()) {
      c.train.learning_rate = t->value("learning_rate", c.train.learning_rate);
      c.train.epochs = t->value("epochs", c.train.epochs);
      c.train.l2 = t->value("l2", c.train.l2);
      c.train.class_weighting = t->value("class_weight", false);
    }
    c.shift_top = j.value("shift_top", std::size_t{20});
    c.rtd_top = j.value("rtd_top", std::size_t{40});
    c.ngram = j.value("ngram", 1);
    return c;
  } catch (const ValidationError&) {
    throw;
  } catch (const std::exception& e) {
    throw ValidationError(std::string("bad config: ") + e.what());
  }
}

void validate(const PipelineConfig& c) {
  auto must_exist = [](const std::string& what, const std::string& p) {
    if (!fs::exists(p)) throw ValidationError(what + " not found: " + p);
  };
  must_exist("corpus", c.corpus);
  must_exist("lexicon", c.lexicon);
  if (c.gazetteer) must_exist("gazetteer", *c.gazetteer);
  must_exist("embeddings", c.embeddings);
  must_exist("embedding ids", ids_path_for(c.embeddings));
  must_exist("labels", c.labels);
  if (!c.seed) throw ValidationError("config needs a 'seed' for the sampling and split stages");
  make_anchor_query(c.anchor, c.match_mode, c.language);
  parse_iso8601(c.epoch);
  if (c.bin_days <= 0) throw ValidationError("bin_days must be positive");
  if (!(c.alpha > 0.0)) throw ValidationError("alpha must be positive");
  if (!(c.train_frac > 0.0 && c.train_frac < 1.0)) throw ValidationError("train_frac must lie in (0, 1)");
  if (!(c.threshold > 0.0 && c.threshold < 1.0)) throw ValidationError("threshold must lie in (0, 1)");
  if (c.ngram != 1 && c.ngram != 2) throw ValidationError("ngram must be 1 or 2");
  if (c.sample_size == 0) throw ValidationError("sample_size must be positive");
}

namespace {

struct Stage {
  std::string name;
  json params;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::function<void()> run;
};

std::string stage_key(const Stage& s) {
  json k = {{"stage", s.name}, {"version", kToolkitVersion}, {"params", s.params}};
  json digests = json::array();
  for (const auto& in : s.inputs) digests.push_back(sha256_file(in));
  k["inputs"] = std::move(digests);
  return sha256_hex(k.dump());
}

std::map<std::string, json> previous_stages(const std::string& manifest_path) {
  std::map<std::string, json> out;
  std::ifstream in(manifest_path);
  if (!in) return out;
  json m = json::parse(in, nullptr, false);
  if (m.is_discarded() || !m.contains("stages")) return out;
  for (const auto& s : m["stages"]) out[s.value("name", "")] = s;
  return out;
}

bool outputs_match(const json& previous, const std::string& key) {
  if (previous.value("key", "") != key) return false;
  for (const auto& o : previous["outputs"]) {
    const std::string p = o.value("path", "");
    if (!fs::exists(p) || sha256_file(p) != o.value("digest", "")) return false;
  }
  return true;
}

}  // namespace

RunManifest run_pipeline(const PipelineConfig& c) {
  validate(c);
  const fs::path out = c.out_dir;
  fs::create_directories(out);
  const std::string seed = std::to_string(*c.seed);

  const std::string ingest_dir = (out / "ingest").string();
  const std::string corpus_jsonl = (out / "ingest" / "corpus.jsonl").string();
  const std::string manifest_json = (out / "ingest" / "manifest.json").string();
  const std::string sample_txt = (out / "label" / "sample.txt").string();
  const std::string split_json = (out / "label" / "split.json").string();
  const std::string model_json = (out / "train" / "model.json").string();
  const std::string final_labels = (out / "classify" / "labels.jsonl").string();
  const std::string measure = (out / "measure").string();

  std::vector<Stage> stages;

  std::vector<std::string> ingest_inputs{c.corpus};
  if (c.gazetteer) ingest_inputs.push_back(*c.gazetteer);
  stages.push_back({"ingest",
                    {{"anchor", c.anchor},
                     {"match_mode", std::string(to_string(c.match_mode))},
                     {"language", c.language ? json(*c.language) : json(nullptr)},
                     {"epoch", c.epoch},
                     {"bin_days", c.bin_days}},
                    ingest_inputs,
                    {corpus_jsonl, manifest_json},
                    [&] {
                      commands::ingest({c.corpus, c.anchor, c.match_mode, c.language, c.gazetteer, c.epoch,
                                        c.bin_days, ingest_dir});
                    }});

  stages.push_back({"label",
                    {{"sample_size", c.sample_size}, {"seed", *c.seed}, {"train_frac", c.train_frac},
                     {"stratified", c.stratified}},
                    {corpus_jsonl, c.labels},
                    {sample_txt, split_json},
                    [&] {
                      StoreLock::ensure_unlocked(c.labels);
                      const auto docs = read_corpus_file(corpus_jsonl).documents;
                      std::vector<std::string> ids;
                      for (const auto& d : docs) ids.push_back(d.id);
                      fs::create_directories(out / "label");
                      {
                        auto f = open_output(sample_txt);
                        for (const auto& id : sample_for_labeling(ids, c.sample_size, *c.seed))
                          f << id << '\n';
                      }
                      const std::set<std::string> corpus_ids(ids.begin(), ids.end());
                      const LabelStore labels = LabelStore::load(c.labels);
                      std::vector<LabeledId> labeled;
                      for (const auto& e : labels.resolved())
                        if (e.source == LabelSource::Human && corpus_ids.count(e.id)) labeled.push_back({e.id, e.label});
                      std::sort(labeled.begin(), labeled.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
                      const SplitResult parts = split(labeled, c.train_frac, *c.seed, c.stratified);
                      auto f = open_output(split_json);
                      f << json{{"train_frac", parts.train_frac}, {"seed", parts.seed}, {"train", parts.train},
                                {"test", parts.test}}
                               .dump(2)
                        << '\n';
                    }});

  stages.push_back({"train",
                    {{"learning_rate", c.train.learning_rate}, {"epochs", c.train.epochs}, {"l2", c.train.l2},
                     {"class_weight", c.train.class_weighting}, {"threshold", c.threshold}},
                    {c.embeddings, ids_path_for(c.embeddings), c.labels, split_json},
                    {model_json},
                    [&] {
                      commands::TrainArgs args;
                      args.embeddings = c.embeddings;
                      args.labels = c.labels;
                      args.train_frac = c.train_frac;
                      args.seed = *c.seed;
                      args.stratified = c.stratified;
                      args.threshold = c.threshold;
                      args.config = c.train;
                      args.model_out = model_json;
                      fs::create_directories(out / "train");
                      commands::train(args);
                    }});

  stages.push_back({"classify",
                    {},
                    {c.embeddings, ids_path_for(c.embeddings), model_json, c.labels, corpus_jsonl, manifest_json},
                    {final_labels},
                    [&] {
                      StoreLock::ensure_unlocked(c.labels);
                      fs::create_directories(out / "classify");
                      fs::remove(final_labels);
                      {
                        LabelStore merged = LabelStore::open(final_labels);
                        for (const auto& e : LabelStore::load(c.labels).resolved())
                          if (e.source == LabelSource::Human) merged.append(e);
                      }
                      const BinnedCorpus corpus = load_binned_corpus(ingest_dir);
                      commands::classify({c.embeddings, model_json, final_labels, corpus.binning.epoch_start});
                      const LabelStore merged = LabelStore::load(final_labels);
                      for (const auto& bd : corpus.documents)
                        if (!merged.label_of(bd.doc.id))
                          throw ValidationError("document '" + bd.doc.id + "' has neither a human label nor an embedding");
                    }});

  const std::string series_out = measure + "/sentiment.jsonl";
  const std::string series_svg = measure + "/sentiment.svg";
  const std::string shift_out = measure + "/wordshift.jsonl";
  const std::string shift_svg = measure + "/wordshift.svg";
  const std::string rtd_dir = measure + "/rtd";
  stages.push_back({"measure",
                    {{"alpha", c.alpha},
                     {"lens", c.lens ? json::array({c.lens->first, c.lens->second}) : json(nullptr)},
                     {"shift_top", c.shift_top},
                     {"rtd_top", c.rtd_top},
                     {"ngram", c.ngram}},
                    {corpus_jsonl, manifest_json, final_labels, c.lexicon},
                    {series_out, series_svg, shift_out, shift_svg, rtd_dir + "/divergence.json",
                     rtd_dir + "/contributions.tsv", rtd_dir + "/histogram.tsv"},
                    [&] {
                      commands::sentiment_series({ingest_dir, final_labels, c.lexicon, c.lens, std::nullopt,
                                                  series_out, series_svg});
                      commands::ShiftArgs shift;
                      shift.corpus_dir = ingest_dir;
                      shift.labels = final_labels;
                      shift.lexicon = c.lexicon;
                      shift.lens = c.lens;
                      shift.top = c.shift_top;
                      shift.out = shift_out;
                      shift.plot = shift_svg;
                      commands::wordshift(shift);
                      commands::RtdArgs r;
                      r.corpus_dir = ingest_dir;
                      r.labels = final_labels;
                      r.alpha = c.alpha;
                      r.ngram = c.ngram;
                      r.top = c.rtd_top;
                      r.out_dir = rtd_dir;
                      commands::rtd(r);
                    }});

  RunManifest manifest;
  manifest.path = (out / "run_manifest.json").string();
  const auto previous = previous_stages(manifest.path);

  json stage_records = json::array();
  for (auto& stage : stages) {
    StageRecord record;
    record.name = stage.name;
    try {
      record.key = stage_key(stage);
      auto prev = previous.find(stage.name);
      if (prev != previous.end() && outputs_match(prev->second, record.key)) {
        record.cached = true;
      } else {
        stage.run();
      }
      for (const auto& o : stage.outputs) record.outputs.emplace_back(o, sha256_file(o));
    } catch (const std::exception& e) {
      throw StageError(stage.name, e.what());
    }
    json outputs = json::array();
    for (const auto& [p, d] : record.outputs) outputs.push_back({{"path", p}, {"digest", d}});
    stage_records.push_back({{"name", record.name}, {"key", record.key}, {"cached", record.cached},
                             {"outputs", std::move(outputs)}});
    manifest.stages.push_back(std::move(record));
  }

  json inputs = json::object();
  std::vector<std::string> input_paths{c.corpus, c.lexicon, c.embeddings, ids_path_for(c.embeddings), c.labels};
  if (c.gazetteer) input_paths.push_back(*c.gazetteer);
  for (const auto& p : input_paths) inputs[p] = sha256_file(p);

  json m = {{"version", kToolkitVersion},
            {"config", c.config_path},
            {"seed", *c.seed},
            {"inputs", std::move(inputs)},
            {"stages", std::move(stage_records)}};
  auto f = open_output(manifest.path);
  f << m.dump(2) << '\n';
  return manifest;
}

}  // namespace ambient
