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

#include <signal.h>

#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "ambient/binning.hpp"
#include "ambient/classifier.hpp"
#include "ambient/errors.hpp"
#include "ambient/ingest.hpp"
#include "ambient/label_store.hpp"
#include "ambient/labeling_service.hpp"
#include "ambient/pipeline.hpp"

namespace {

using namespace ambient;

void print_eval(const EvalReport& r) {
  const auto& c = r.confusion;
  std::cout << "precision " << r.precision << (r.precision_defined ? "" : " (undefined)") << "\n"
            << "recall    " << r.recall << (r.recall_defined ? "" : " (undefined)") << "\n"
            << "f1        " << r.f1 << (r.f1_defined ? "" : " (undefined)") << "\n"
            << "tp " << c.tp << "  fp " << c.fp << "  fn " << c.fn << "  tn " << c.tn << "\n";
}

int serve(const std::string& corpus_dir, const std::string& labels_path, const std::string& strategy,
          const std::optional<std::string>& scores_path, const std::string& bind, std::uint64_t seed,
          const std::string& ui_dir) {
  const auto [host, port] = parse_bind_address(bind);
  StoreLock lock = StoreLock::acquire_exclusive(labels_path);
  const BinnedCorpus corpus = load_binned_corpus(corpus_dir);
  std::vector<Document> docs;
  for (const auto& bd : corpus.documents) docs.push_back(bd.doc);

  LabelingService::Options options;
  options.strategy = parse_strategy(strategy);
  options.seed = seed;
  if (scores_path)
    for (const auto& e : LabelStore::load(*scores_path).resolved())
      if (e.score) options.scores[e.id] = *e.score;

  LabelStore store = LabelStore::open(labels_path);
  LabelingService service(std::move(docs), store, std::move(options));
  LabelingServer server(service, ui_dir);

  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  const int bound = server.bind(host, port);
  std::cout << "listening on http://" << host << ":" << bound << std::endl;
  std::thread stopper([&] {
    int sig = 0;
    sigwait(&signals, &sig);
    server.stop();
  });
  server.listen();
  pthread_kill(stopper.native_handle(), SIGTERM);
  stopper.join();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ambient corpus curation and lexical measurement toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolkitVersion));

  // ingest
  commands::IngestArgs ingest_args;
  std::string match_mode = "word";
  std::string lang;
  std::string gazetteer;
  auto* ingest = app.add_subcommand("ingest", "Filter a corpus by anchor keyword and bin it in time");
  ingest->add_option("--corpus", ingest_args.corpus, "Newline-delimited JSON corpus")->required()->check(CLI::ExistingFile);
  ingest->add_option("--anchor", ingest_args.anchor, "Anchor keyword")->required();
  ingest->add_option("--match-mode", match_mode, "word or substring")->check(CLI::IsMember({"word", "substring"}));
  ingest->add_option("--lang", lang, "Required language tag");
  ingest->add_option("--gazetteer", gazetteer, "city<TAB>ST file; enables the location filter")->check(CLI::ExistingFile);
  ingest->add_option("--epoch", ingest_args.epoch, "Start of bin 0 (ISO-8601)")->required();
  ingest->add_option("--bin-days", ingest_args.bin_days, "Bin width in days")->default_val(14);
  ingest->add_option("--out", ingest_args.out_dir, "Output directory")->required();

  // sentiment-series
  commands::SeriesArgs series_args;
  std::string lens, background, series_plot;
  auto* series = app.add_subcommand("sentiment-series", "Ambient sentiment per time bin for R, NR and combined");
  series->add_option("--corpus", series_args.corpus_dir, "Ingest output directory")->required()->check(CLI::ExistingDirectory);
  series->add_option("--labels", series_args.labels, "Label file")->required()->check(CLI::ExistingFile);
  series->add_option("--lexicon", series_args.lexicon, "Lexicon file (word, score)")->required()->check(CLI::ExistingFile);
  series->add_option("--lens", lens, "Exclude scores in LO:HI");
  series->add_option("--background", background, "Background corpus file")->check(CLI::ExistingFile);
  series->add_option("--plot", series_plot, "Write an SVG plot");
  series->add_option("--out", series_args.out, "Output records")->required();

  // wordshift
  commands::ShiftArgs shift_args;
  std::string shift_ref, shift_comp, shift_corpus, shift_labels, shift_lens, shift_plot;
  auto* shift = app.add_subcommand("wordshift", "Per-word sentiment shift between two corpora");
  shift->add_option("--ref", shift_ref, "Reference corpus file")->check(CLI::ExistingFile);
  shift->add_option("--comp", shift_comp, "Comparison corpus file")->check(CLI::ExistingFile);
  shift->add_option("--corpus", shift_corpus, "Ingest directory (with --labels: ref = NR, comp = R)");
  shift->add_option("--labels", shift_labels, "Label file");
  shift->add_option("--lexicon", shift_args.lexicon, "Lexicon file")->required()->check(CLI::ExistingFile);
  shift->add_option("--lens", shift_lens, "Exclude scores in LO:HI");
  shift->add_option("--top", shift_args.top, "Number of words")->default_val(20)->check(CLI::PositiveNumber);
  shift->add_option("--plot", shift_plot, "Write an SVG bar chart");
  shift->add_option("--out", shift_args.out, "Output records")->required();

  // rtd
  commands::RtdArgs rtd_args;
  std::string rtd_c1, rtd_c2, rtd_corpus, rtd_labels;
  auto* rtd = app.add_subcommand("rtd", "Rank-turbulence divergence between two corpora");
  rtd->add_option("--corpus1", rtd_c1, "First corpus file")->check(CLI::ExistingFile);
  rtd->add_option("--corpus2", rtd_c2, "Second corpus file")->check(CLI::ExistingFile);
  rtd->add_option("--corpus", rtd_corpus, "Ingest directory (with --labels: corpus1 = R, corpus2 = NR)");
  rtd->add_option("--labels", rtd_labels, "Label file");
  rtd->add_option("--alpha", rtd_args.alpha, "Rank-turbulence parameter")->default_val(0.25)->check(CLI::PositiveNumber);
  rtd->add_option("--ngram", rtd_args.ngram, "1 or 2")->default_val(1)->check(CLI::IsMember({1, 2}));
  rtd->add_option("--top", rtd_args.top, "Contribution list length")->default_val(40)->check(CLI::PositiveNumber);
  rtd->add_option("--cells-per-decade", rtd_args.cells_per_decade, "Histogram resolution")->default_val(4)->check(CLI::PositiveNumber);
  rtd->add_option("--out", rtd_args.out_dir, "Output directory")->required();

  // sample
  std::string sample_corpus;
  std::size_t sample_n = kDefaultLabelSample;
  std::uint64_t sample_seed = 0;
  auto* sample = app.add_subcommand("sample", "Draw the random sample of ids to hand-label");
  sample->add_option("--corpus", sample_corpus, "Ingest directory")->required()->check(CLI::ExistingDirectory);
  sample->add_option("-n", sample_n, "Sample size")->default_val(kDefaultLabelSample);
  sample->add_option("--seed", sample_seed, "Random seed")->required();

  // train
  commands::TrainArgs train_args;
  auto* train = app.add_subcommand("train", "Fit the relevance classifier head on labeled embeddings");
  train->add_option("--embeddings", train_args.embeddings, "Embedding matrix file")->required()->check(CLI::ExistingFile);
  train->add_option("--labels", train_args.labels, "Label file with human labels")->required()->check(CLI::ExistingFile);
  train->add_option("--train-frac", train_args.train_frac, "Training fraction")->default_val(kDefaultTrainFraction);
  train->add_option("--seed", train_args.seed, "Split seed")->default_val(0);
  train->add_option("--epochs", train_args.config.epochs, "Gradient descent epochs")->default_val(1000);
  train->add_option("--lr", train_args.config.learning_rate, "Learning rate")->default_val(0.5);
  train->add_option("--l2", train_args.config.l2, "L2 penalty")->default_val(0.0);
  train->add_flag("--class-weight", train_args.config.class_weighting, "Inverse-frequency class weights");
  train->add_flag("--stratified", train_args.stratified, "Stratify the split by class");
  train->add_option("--threshold", train_args.threshold, "Decision threshold")->default_val(0.5);
  train->add_option("--model-out", train_args.model_out, "Model file")->required();

  // classify
  commands::ClassifyArgs classify_args;
  std::string classify_at;
  auto* classify = app.add_subcommand("classify", "Label every embedded document with the model");
  classify->add_option("--embeddings", classify_args.embeddings, "Embedding matrix file")->required()->check(CLI::ExistingFile);
  classify->add_option("--model", classify_args.model, "Model file")->required()->check(CLI::ExistingFile);
  classify->add_option("--labels-out", classify_args.labels_out, "Label file to append to")->required();
  classify->add_option("--at", classify_at, "Timestamp for the model labels (ISO-8601)");

  // evaluate
  std::string eval_pred, eval_truth;
  auto* evaluate = app.add_subcommand("evaluate", "Precision, recall and F1 of predictions against truth");
  evaluate->add_option("--pred", eval_pred, "Predicted labels")->required()->check(CLI::ExistingFile);
  evaluate->add_option("--truth", eval_truth, "True labels")->required()->check(CLI::ExistingFile);

  // run
  std::string config_path;
  auto* run = app.add_subcommand("run", "Run the whole pipeline from a config file");
  run->add_option("--config", config_path, "Pipeline config (JSON)")->required()->check(CLI::ExistingFile);

  // serve
  std::string serve_corpus, serve_labels, serve_strategy = "random", serve_scores, serve_bind = "127.0.0.1:8817", serve_ui;
  std::uint64_t serve_seed = 0;
  auto* serve_cmd = app.add_subcommand("serve", "HTTP labeling service");
  serve_cmd->add_option("--corpus", serve_corpus, "Ingest directory")->required()->check(CLI::ExistingDirectory);
  serve_cmd->add_option("--labels", serve_labels, "Label store (created if absent)")->required();
  serve_cmd->add_option("--strategy", serve_strategy, "random or uncertainty")->check(CLI::IsMember({"random", "uncertainty"}));
  serve_cmd->add_option("--scores", serve_scores, "Model label file with scores")->check(CLI::ExistingFile);
  serve_cmd->add_option("--bind", serve_bind, "host:port");
  serve_cmd->add_option("--seed", serve_seed, "Random-order seed");
  serve_cmd->add_option("--ui", serve_ui, "Static UI asset directory")->check(CLI::ExistingDirectory);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*ingest) {
      ingest_args.match_mode = parse_match_mode(match_mode);
      if (!lang.empty()) ingest_args.language = lang;
      if (!gazetteer.empty()) ingest_args.gazetteer = gazetteer;
      std::cout << "matched " << commands::ingest(ingest_args) << " documents\n";
    } else if (*series) {
      if (!lens.empty()) series_args.lens = parse_lens(lens);
      if (!background.empty()) series_args.background = background;
      if (!series_plot.empty()) series_args.plot = series_plot;
      commands::sentiment_series(series_args);
    } else if (*shift) {
      if (!shift_ref.empty()) shift_args.ref = shift_ref;
      if (!shift_comp.empty()) shift_args.comp = shift_comp;
      if (!shift_corpus.empty()) shift_args.corpus_dir = shift_corpus;
      if (!shift_labels.empty()) shift_args.labels = shift_labels;
      if (!shift_lens.empty()) shift_args.lens = parse_lens(shift_lens);
      if (!shift_plot.empty()) shift_args.plot = shift_plot;
      commands::wordshift(shift_args);
    } else if (*rtd) {
      if (!rtd_c1.empty()) rtd_args.corpus1 = rtd_c1;
      if (!rtd_c2.empty()) rtd_args.corpus2 = rtd_c2;
      if (!rtd_corpus.empty()) rtd_args.corpus_dir = rtd_corpus;
      if (!rtd_labels.empty()) rtd_args.labels = rtd_labels;
      std::cout << "divergence " << commands::rtd(rtd_args) << "\n";
    } else if (*sample) {
      std::vector<std::string> ids;
      for (const auto& bd : load_binned_corpus(sample_corpus).documents) ids.push_back(bd.doc.id);
      for (const auto& id : sample_for_labeling(ids, sample_n, sample_seed)) std::cout << id << '\n';
    } else if (*train) {
      print_eval(commands::train(train_args));
    } else if (*classify) {
      if (!classify_at.empty()) classify_args.at = parse_iso8601(classify_at);
      std::cout << "appended " << commands::classify(classify_args) << " model labels\n";
    } else if (*evaluate) {
      print_eval(commands::evaluate(eval_pred, eval_truth));
    } else if (*run) {
      const RunManifest manifest = run_pipeline(load_pipeline_config(config_path));
      for (const auto& s : manifest.stages)
        std::cout << s.name << (s.cached ? " (cached)" : "") << "\n";
      std::cout << "manifest " << manifest.path << "\n";
    } else if (*serve_cmd) {
      return serve(serve_corpus, serve_labels, serve_strategy,
                   serve_scores.empty() ? std::nullopt : std::optional<std::string>(serve_scores), serve_bind,
                   serve_seed, serve_ui);
    }
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
