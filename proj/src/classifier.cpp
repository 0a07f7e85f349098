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

#include "ambient/classifier.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "ambient/errors.hpp"
#include "ambient/random.hpp"

namespace ambient {

std::vector<std::string> sample_for_labeling(const std::vector<std::string>& ids, std::size_t n,
                                             std::uint64_t seed) {
  if (n > ids.size())
    throw InsufficientDocuments("requested " + std::to_string(n) + " documents from a corpus of " +
                                std::to_string(ids.size()));
  std::vector<std::string> pool = ids;
  Rng rng(seed);
  for (std::size_t i = 0; i < n; ++i) std::swap(pool[i], pool[i + rng.below(pool.size() - i)]);
  pool.resize(n);
  return pool;
}

SplitResult split(const std::vector<LabeledId>& labeled, double train_frac, std::uint64_t seed, bool stratified) {
  if (!(train_frac > 0.0 && train_frac < 1.0)) throw std::invalid_argument("train_frac must lie in (0, 1)");
  if (labeled.size() < 2) throw std::invalid_argument("split needs at least two labeled ids");
  const bool has_r = std::any_of(labeled.begin(), labeled.end(), [](const auto& l) { return l.label == Label::R; });
  const bool has_nr = std::any_of(labeled.begin(), labeled.end(), [](const auto& l) { return l.label == Label::NR; });
  if (!has_r || !has_nr) throw SingleClassError("labeled set contains a single class");

  SplitResult result;
  result.train_frac = train_frac;
  result.seed = seed;
  Rng rng(seed);
  auto take = [&](std::vector<std::string> ids) {
    rng.shuffle(ids);
    const auto n_train = static_cast<std::size_t>(std::llround(train_frac * static_cast<double>(ids.size())));
    result.train.insert(result.train.end(), ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(n_train));
    result.test.insert(result.test.end(), ids.begin() + static_cast<std::ptrdiff_t>(n_train), ids.end());
  };
  if (stratified) {
    std::vector<std::string> pos, neg;
    for (const auto& l : labeled) (l.label == Label::R ? pos : neg).push_back(l.id);
    take(std::move(pos));
    take(std::move(neg));
  } else {
    std::vector<std::string> ids;
    ids.reserve(labeled.size());
    for (const auto& l : labeled) ids.push_back(l.id);
    take(std::move(ids));
  }
  return result;
}

Model train(const EmbeddingMatrix& embeddings, const LabelStore& labels, const std::vector<std::string>& train_ids,
            const TrainConfig& config) {
  if (train_ids.empty()) throw TrainError("no training ids");
  if (config.epochs < 0) throw TrainError("epochs must be nonnegative");
  const auto row_of = embeddings.index();
  const auto n = static_cast<Eigen::Index>(train_ids.size());
  Eigen::MatrixXd features(n, embeddings.dim());
  Eigen::ArrayXd targets(n);
  std::size_t positives = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const std::string& id = train_ids[static_cast<std::size_t>(i)];
    auto row = row_of.find(id);
    if (row == row_of.end()) throw TrainError("no embedding for training id '" + id + "'");
    auto entry = labels.get(id);
    if (!entry || entry->source != LabelSource::Human) throw TrainError("no human label for training id '" + id + "'");
    features.row(i) = embeddings.vectors.row(row->second).cast<double>();
    targets[i] = entry->label == Label::R ? 1.0 : 0.0;
    positives += entry->label == Label::R;
  }

  Eigen::ArrayXd weights = Eigen::ArrayXd::Ones(n);
  if (config.class_weighting && positives > 0 && positives < train_ids.size()) {
    const double w_pos = static_cast<double>(n) / (2.0 * static_cast<double>(positives));
    const double w_neg = static_cast<double>(n) / (2.0 * static_cast<double>(train_ids.size() - positives));
    weights = (targets > 0.5).select(Eigen::ArrayXd::Constant(n, w_pos), Eigen::ArrayXd::Constant(n, w_neg));
  }
  return fit_logistic(features, targets, weights, config);
}

std::vector<Prediction> predict(const Model& model, const EmbeddingMatrix& embeddings) {
  if (model.weights.size() != embeddings.dim())
    throw PredictError("model dim " + std::to_string(model.weights.size()) + " does not match embedding dim " +
                       std::to_string(embeddings.dim()));
  const Eigen::ArrayXd margin = (embeddings.vectors.cast<double>() * model.weights).array() + model.bias;
  const Eigen::ArrayXd scores = stable_logistic(margin);
  std::vector<Prediction> out;
  out.reserve(embeddings.size());
  for (std::size_t i = 0; i < embeddings.size(); ++i) {
    const double s = scores[static_cast<Eigen::Index>(i)];
    out.push_back({embeddings.ids[i], s, s >= model.threshold ? Label::R : Label::NR});
  }
  return out;
}

EvalReport evaluate(const std::map<std::string, Label>& predictions, const std::map<std::string, Label>& truth) {
  if (predictions.size() != truth.size()) throw EvalError("prediction and truth id sets differ in size");
  EvalReport report;
  auto& c = report.confusion;
  for (const auto& [id, actual] : truth) {
    auto it = predictions.find(id);
    if (it == predictions.end()) throw EvalError("no prediction for id '" + id + "'");
    const bool pred_pos = it->second == Label::R, true_pos = actual == Label::R;
    if (pred_pos && true_pos) ++c.tp;
    else if (pred_pos) ++c.fp;
    else if (true_pos) ++c.fn;
    else ++c.tn;
  }
  auto ratio = [](std::size_t num, std::size_t den, bool& defined) {
    defined = den != 0;
    return defined ? static_cast<double>(num) / static_cast<double>(den) : 0.0;
  };
  report.precision = ratio(c.tp, c.tp + c.fp, report.precision_defined);
  report.recall = ratio(c.tp, c.tp + c.fn, report.recall_defined);
  const double denom = report.precision + report.recall;
  report.f1_defined = report.precision_defined && report.recall_defined && denom > 0.0;
  report.f1 = report.f1_defined ? 2.0 * report.precision * report.recall / denom : 0.0;
  return report;
}

namespace {
using json = nlohmann::json;
}

void save_model(const std::string& path, const Model& model, const EvalReport* eval) {
  json obj;
  obj["format"] = "ambient-linear-model";
  obj["dim"] = model.weights.size();
  obj["weights"] = std::vector<double>(model.weights.data(), model.weights.data() + model.weights.size());
  obj["bias"] = model.bias;
  obj["threshold"] = model.threshold;
  obj["train_config"] = {{"learning_rate", model.config.learning_rate},
                         {"epochs", model.config.epochs},
                         {"l2", model.config.l2},
                         {"class_weighting", model.config.class_weighting},
                         {"seed", model.config.seed}};
  if (eval) {
    const auto& c = eval->confusion;
    obj["eval"] = {{"precision", eval->precision},
                   {"recall", eval->recall},
                   {"f1", eval->f1},
                   {"f1_defined", eval->f1_defined},
                   {"confusion", {{"tp", c.tp}, {"fp", c.fp}, {"fn", c.fn}, {"tn", c.tn}}},
                   {"split", {{"train_frac", eval->train_frac}, {"seed", eval->seed}}}};
  }
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error("cannot write model: " + path);
  out << obj.dump(2) << '\n';
}

Model load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open model: " + path);
  json obj = json::parse(in, nullptr, false);
  if (obj.is_discarded() || !obj.is_object()) throw LoadError("model file is not JSON: " + path);
  try {
    Model model;
    const auto w = obj.at("weights").get<std::vector<double>>();
    if (w.size() != obj.at("dim").get<std::size_t>()) throw LoadError("model weight count does not match dim");
    model.weights = Eigen::Map<const Eigen::VectorXd>(w.data(), static_cast<Eigen::Index>(w.size()));
    model.bias = obj.at("bias").get<double>();
    model.threshold = obj.value("threshold", 0.5);
    if (!(model.threshold > 0.0 && model.threshold < 1.0)) throw LoadError("model threshold outside (0, 1)");
    if (auto it = obj.find("train_config"); it != obj.end()) {
      model.config.learning_rate = it->value("learning_rate", model.config.learning_rate);
      model.config.epochs = it->value("epochs", model.config.epochs);
      model.config.l2 = it->value("l2", model.config.l2);
      model.config.class_weighting = it->value("class_weighting", false);
      model.config.seed = it->value("seed", std::uint64_t{0});
    }
    return model;
  } catch (const LoadError&) {
    throw;
  } catch (const std::exception& e) {
    throw LoadError("bad model file " + path + ": " + e.what());
  }
}

}  // namespace ambient
