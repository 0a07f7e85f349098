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

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "ambient/embeddings.hpp"
#include "ambient/label_store.hpp"

namespace ambient {

/// Uniform sample of `n` ids without replacement, reproducible under `seed`.
/// Throws InsufficientDocuments when n exceeds the population.
std::vector<std::string> sample_for_labeling(const std::vector<std::string>& ids, std::size_t n,
                                             std::uint64_t seed);

inline constexpr std::size_t kDefaultLabelSample = 1000;
inline constexpr double kDefaultTrainFraction = 0.67;

struct LabeledId {
  std::string id;
  Label label;
};

struct SplitResult {
  std::vector<std::string> train;
  std::vector<std::string> test;
  double train_frac = 0.0;
  std::uint64_t seed = 0;
};

/// Seeded shuffle then prefix split with round(train_frac * n) training ids.
/// With `stratified`, each class is shuffled and split on its own. Throws
/// SingleClassError when only one class is present and
/// std::invalid_argument for fewer than two ids or a fraction outside (0, 1).
SplitResult split(const std::vector<LabeledId>& labeled, double train_frac, std::uint64_t seed,
                  bool stratified = false);

struct TrainConfig {
  double learning_rate = 0.5;
  int epochs = 1000;
  double l2 = 0.0;
  bool class_weighting = false;
  std::uint64_t seed = 0;
};

template <typename Scalar = double>
struct LinearModel {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> weights;
  Scalar bias = 0;
  double threshold = 0.5;
  TrainConfig config;
};

using Model = LinearModel<double>;

/// Numerically stable elementwise logistic function.
template <typename Derived>
Eigen::Array<typename Derived::Scalar, Eigen::Dynamic, 1> stable_logistic(const Eigen::ArrayBase<Derived>& z) {
  using Scalar = typename Derived::Scalar;
  const auto e_neg = (-z.abs()).exp().eval();
  return (z >= Scalar(0)).select(Scalar(1) / (Scalar(1) + e_neg), e_neg / (Scalar(1) + e_neg));
}

/// Full-batch gradient descent on the sample-weighted mean logistic loss
/// plus (l2/2)|w|^2, starting from zero. `targets` are 0/1.
template <typename DerivedX, typename DerivedY, typename DerivedW>
LinearModel<typename DerivedX::Scalar> fit_logistic(const Eigen::MatrixBase<DerivedX>& features,
                                                    const Eigen::ArrayBase<DerivedY>& targets,
                                                    const Eigen::ArrayBase<DerivedW>& sample_weights,
                                                    const TrainConfig& config) {
  using Scalar = typename DerivedX::Scalar;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  LinearModel<Scalar> model;
  model.config = config;
  model.weights = Vector::Zero(features.cols());
  const Scalar total_weight = sample_weights.sum();
  const Scalar lr = static_cast<Scalar>(config.learning_rate);
  const Scalar l2 = static_cast<Scalar>(config.l2);
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    const Eigen::Array<Scalar, Eigen::Dynamic, 1> margin =
        (features * model.weights).array() + model.bias;
    const Eigen::Array<Scalar, Eigen::Dynamic, 1> residual = sample_weights * (stable_logistic(margin) - targets);
    const Vector grad_w = features.transpose() * residual.matrix() / total_weight + l2 * model.weights;
    const Scalar grad_b = residual.sum() / total_weight;
    model.weights -= lr * grad_w;
    model.bias -= lr * grad_b;
  }
  return model;
}

/// Fits a model on the rows named by `train_ids`. Every id needs an
/// embedding row and a human label, else TrainError.
Model train(const EmbeddingMatrix& embeddings, const LabelStore& labels, const std::vector<std::string>& train_ids,
            const TrainConfig& config);

struct Prediction {
  std::string id;
  double score = 0.0;  // P(R)
  Label label = Label::NR;
};

/// score = logistic(w.x + b); R iff score >= threshold. Throws PredictError
/// on a dimension mismatch.
std::vector<Prediction> predict(const Model& model, const EmbeddingMatrix& embeddings);

struct Confusion {
  std::size_t tp = 0, fp = 0, fn = 0, tn = 0;
};

struct EvalReport {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  bool precision_defined = true;  // false when the denominator was zero
  bool recall_defined = true;
  bool f1_defined = true;
  Confusion confusion;
  double train_frac = 0.0;
  std::uint64_t seed = 0;
};

/// Positive-class (R) precision, recall and F1. Zero denominators yield 0
/// and clear the matching *_defined flag. Throws EvalError unless both maps
/// cover the same ids.
EvalReport evaluate(const std::map<std::string, Label>& predictions, const std::map<std::string, Label>& truth);

void save_model(const std::string& path, const Model& model, const EvalReport* eval = nullptr);
Model load_model(const std::string& path);

}  // namespace ambient
