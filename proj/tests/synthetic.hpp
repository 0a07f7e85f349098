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

// Synthetic labeled embeddings shared by the classifier tests and the
// acceptance suite.

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "ambient/classifier.hpp"
#include "ambient/embeddings.hpp"
#include "ambient/label_store.hpp"

namespace testutil {

struct Blobs {
  ambient::EmbeddingMatrix embeddings;
  ambient::LabelStore labels;
  std::vector<ambient::LabeledId> labeled;
  std::size_t positives = 0;
};

/// Two Gaussian blobs at +/- `separation` along a random unit direction u.
/// Points whose projection on u falls inside [-gap, gap] or on the wrong
/// side are redrawn, so the classes are linearly separable by construction.
inline Blobs make_blobs(std::size_t n, int dim, std::size_t positives, std::uint64_t seed, double separation = 2.5,
                        double gap = 0.5) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd u(dim);
  for (int j = 0; j < dim; ++j) u[j] = normal(gen);
  u.normalize();

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), gen);
  std::vector<bool> is_pos(n, false);
  for (std::size_t i = 0; i < positives; ++i) is_pos[order[i]] = true;

  Blobs b;
  b.positives = positives;
  b.embeddings.vectors.resize(static_cast<Eigen::Index>(n), dim);
  for (std::size_t i = 0; i < n; ++i) {
    const double sign = is_pos[i] ? 1.0 : -1.0;
    Eigen::VectorXd x(dim);
    do {
      for (int j = 0; j < dim; ++j) x[j] = normal(gen);
      x += sign * separation * u;
    } while (sign * u.dot(x) < gap);
    b.embeddings.vectors.row(static_cast<Eigen::Index>(i)) = x.cast<float>().transpose();
    const std::string id = "doc" + std::to_string(i);
    b.embeddings.ids.push_back(id);
    const auto label = is_pos[i] ? ambient::Label::R : ambient::Label::NR;
    b.labels.append({id, label, ambient::LabelSource::Human, {}, 0});
    b.labeled.push_back({id, label});
  }
  return b;
}

/// Held-out F1 for a train/test split of the blobs.
inline ambient::EvalReport held_out_eval(const Blobs& b, const ambient::SplitResult& split,
                                         const ambient::TrainConfig& config) {
  const auto model = ambient::train(b.embeddings, b.labels, split.train, config);
  ambient::EmbeddingMatrix test;
  test.vectors.resize(static_cast<Eigen::Index>(split.test.size()), b.embeddings.dim());
  const auto index = b.embeddings.index();
  std::map<std::string, ambient::Label> truth;
  for (std::size_t i = 0; i < split.test.size(); ++i) {
    test.ids.push_back(split.test[i]);
    test.vectors.row(static_cast<Eigen::Index>(i)) = b.embeddings.vectors.row(index.at(split.test[i]));
    truth[split.test[i]] = *b.labels.label_of(split.test[i]);
  }
  std::map<std::string, ambient::Label> pred;
  for (const auto& p : ambient::predict(model, test)) pred[p.id] = p.label;
  return ambient::evaluate(pred, truth);
}

}  // namespace testutil
