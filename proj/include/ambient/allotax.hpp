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

#include "ambient/frequency.hpp"

namespace ambient {

/// Fractional ranks for one corpus. Types with equal counts share the mean
/// of the integer ranks they span; every type missing from this corpus gets
/// `absent_rank`, the mean of ranks n_types+1 .. n_types+exclusive_other.
struct RankedDistribution {
  std::map<std::string, double> ranks;
  std::size_t n_types = 0;
  double absent_rank = 0.0;

  double rank_of(const std::string& type) const {
    auto it = ranks.find(type);
    return it == ranks.end() ? absent_rank : it->second;
  }
};

RankedDistribution tied_ranks(const FrequencyDistribution& counts, std::size_t exclusive_count_other);

struct RtdConfig {
  double alpha = 0.25;
};

/// Elementwise |r1^-alpha - r2^-alpha|^(1/(alpha+1)).
template <typename Derived1, typename Derived2>
Eigen::Array<typename Derived1::Scalar, Eigen::Dynamic, 1> rank_turbulence_terms(
    const Eigen::ArrayBase<Derived1>& r1, const Eigen::ArrayBase<Derived2>& r2,
    typename Derived1::Scalar alpha) {
  using Scalar = typename Derived1::Scalar;
  return (r1.pow(-alpha) - r2.pow(-alpha)).abs().pow(Scalar(1) / (alpha + Scalar(1)));
}

struct RtdContribution {
  std::string type;
  double contribution = 0.0;  // signed unnormalized term; + means higher-ranked in corpus 1
  double r1 = 0.0;
  double r2 = 0.0;
};

struct BalanceStats {
  double token_share = 0.0;           // counts_i / (counts_1 + counts_2)
  double type_share = 0.0;            // types_i / |union|
  double exclusive_type_share = 0.0;  // exclusive_i / types_i
  std::uint64_t tokens = 0;
  std::size_t types = 0;
  std::size_t exclusive_types = 0;
};

struct RtdReport {
  double alpha = 0.25;
  double divergence = 0.0;     // in [0, 1]
  double normalization = 0.0;  // sum of terms if the corpora shared no types
  std::vector<RtdContribution> contributions;  // every union type, in type order
  BalanceStats balance1;
  BalanceStats balance2;
};

/// Rank-turbulence divergence between two nonempty distributions, normalized
/// by the same sum evaluated as if the corpora were disjoint. Throws
/// std::invalid_argument on empty input or a non-positive/non-finite alpha.
RtdReport rtd(const FrequencyDistribution& dist1, const FrequencyDistribution& dist2, const RtdConfig& config = {});

/// Nonzero contributions by descending magnitude, ties by type; at most k.
std::vector<RtdContribution> rtd_contribution_list(const RtdReport& report, std::size_t k);

struct HistogramCell {
  int cell1 = 0;  // floor(c * log10 r1)
  int cell2 = 0;
  std::size_t count = 0;
  std::string top_type;  // largest |contribution| in the cell, ties by type
  double top_contribution = 0.0;
};

/// Log-binned rank-rank histogram over every union type, cells in
/// (cell1, cell2) order.
std::vector<HistogramCell> rank_rank_histogram(const RtdReport& report, int cells_per_decade);

/// Writes divergence.json, contributions.tsv and histogram.tsv into `dir`.
void write_rtd_output(const std::string& dir, const RtdReport& report, std::size_t top_k, int cells_per_decade,
                      int ngram);

}  // namespace ambient
