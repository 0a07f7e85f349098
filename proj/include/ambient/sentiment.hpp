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
#include <optional>
#include <ostream>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "ambient/frequency.hpp"
#include "ambient/ingest.hpp"
#include "ambient/label_store.hpp"
#include "ambient/lexicon.hpp"

namespace ambient {

template <typename Scalar>
struct WeightedMoments {
  Scalar mean;
  Scalar stddev;  // population form
};

/// Weighted mean and population standard deviation of `values` under
/// nonnegative `weights` (need not sum to one).
template <typename DerivedV, typename DerivedW>
WeightedMoments<typename DerivedV::Scalar> weighted_moments(const Eigen::ArrayBase<DerivedV>& values,
                                                            const Eigen::ArrayBase<DerivedW>& weights) {
  using Scalar = typename DerivedV::Scalar;
  const Scalar total = weights.sum();
  const Scalar mean = (values * weights).sum() / total;
  const Scalar variance = (weights * (values - mean).square()).sum() / total;
  return {mean, std::sqrt(std::max(variance, Scalar(0)))};
}

struct SentimentSummary {
  double phi_avg = 0.0;
  double sigma = 0.0;
  double std_error = 0.0;  // sigma / sqrt(n_documents); 0 when n_documents == 0
  std::uint64_t n_scored_tokens = 0;
  std::size_t n_documents = 0;
};

/// Frequency-weighted average lexicon score, with p renormalized over the
/// lexicon-covered types. Throws NoScoredTokens if nothing is covered.
SentimentSummary ambient_sentiment(const FrequencyDistribution& dist, const Lexicon& lexicon,
                                   std::size_t n_documents);

enum class Partition { R, NR, Combined, Background };
std::string_view to_string(Partition p);

struct SeriesPoint {
  std::int64_t bin = 0;
  std::optional<SentimentSummary> summary;  // nullopt: gap
  std::uint64_t n_tokens = 0;               // scored token instances
  std::size_t n_documents = 0;
};

struct SentimentSeries {
  Partition partition = Partition::Combined;
  std::vector<SeriesPoint> bins;  // strictly increasing bin index
};

/// Per-bin ambient sentiment for one partition of a binned corpus. Bins run
/// from 0 to `last_bin` (default: the corpus's last occupied bin); bins with
/// no scored tokens are gaps. R and NR need a label for every document and
/// throw ValidationError otherwise; Combined and Background ignore labels.
SentimentSeries build_series(const BinnedCorpus& corpus, const LabelStore& labels, const Lexicon& lexicon,
                             Partition partition, std::optional<std::int64_t> last_bin = std::nullopt);

/// Writes a metadata record, then one record per (series, bin).
void write_series(std::ostream& out, const std::vector<SentimentSeries>& series, const TimeBinning& binning,
                  const Lexicon& lexicon);

}  // namespace ambient
