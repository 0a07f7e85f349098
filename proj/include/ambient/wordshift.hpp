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

#include <cstddef>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "ambient/frequency.hpp"
#include "ambient/lexicon.hpp"

namespace ambient {

enum class Polarity { AboveRefMean, BelowRefMean };
std::string_view to_string(Polarity p);

struct ShiftContribution {
  std::string word;
  double delta = 0.0;        // (phi_word - phi_ref) * (p_comp - p_ref)
  double freq_ref = 0.0;     // p over scored types of the reference
  double freq_comp = 0.0;
  double phi_word = 0.0;
  Polarity polarity = Polarity::BelowRefMean;
  std::size_t rank = 0;      // 1-based, by descending |delta|

  double freq_change() const { return freq_comp - freq_ref; }
};

struct ShiftReport {
  double phi_ref = 0.0;
  double phi_comp = 0.0;
  std::vector<ShiftContribution> contributions;  // ranked
  double residual = 0.0;  // (phi_comp - phi_ref) - sum(delta)

  double total_abs_delta() const;
};

/// Simple sentiment shift of `comp` against `ref`: one contribution per type
/// scored in either corpus. Throws NoScoredTokens if either side has none.
ShiftReport shift_contributions(const FrequencyDistribution& ref, const FrequencyDistribution& comp,
                                const Lexicon& lexicon);

/// Top `k` contributions by |delta|, ties by word. k == 0 throws.
std::vector<ShiftContribution> rank_shifts(const ShiftReport& report, std::size_t k);

/// Header record with the two means, then `rank, word, delta, delta_pct,
/// phi_word, freq_ref, freq_comp, polarity` for the top `k`.
void write_shift(std::ostream& out, const ShiftReport& report, std::size_t k);

}  // namespace ambient
