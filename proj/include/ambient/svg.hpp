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

#include <ostream>
#include <vector>

#include "ambient/binning.hpp"
#include "ambient/sentiment.hpp"
#include "ambient/wordshift.hpp"

namespace ambient {

/// Three stacked panels sharing the time axis: scored-token counts, ambient
/// sentiment with standard-error bars, and sigma. Gaps break the lines.
void write_series_svg(std::ostream& out, const std::vector<SentimentSeries>& series, const TimeBinning& binning);

/// Horizontal bars for the top-k shift contributions, largest on top.
void write_shift_svg(std::ostream& out, const ShiftReport& report, std::size_t k);

}  // namespace ambient
