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
#include <string>
#include <string_view>

namespace ambient {

inline constexpr std::int64_t kSecondsPerDay = 86'400;
inline constexpr std::int64_t kDefaultBinWidth = 14 * kSecondsPerDay;

/// Fixed-width time bins anchored at `epoch_start`. Bin `i` covers
/// [epoch_start + i*width, epoch_start + (i+1)*width).
struct TimeBinning {
  std::int64_t epoch_start = 0;
  std::int64_t width = kDefaultBinWidth;

  std::int64_t bin_start(std::int64_t index) const { return epoch_start + index * width; }
};

/// floor((timestamp - epoch_start) / width). Throws OutOfRange when the
/// timestamp precedes the epoch and std::invalid_argument for width <= 0.
std::int64_t assign_bin(std::int64_t timestamp, const TimeBinning& binning);

/// Parses "YYYY-MM-DD", "YYYY-MM-DDTHH:MM[:SS]" with an optional "Z" or
/// "+HH:MM"/"-HH:MM" offset. Returns UTC seconds; throws ValidationError.
std::int64_t parse_iso8601(std::string_view text);

/// "YYYY-MM-DDTHH:MM:SSZ".
std::string format_iso8601(std::int64_t seconds);

}  // namespace ambient
