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

#include "ambient/binning.hpp"

#include <chrono>
#include <cstdio>
#include <stdexcept>

#include "ambient/errors.hpp"

namespace ambient {

std::int64_t assign_bin(std::int64_t timestamp, const TimeBinning& binning) {
  if (binning.width <= 0) throw std::invalid_argument("bin width must be positive");
  if (timestamp < binning.epoch_start)
    throw OutOfRange("timestamp " + std::to_string(timestamp) + " precedes bin epoch " +
                     std::to_string(binning.epoch_start));
  return (timestamp - binning.epoch_start) / binning.width;
}

namespace {

int read_digits(std::string_view s, std::size_t& pos, std::size_t count) {
  if (pos + count > s.size()) throw ValidationError("truncated ISO-8601 time: " + std::string(s));
  int value = 0;
  for (std::size_t i = 0; i < count; ++i) {
    const char c = s[pos + i];
    if (c < '0' || c > '9') throw ValidationError("bad ISO-8601 time: " + std::string(s));
    value = value * 10 + (c - '0');
  }
  pos += count;
  return value;
}

void expect(std::string_view s, std::size_t& pos, char c) {
  if (pos >= s.size() || s[pos] != c) throw ValidationError("bad ISO-8601 time: " + std::string(s));
  ++pos;
}

}  // namespace

std::int64_t parse_iso8601(std::string_view s) {
  using namespace std::chrono;
  std::size_t pos = 0;
  const int y = read_digits(s, pos, 4);
  expect(s, pos, '-');
  const unsigned mo = static_cast<unsigned>(read_digits(s, pos, 2));
  expect(s, pos, '-');
  const unsigned d = static_cast<unsigned>(read_digits(s, pos, 2));
  const year_month_day ymd{year{y}, month{mo}, day{d}};
  if (!ymd.ok()) throw ValidationError("invalid calendar date: " + std::string(s));

  std::int64_t seconds = 0;
  if (pos < s.size() && (s[pos] == 'T' || s[pos] == ' ')) {
    ++pos;
    const int hh = read_digits(s, pos, 2);
    expect(s, pos, ':');
    const int mm = read_digits(s, pos, 2);
    int ss = 0;
    if (pos < s.size() && s[pos] == ':') {
      ++pos;
      ss = read_digits(s, pos, 2);
    }
    if (hh > 23 || mm > 59 || ss > 60) throw ValidationError("invalid clock time: " + std::string(s));
    seconds = hh * 3600 + mm * 60 + ss;
  }
  if (pos < s.size()) {
    if (s[pos] == 'Z') {
      ++pos;
    } else if (s[pos] == '+' || s[pos] == '-') {
      const int sign = s[pos] == '+' ? 1 : -1;
      ++pos;
      const int oh = read_digits(s, pos, 2);
      if (pos < s.size() && s[pos] == ':') ++pos;
      const int om = read_digits(s, pos, 2);
      seconds -= sign * (oh * 3600 + om * 60);
    }
  }
  if (pos != s.size()) throw ValidationError("trailing characters in ISO-8601 time: " + std::string(s));
  const auto days = sys_days{ymd}.time_since_epoch().count();
  return static_cast<std::int64_t>(days) * kSecondsPerDay + seconds;
}

std::string format_iso8601(std::int64_t seconds) {
  using namespace std::chrono;
  std::int64_t days = seconds / kSecondsPerDay;
  std::int64_t rem = seconds % kSecondsPerDay;
  if (rem < 0) {
    rem += kSecondsPerDay;
    --days;
  }
  const year_month_day ymd{sys_days{std::chrono::days{days}}};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02dZ", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                static_cast<int>(rem / 3600), static_cast<int>(rem / 60 % 60), static_cast<int>(rem % 60));
  return buf;
}

}  // namespace ambient
