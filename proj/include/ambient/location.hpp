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

#include <optional>
#include <set>
#include <string>
#include <string_view>

namespace ambient {

struct CityState {
  std::string city;   // normalized: lowercase, single-spaced
  std::string state;  // 2-letter uppercase code

  auto operator<=>(const CityState&) const = default;
};

/// Valid city/state pairs that a free-text location must match.
class Gazetteer {
 public:
  Gazetteer() = default;

  /// Loads `city<TAB>ST` lines. Throws LoadError on a malformed row.
  static Gazetteer load(const std::string& path);

  void insert(CityState entry);
  bool contains(const CityState& entry) const { return entries_.count(entry) != 0; }
  std::size_t size() const noexcept { return entries_.size(); }

 private:
  std::set<CityState> entries_;
};

/// Two-letter code for a US state or territory, given its code or full name
/// in any case. Returns nothing for unknown names.
std::optional<std::string> state_code(std::string_view name_or_code);

/// Lowercases ASCII, trims, and collapses internal whitespace runs.
std::string normalize_city(std::string_view city);

/// Matches a free-text profile location against the gazetteer. Accepts
/// "City, ST", "City, State Name", a missing space after the comma, and a
/// trailing ", USA".
std::optional<CityState> parse_location(std::string_view location_raw, const Gazetteer& gazetteer);

}  // namespace ambient
