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

#include "ambient/location.hpp"

#include <array>
#include <fstream>
#include <utility>

#include "ambient/errors.hpp"
#include "ambient/utf8.hpp"

namespace ambient {

namespace {

constexpr std::array<std::pair<std::string_view, std::string_view>, 56> kStates{{
    {"alabama", "AL"}, {"alaska", "AK"}, {"arizona", "AZ"}, {"arkansas", "AR"},
    {"california", "CA"}, {"colorado", "CO"}, {"connecticut", "CT"}, {"delaware", "DE"},
    {"florida", "FL"}, {"georgia", "GA"}, {"hawaii", "HI"}, {"idaho", "ID"},
    {"illinois", "IL"}, {"indiana", "IN"}, {"iowa", "IA"}, {"kansas", "KS"},
    {"kentucky", "KY"}, {"louisiana", "LA"}, {"maine", "ME"}, {"maryland", "MD"},
    {"massachusetts", "MA"}, {"michigan", "MI"}, {"minnesota", "MN"}, {"mississippi", "MS"},
    {"missouri", "MO"}, {"montana", "MT"}, {"nebraska", "NE"}, {"nevada", "NV"},
    {"new hampshire", "NH"}, {"new jersey", "NJ"}, {"new mexico", "NM"}, {"new york", "NY"},
    {"north carolina", "NC"}, {"north dakota", "ND"}, {"ohio", "OH"}, {"oklahoma", "OK"},
    {"oregon", "OR"}, {"pennsylvania", "PA"}, {"rhode island", "RI"}, {"south carolina", "SC"},
    {"south dakota", "SD"}, {"tennessee", "TN"}, {"texas", "TX"}, {"utah", "UT"},
    {"vermont", "VT"}, {"virginia", "VA"}, {"washington", "WA"}, {"west virginia", "WV"},
    {"wisconsin", "WI"}, {"wyoming", "WY"}, {"district of columbia", "DC"},
    {"puerto rico", "PR"}, {"guam", "GU"}, {"u.s. virgin islands", "VI"},
    {"american samoa", "AS"}, {"northern mariana islands", "MP"},
}};

std::string_view trim(std::string_view s) {
  auto is_ws = [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f'; };
  while (!s.empty() && is_ws(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_ws(s.back())) s.remove_suffix(1);
  return s;
}

bool ends_with_country(std::string_view s, std::string_view& rest) {
  for (std::string_view suffix : {"usa", "us", "united states", "united states of america"}) {
    auto comma = s.rfind(',');
    if (comma == std::string_view::npos) return false;
    if (normalize_city(s.substr(comma + 1)) == suffix) {
      rest = s.substr(0, comma);
      return true;
    }
  }
  return false;
}

}  // namespace

std::string normalize_city(std::string_view city) {
  std::string out;
  out.reserve(city.size());
  bool pending_space = false;
  for (char c : trim(city)) {
    if (c == ' ' || c == '\t') {
      pending_space = true;
      continue;
    }
    if (pending_space && !out.empty()) out.push_back(' ');
    pending_space = false;
    out.push_back((c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c);
  }
  return out;
}

std::optional<std::string> state_code(std::string_view name_or_code) {
  const std::string norm = normalize_city(name_or_code);
  if (norm.size() == 2) {
    std::string code{static_cast<char>(norm[0] - 'a' + 'A'), static_cast<char>(norm[1] - 'a' + 'A')};
    for (const auto& [name, c] : kStates)
      if (c == code) return code;
    return std::nullopt;
  }
  for (const auto& [name, c] : kStates)
    if (name == norm) return std::string(c);
  if (norm == "d.c." || norm == "washington dc" || norm == "washington d.c.") return "DC";
  return std::nullopt;
}

Gazetteer Gazetteer::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open gazetteer: " + path);
  Gazetteer g;
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos) throw LoadError("gazetteer row without TAB", row);
    auto code = state_code(std::string_view(line).substr(tab + 1));
    if (!code) throw LoadError("unknown state code in gazetteer", row);
    std::string city = normalize_city(std::string_view(line).substr(0, tab));
    if (city.empty()) throw LoadError("empty city in gazetteer", row);
    g.insert({std::move(city), *code});
  }
  return g;
}

void Gazetteer::insert(CityState entry) { entries_.insert(std::move(entry)); }

std::optional<CityState> parse_location(std::string_view location_raw, const Gazetteer& gazetteer) {
  std::string_view s = trim(location_raw);
  std::string_view without_country;
  if (ends_with_country(s, without_country)) s = trim(without_country);

  const auto comma = s.rfind(',');
  if (comma == std::string_view::npos) return std::nullopt;
  auto code = state_code(s.substr(comma + 1));
  if (!code) return std::nullopt;
  CityState candidate{normalize_city(s.substr(0, comma)), *code};
  if (candidate.city.empty() || !gazetteer.contains(candidate)) return std::nullopt;
  return candidate;
}

}  // namespace ambient
