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

#include "ambient/lexicon.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "ambient/errors.hpp"
#include "ambient/utf8.hpp"

namespace ambient {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '"' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '"' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line, char delim) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(delim, start);
    out.push_back(trim(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::optional<double> to_double(std::string_view text) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
  return value;
}

}  // namespace

Lexicon load_lexicon(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open lexicon: " + path);

  std::string header;
  if (!std::getline(in, header)) throw LoadError("lexicon has no header row: " + path);
  char delim = '\t';
  for (char candidate : {'\t', ',', ';'}) {
    if (header.find(candidate) != std::string::npos) {
      delim = candidate;
      break;
    }
  }
  const auto columns = split(header, delim);
  std::size_t word_col = columns.size(), score_col = columns.size();
  for (std::size_t i = 0; i < columns.size(); ++i) {
    const std::string name = utf8::ascii_lower(columns[i]);
    if (name == "word") word_col = i;
    if (name == "score" || name == "happs" || name == "happiness_average") score_col = i;
  }
  if (word_col == columns.size() || score_col == columns.size())
    throw LoadError("lexicon header must name 'word' and 'score' columns: " + path);

  Lexicon lex;
  lex.name = std::filesystem::path(path).stem().string();
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) continue;
    const auto fields = split(line, delim);
    if (fields.size() <= std::max(word_col, score_col)) throw LoadError("lexicon row has too few columns", row);
    const auto score = to_double(fields[score_col]);
    if (!score || !std::isfinite(*score)) throw LoadError("non-numeric lexicon score", row);
    std::string word = utf8::ascii_lower(fields[word_col]);
    if (word.empty()) throw LoadError("empty lexicon word", row);
    auto [it, inserted] = lex.entries.insert_or_assign(std::move(word), *score);
    if (!inserted) ++lex.duplicate_rows;
  }
  if (lex.entries.empty()) throw LoadError("lexicon has no entries: " + path);
  return lex;
}

Lexicon apply_lens(const Lexicon& lexicon, double lo, double hi) {
  if (!(lo <= hi)) throw std::invalid_argument("lens bounds must satisfy lo <= hi");
  Lexicon out;
  out.name = lexicon.name;
  out.lens = std::make_pair(lo, hi);
  out.duplicate_rows = lexicon.duplicate_rows;
  for (const auto& [word, score] : lexicon.entries)
    if (score < lo || score > hi) out.entries.emplace(word, score);
  if (out.entries.empty()) throw LensTooWide("lens [" + std::to_string(lo) + ", " + std::to_string(hi) + "] removes every lexicon entry");
  return out;
}

std::pair<double, double> parse_lens(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw ValidationError("lens must be LO:HI");
  const auto lo = to_double(std::string_view(text).substr(0, colon));
  const auto hi = to_double(std::string_view(text).substr(colon + 1));
  if (!lo || !hi) throw ValidationError("lens bounds must be numbers: " + text);
  if (*lo > *hi) throw ValidationError("lens requires LO <= HI: " + text);
  return {*lo, *hi};
}

}  // namespace ambient
