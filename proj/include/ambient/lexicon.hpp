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
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>

namespace ambient {

/// Word -> sentiment score table (LabMT-style, scores nominally in [1, 9]).
struct Lexicon {
  std::string name;
  std::unordered_map<std::string, double> entries;
  std::optional<std::pair<double, double>> lens;  // excluded closed interval
  std::size_t duplicate_rows = 0;

  const double* find(const std::string& word) const {
    auto it = entries.find(word);
    return it == entries.end() ? nullptr : &it->second;
  }
};

/// Reads a delimited file with a `word`/`score` header. The delimiter (tab,
/// comma or semicolon) is taken from the header. Words are ASCII-lowercased;
/// duplicates keep the last row and bump `duplicate_rows`. Throws LoadError
/// with the 1-based data row on non-numeric or non-finite scores.
Lexicon load_lexicon(const std::string& path);

/// Removes every entry with lo <= score <= hi. Throws LensTooWide if nothing
/// survives and std::invalid_argument if lo > hi.
Lexicon apply_lens(const Lexicon& lexicon, double lo, double hi);

/// Parses "LO:HI".
std::pair<double, double> parse_lens(const std::string& text);

}  // namespace ambient
