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
#include <unordered_map>
#include <vector>

namespace ambient {

/// Token emitted in place of any URL.
inline constexpr std::string_view kUrlToken = "⟨url⟩";

/// Type -> count for one n-gram order. Counts are always >= 1.
struct NgramBag {
  int n = 1;
  std::unordered_map<std::string, std::uint64_t> counts;

  std::uint64_t total() const;
  bool empty() const noexcept { return counts.empty(); }

  /// Adds another bag of the same order. Order-independent.
  NgramBag& merge(const NgramBag& other);
};

/// Surviving 1-grams in document order: ASCII-lowercased, split on Unicode
/// whitespace, edge punctuation stripped (keeping '#', '@' and internal
/// apostrophes), URLs collapsed to kUrlToken.
std::vector<std::string> unigrams(std::string_view text);

/// Bag of 1-grams (n = 1) or of adjacent 1-gram pairs joined by one space
/// (n = 2). Throws std::invalid_argument for any other n.
NgramBag tokenize(std::string_view text, int n);

/// Adds the document's n-grams into `bag` without building a temporary bag.
void accumulate_ngrams(std::string_view text, NgramBag& bag);

}  // namespace ambient
