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
#include <cstdint>
#include <string>
#include <string_view>

namespace ambient::utf8 {

inline constexpr char32_t kInvalid = 0xFFFD;

/// Decodes the code point starting at `pos` and advances `pos` past it.
/// Malformed sequences decode to U+FFFD and consume one byte.
char32_t decode(std::string_view s, std::size_t& pos) noexcept;

/// Decodes the code point that ends just before `end`.
char32_t decode_before(std::string_view s, std::size_t end) noexcept;

void append(std::string& out, char32_t cp);

/// Unicode White_Space property.
bool is_space(char32_t cp) noexcept;

/// Letters and digits for word-boundary purposes. ASCII is exact; outside
/// ASCII everything that is not whitespace, punctuation or a pictographic
/// symbol counts as a word character.
bool is_word(char32_t cp) noexcept;

/// Punctuation that the tokenizer strips from token edges.
bool is_punct(char32_t cp) noexcept;

/// ASCII-only lowercasing; other bytes pass through unchanged.
std::string ascii_lower(std::string_view s);

}  // namespace ambient::utf8
