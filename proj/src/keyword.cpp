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

#include "ambient/keyword.hpp"

#include "ambient/errors.hpp"
#include "ambient/utf8.hpp"

namespace ambient {

namespace {

inline char fold(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }

bool equal_folded_at(std::string_view text, std::size_t pos, std::string_view anchor) {
  for (std::size_t i = 0; i < anchor.size(); ++i)
    if (fold(text[pos + i]) != anchor[i]) return false;
  return true;
}

}  // namespace

AnchorQuery make_anchor_query(std::string_view anchor, MatchMode mode,
                              std::optional<std::string> language) {
  if (anchor.empty()) throw ValidationError("anchor keyword is empty");
  for (std::size_t pos = 0; pos < anchor.size();)
    if (utf8::is_space(utf8::decode(anchor, pos)))
      throw ValidationError("anchor keyword contains whitespace");
  return AnchorQuery{utf8::ascii_lower(anchor), mode, std::move(language)};
}

MatchMode parse_match_mode(std::string_view name) {
  if (name == "word" || name == "word_boundary") return MatchMode::WordBoundary;
  if (name == "substring") return MatchMode::Substring;
  throw ValidationError("unknown match mode: " + std::string(name));
}

std::string_view to_string(MatchMode mode) {
  return mode == MatchMode::WordBoundary ? "word" : "substring";
}

bool match_keyword(std::string_view text, const AnchorQuery& query) {
  const std::string_view anchor = query.anchor;
  if (anchor.empty() || text.size() < anchor.size()) return false;
  const char first = anchor.front();
  for (std::size_t pos = 0; pos + anchor.size() <= text.size(); ++pos) {
    if (fold(text[pos]) != first || !equal_folded_at(text, pos, anchor)) continue;
    if (query.match_mode == MatchMode::Substring) return true;
    const std::size_t end = pos + anchor.size();
    const bool left_ok = pos == 0 || !utf8::is_word(utf8::decode_before(text, pos));
    std::size_t next = end;
    const bool right_ok = end == text.size() || !utf8::is_word(utf8::decode(text, next));
    if (left_ok && right_ok) return true;
  }
  return false;
}

bool language_accepted(const Document& doc, const AnchorQuery& query) {
  if (!query.required_language) return true;
  return doc.language && utf8::ascii_lower(*doc.language) == utf8::ascii_lower(*query.required_language);
}

}  // namespace ambient
