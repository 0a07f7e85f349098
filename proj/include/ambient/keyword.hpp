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
#include <string>
#include <string_view>

#include "ambient/document.hpp"

namespace ambient {

enum class MatchMode { Substring, WordBoundary };

/// The single keyword defining an ambient corpus.
struct AnchorQuery {
  std::string anchor;  // lowercase, no whitespace
  MatchMode match_mode = MatchMode::WordBoundary;
  std::optional<std::string> required_language;
};

/// Validates and lowercases the anchor. Throws ValidationError when the
/// anchor is empty or contains whitespace.
AnchorQuery make_anchor_query(std::string_view anchor, MatchMode mode = MatchMode::WordBoundary,
                              std::optional<std::string> language = std::nullopt);

MatchMode parse_match_mode(std::string_view name);
std::string_view to_string(MatchMode mode);

/// Case-insensitive containment of the anchor. In word-boundary mode an
/// occurrence counts only if it is not flanked by a letter or digit.
bool match_keyword(std::string_view text, const AnchorQuery& query);

/// True when the document passes the query's language requirement.
bool language_accepted(const Document& doc, const AnchorQuery& query);

}  // namespace ambient
