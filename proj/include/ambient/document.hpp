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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ambient {

/// One social-media record.
struct Document {
  std::string id;
  std::int64_t timestamp = 0;  // UTC seconds since epoch
  std::string text;
  std::optional<std::string> location_raw;
  std::optional<std::string> language;

  bool operator==(const Document&) const = default;
};

inline constexpr std::size_t kMaxTextBytes = 10'000;

/// Parses one corpus line (a JSON object with `id`, `ts`, `text` and the
/// optional `loc`, `lang`). Unknown fields are ignored. Throws RecordError
/// tagged with `line_number`.
Document parse_document(std::string_view record_line, std::size_t line_number = 0);

/// Inverse of parse_document; emits a single line without the trailing newline.
std::string serialize_document(const Document& doc);

/// Reads every record of a corpus file. Bad records are skipped and counted.
struct CorpusReadResult {
  std::vector<Document> documents;
  std::size_t bad_records = 0;
  std::size_t duplicate_ids = 0;
};
CorpusReadResult read_corpus_file(const std::string& path);

void write_corpus_file(const std::string& path, const std::vector<Document>& docs);

}  // namespace ambient
