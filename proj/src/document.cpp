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

#include "ambient/document.hpp"

#include <fstream>
#include <unordered_set>

#include <json.hpp>

#include "ambient/errors.hpp"

namespace ambient {

namespace {

using json = nlohmann::json;
using Kind = RecordError::Kind;

const json& required(const json& obj, const char* field, std::size_t line) {
  auto it = obj.find(field);
  if (it == obj.end() || it->is_null())
    throw RecordError(Kind::MissingField, field, line, std::string("missing field '") + field + "'");
  return *it;
}

std::optional<std::string> optional_string(const json& obj, const char* field, std::size_t line) {
  auto it = obj.find(field);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_string())
    throw RecordError(Kind::BadField, field, line, std::string("field '") + field + "' is not a string");
  return it->get<std::string>();
}

}  // namespace

Document parse_document(std::string_view record_line, std::size_t line_number) {
  json obj = json::parse(record_line.begin(), record_line.end(), nullptr, false);
  if (obj.is_discarded() || !obj.is_object())
    throw RecordError(Kind::Malformed, "", line_number, "record is not a JSON object");

  Document doc;

  const json& id = required(obj, "id", line_number);
  if (!id.is_string() || id.get_ref<const std::string&>().empty())
    throw RecordError(Kind::BadField, "id", line_number, "id must be a nonempty string");
  doc.id = id.get<std::string>();

  const json& ts = required(obj, "ts", line_number);
  if (ts.is_number_unsigned()) {
    auto v = ts.get<std::uint64_t>();
    if (v > static_cast<std::uint64_t>(INT64_MAX))
      throw RecordError(Kind::BadTimestamp, "ts", line_number, "timestamp out of range");
    doc.timestamp = static_cast<std::int64_t>(v);
  } else if (ts.is_number_integer()) {
    doc.timestamp = ts.get<std::int64_t>();
    if (doc.timestamp < 0)
      throw RecordError(Kind::BadTimestamp, "ts", line_number, "negative timestamp");
  } else {
    throw RecordError(Kind::BadTimestamp, "ts", line_number, "timestamp must be integer seconds");
  }

  const json& text = required(obj, "text", line_number);
  if (!text.is_string() || text.get_ref<const std::string&>().empty())
    throw RecordError(Kind::BadField, "text", line_number, "text must be a nonempty string");
  doc.text = text.get<std::string>();
  if (doc.text.size() > kMaxTextBytes)
    throw RecordError(Kind::BadField, "text", line_number, "text exceeds 10000 bytes");

  doc.location_raw = optional_string(obj, "loc", line_number);
  doc.language = optional_string(obj, "lang", line_number);
  return doc;
}

std::string serialize_document(const Document& doc) {
  json obj = json::object();
  obj["id"] = doc.id;
  obj["ts"] = doc.timestamp;
  obj["text"] = doc.text;
  if (doc.location_raw) obj["loc"] = *doc.location_raw;
  if (doc.language) obj["lang"] = *doc.language;
  return obj.dump(-1, ' ', false, json::error_handler_t::replace);
}

CorpusReadResult read_corpus_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open corpus file: " + path);

  CorpusReadResult result;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    try {
      Document doc = parse_document(line, line_number);
      if (!seen.insert(doc.id).second) {
        ++result.duplicate_ids;
        continue;
      }
      result.documents.push_back(std::move(doc));
    } catch (const RecordError&) {
      ++result.bad_records;
    }
  }
  return result;
}

void write_corpus_file(const std::string& path, const std::vector<Document>& docs) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write corpus file: " + path);
  for (const auto& doc : docs) out << serialize_document(doc) << '\n';
  if (!out) throw Error("write failed: " + path);
}

}  // namespace ambient
