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

#include "ambient/label_store.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "ambient/binning.hpp"
#include "ambient/errors.hpp"

namespace ambient {

using json = nlohmann::json;

std::string_view to_string(Label label) { return label == Label::R ? "R" : "NR"; }
std::string_view to_string(LabelSource source) { return source == LabelSource::Human ? "human" : "model"; }

Label parse_label(std::string_view text) {
  if (text == "R") return Label::R;
  if (text == "NR") return Label::NR;
  throw ValidationError("label must be R or NR, got '" + std::string(text) + "'");
}

LabelSource parse_label_source(std::string_view text) {
  if (text == "human") return LabelSource::Human;
  if (text == "model") return LabelSource::Model;
  throw ValidationError("label source must be human or model, got '" + std::string(text) + "'");
}

std::string serialize_label(const LabelEntry& entry) {
  nlohmann::ordered_json obj;
  obj["id"] = entry.id;
  obj["label"] = std::string(to_string(entry.label));
  obj["source"] = std::string(to_string(entry.source));
  if (entry.score) obj["score"] = *entry.score;
  obj["at"] = format_iso8601(entry.at);
  return obj.dump();
}

LabelEntry parse_label_line(std::string_view line, std::size_t row) {
  json obj = json::parse(line.begin(), line.end(), nullptr, false);
  if (obj.is_discarded() || !obj.is_object()) throw LoadError("label record is not a JSON object", row);
  try {
    LabelEntry entry;
    entry.id = obj.at("id").get<std::string>();
    if (entry.id.empty()) throw LoadError("empty id in label record", row);
    entry.label = parse_label(obj.at("label").get<std::string>());
    entry.source = parse_label_source(obj.value("source", std::string("human")));
    if (auto it = obj.find("score"); it != obj.end() && !it->is_null()) {
      const double s = it->get<double>();
      if (!std::isfinite(s) || s < 0.0 || s > 1.0) throw LoadError("label score outside [0,1]", row);
      entry.score = s;
    }
    if (auto it = obj.find("at"); it != obj.end() && !it->is_null())
      entry.at = parse_iso8601(it->get<std::string>());
    return entry;
  } catch (const LoadError&) {
    throw;
  } catch (const std::exception& e) {
    throw LoadError(std::string("bad label record: ") + e.what(), row);
  }
}

LabelStore::~LabelStore() {
  if (fd_ >= 0) ::close(fd_);
}

LabelStore::LabelStore(LabelStore&& other) noexcept
    : path_(std::move(other.path_)),
      fd_(other.fd_),
      entries_(std::move(other.entries_)),
      log_(std::move(other.log_)),
      torn_lines_(other.torn_lines_) {
  other.fd_ = -1;
}

LabelStore& LabelStore::operator=(LabelStore&& other) noexcept {
  if (this != &other) {
    if (fd_ >= 0) ::close(fd_);
    path_ = std::move(other.path_);
    fd_ = other.fd_;
    entries_ = std::move(other.entries_);
    log_ = std::move(other.log_);
    torn_lines_ = other.torn_lines_;
    other.fd_ = -1;
  }
  return *this;
}

LabelStore::AppendResult LabelStore::apply(const LabelEntry& entry) {
  auto it = entries_.find(entry.id);
  if (it != entries_.end()) {
    const LabelEntry& current = it->second.entry;
    if (current.source == LabelSource::Human && entry.source == LabelSource::Model)
      return AppendResult::HumanPrecedence;
    if (current.source == entry.source && current.label == entry.label && current.score == entry.score)
      return AppendResult::Unchanged;
  }
  log_.push_back(entry);
  entries_.insert_or_assign(entry.id, Slot{entry, log_.size() - 1});
  return AppendResult::Appended;
}

LabelStore LabelStore::replay(const std::string& path, bool truncate_torn_tail) {
  LabelStore store;
  store.path_ = path;
  std::ifstream in(path, std::ios::binary);
  if (!in) return store;
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

  std::size_t pos = 0;
  std::size_t row = 0;
  while (pos < content.size()) {
    const std::size_t nl = content.find('\n', pos);
    if (nl == std::string::npos) {
      // Torn tail from an interrupted append; never acknowledged.
      ++store.torn_lines_;
      if (truncate_torn_tail && ::truncate(path.c_str(), static_cast<off_t>(pos)) != 0)
        throw LoadError("cannot truncate torn tail of " + path + ": " + std::strerror(errno));
      break;
    }
    ++row;
    std::string_view line(content.data() + pos, nl - pos);
    pos = nl + 1;
    if (line.empty()) continue;
    store.apply(parse_label_line(line, row));
  }
  return store;
}

LabelStore LabelStore::load(const std::string& path) {
  if (!std::filesystem::exists(path)) throw LoadError("label file not found: " + path);
  return replay(path, false);
}

LabelStore LabelStore::open(const std::string& path) {
  LabelStore store = replay(path, true);
  store.fd_ = ::open(path.c_str(), O_WRONLY | O_APPEND | O_CREAT | O_CLOEXEC, 0644);
  if (store.fd_ < 0) throw Error("cannot open label store for append: " + path + ": " + std::strerror(errno));
  return store;
}

LabelStore::AppendResult LabelStore::append(const LabelEntry& entry) {
  std::lock_guard lock(mutex_);
  const std::size_t before = log_.size();
  std::optional<Slot> previous;
  if (auto it = entries_.find(entry.id); it != entries_.end()) previous = it->second;
  const AppendResult result = apply(entry);
  if (result != AppendResult::Appended || fd_ < 0) return result;

  std::string line = serialize_label(entry);
  line.push_back('\n');
  std::size_t written = 0;
  while (written < line.size()) {
    const ssize_t n = ::write(fd_, line.data() + written, line.size() - written);
    if (n < 0) {
      if (errno == EINTR) continue;
      log_.resize(before);
      if (previous)
        entries_.insert_or_assign(entry.id, *previous);
      else
        entries_.erase(entry.id);
      throw Error("label store write failed: " + std::string(std::strerror(errno)));
    }
    written += static_cast<std::size_t>(n);
  }
  if (::fdatasync(fd_) != 0) throw Error("label store sync failed: " + std::string(std::strerror(errno)));
  return result;
}

std::optional<LabelEntry> LabelStore::get(const std::string& id) const {
  std::lock_guard lock(mutex_);
  auto it = entries_.find(id);
  if (it == entries_.end()) return std::nullopt;
  return it->second.entry;
}

std::optional<Label> LabelStore::label_of(const std::string& id) const {
  std::lock_guard lock(mutex_);
  auto it = entries_.find(id);
  if (it == entries_.end()) return std::nullopt;
  return it->second.entry.label;
}

std::vector<LabelEntry> LabelStore::resolved() const {
  std::lock_guard lock(mutex_);
  std::vector<const Slot*> slots;
  slots.reserve(entries_.size());
  for (const auto& [id, slot] : entries_) slots.push_back(&slot);
  std::sort(slots.begin(), slots.end(), [](const Slot* a, const Slot* b) { return a->log_index < b->log_index; });
  std::vector<LabelEntry> out;
  out.reserve(slots.size());
  for (const Slot* s : slots) out.push_back(s->entry);
  return out;
}

std::size_t LabelStore::size() const {
  std::lock_guard lock(mutex_);
  return entries_.size();
}

namespace {

std::string lock_path(const std::string& labels_path) { return labels_path + ".lock"; }

}  // namespace

StoreLock StoreLock::acquire_exclusive(const std::string& labels_path) {
  const std::string path = lock_path(labels_path);
  int fd = ::open(path.c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0644);
  if (fd < 0) throw ValidationError("cannot open lock file " + path + ": " + std::strerror(errno));
  if (::flock(fd, LOCK_EX | LOCK_NB) != 0) {
    ::close(fd);
    throw ValidationError("label store is locked by another process: " + labels_path);
  }
  return StoreLock(fd);
}

void StoreLock::ensure_unlocked(const std::string& labels_path) {
  const std::string path = lock_path(labels_path);
  int fd = ::open(path.c_str(), O_RDONLY | O_CLOEXEC);
  if (fd < 0) return;
  const bool held = ::flock(fd, LOCK_SH | LOCK_NB) != 0;
  ::close(fd);
  if (held) throw ValidationError("label store is open in a labeling session: " + labels_path);
}

StoreLock::~StoreLock() {
  if (fd_ >= 0) ::close(fd_);
}

}  // namespace ambient
