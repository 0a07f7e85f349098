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

#include "ambient/tokenize.hpp"

#include <stdexcept>

#include "ambient/utf8.hpp"

namespace ambient {

namespace {

bool strippable(char32_t cp) { return cp != '#' && cp != '@' && utf8::is_punct(cp); }

bool starts_with(std::string_view s, std::string_view prefix) {
  return s.size() >= prefix.size() && s.substr(0, prefix.size()) == prefix;
}

bool looks_like_url(std::string_view token) {
  return starts_with(token, "http://") || starts_with(token, "https://") || starts_with(token, "www.");
}

// Trims strippable code points from both ends of a raw whitespace-delimited chunk.
std::string_view strip_edges(std::string_view chunk) {
  std::size_t begin = 0;
  while (begin < chunk.size()) {
    std::size_t next = begin;
    if (!strippable(utf8::decode(chunk, next))) break;
    begin = next;
  }
  std::size_t end = chunk.size();
  while (end > begin) {
    const char32_t cp = utf8::decode_before(chunk, end);
    if (!strippable(cp)) break;
    std::size_t width = 1;
    while (width < 4 && end - width > begin &&
           (static_cast<unsigned char>(chunk[end - width]) & 0xC0) == 0x80)
      ++width;
    end -= width;
  }
  return chunk.substr(begin, end - begin);
}

template <typename Sink>
void for_each_unigram(std::string_view text, Sink&& sink) {
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t start = pos;
    while (start < text.size()) {
      std::size_t next = start;
      if (!utf8::is_space(utf8::decode(text, next))) break;
      start = next;
    }
    std::size_t end = start;
    while (end < text.size()) {
      std::size_t next = end;
      if (utf8::is_space(utf8::decode(text, next))) break;
      end = next;
    }
    pos = end;
    if (start == end) continue;

    std::string_view chunk = text.substr(start, end - start);
    if (chunk == kUrlToken) {
      sink(std::string(kUrlToken));
      continue;
    }
    std::string lowered = utf8::ascii_lower(strip_edges(chunk));
    if (lowered.empty()) continue;
    if (looks_like_url(lowered)) {
      sink(std::string(kUrlToken));
      continue;
    }
    sink(std::move(lowered));
  }
}

}  // namespace

std::uint64_t NgramBag::total() const {
  std::uint64_t sum = 0;
  for (const auto& [type, count] : counts) sum += count;
  return sum;
}

NgramBag& NgramBag::merge(const NgramBag& other) {
  if (other.n != n) throw std::invalid_argument("cannot merge bags of different n-gram order");
  for (const auto& [type, count] : other.counts) counts[type] += count;
  return *this;
}

std::vector<std::string> unigrams(std::string_view text) {
  std::vector<std::string> out;
  for_each_unigram(text, [&](std::string token) { out.push_back(std::move(token)); });
  return out;
}

void accumulate_ngrams(std::string_view text, NgramBag& bag) {
  if (bag.n == 1) {
    for_each_unigram(text, [&](std::string token) { ++bag.counts[std::move(token)]; });
    return;
  }
  if (bag.n != 2) throw std::invalid_argument("n-gram order must be 1 or 2");
  std::string previous;
  bool have_previous = false;
  for_each_unigram(text, [&](std::string token) {
    if (have_previous) {
      std::string bigram;
      bigram.reserve(previous.size() + 1 + token.size());
      bigram.append(previous).push_back(' ');
      bigram.append(token);
      ++bag.counts[std::move(bigram)];
    }
    previous = std::move(token);
    have_previous = true;
  });
}

NgramBag tokenize(std::string_view text, int n) {
  if (n != 1 && n != 2) throw std::invalid_argument("n-gram order must be 1 or 2");
  NgramBag bag;
  bag.n = n;
  accumulate_ngrams(text, bag);
  return bag;
}

}  // namespace ambient
