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
#include <map>
#include <string>

#include "ambient/tokenize.hpp"

namespace ambient {

/// Type -> count over a corpus slice, iterated in type order so every sum
/// over it is reproducible.
class FrequencyDistribution {
 public:
  FrequencyDistribution() = default;
  explicit FrequencyDistribution(const NgramBag& bag) { add(bag); }
  FrequencyDistribution(std::initializer_list<std::pair<const std::string, std::uint64_t>> init) {
    for (const auto& [type, count] : init) add(type, count);
  }

  void add(const std::string& type, std::uint64_t count = 1) {
    if (count == 0) return;
    counts_[type] += count;
    total_ += count;
  }
  void add(const NgramBag& bag) {
    for (const auto& [type, count] : bag.counts) add(type, count);
  }

  std::uint64_t count(const std::string& type) const {
    auto it = counts_.find(type);
    return it == counts_.end() ? 0 : it->second;
  }
  double probability(const std::string& type) const {
    return total_ == 0 ? 0.0 : static_cast<double>(count(type)) / static_cast<double>(total_);
  }

  const std::map<std::string, std::uint64_t>& counts() const noexcept { return counts_; }
  std::uint64_t total() const noexcept { return total_; }
  std::size_t size() const noexcept { return counts_.size(); }
  bool empty() const noexcept { return counts_.empty(); }

 private:
  std::map<std::string, std::uint64_t> counts_;
  std::uint64_t total_ = 0;
};

}  // namespace ambient
