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

#include <doctest.h>

#include <random>
#include <stdexcept>

#include "ambient/tokenize.hpp"

using namespace ambient;

using Tokens = std::vector<std::string>;

TEST_CASE("unigrams lowercase, strip edges and collapse urls") {
  CHECK(unigrams("Solar panels, ON my roof!!") == Tokens{"solar", "panels", "on", "my", "roof"});
  CHECK(unigrams("#Solar @NREL \"quoted\" (parens)") == Tokens{"#solar", "@nrel", "quoted", "parens"});
  CHECK(unigrams("don't can't") == Tokens{"don't", "can't"});
  CHECK(unigrams("see https://x.co/abc and www.example.com.") ==
        Tokens{"see", std::string(kUrlToken), "and", std::string(kUrlToken)});
  CHECK(unigrams("(http://a.b)") == Tokens{std::string(kUrlToken)});
  CHECK(unigrams("a b　c\td\ne") == Tokens{"a", "b", "c", "d", "e"});
  CHECK(unigrams("... --- !!!").empty());
  CHECK(unigrams("").empty());
  CHECK(unigrams("ÉNERGIE") == Tokens{"Énergie"});
  CHECK(unigrams("«solar»") == Tokens{"solar"});
}

TEST_CASE("n-gram bags") {
  const auto one = tokenize("the sun the SUN", 1);
  CHECK(one.n == 1);
  CHECK(one.counts.at("the") == 2);
  CHECK(one.counts.at("sun") == 2);
  CHECK(one.total() == 4);

  const auto two = tokenize("the sun the sun", 2);
  CHECK(two.counts.at("the sun") == 2);
  CHECK(two.counts.at("sun the") == 1);
  CHECK(two.total() == 3);
  CHECK(tokenize("single", 2).empty());

  CHECK_THROWS_AS(tokenize("x", 0), std::invalid_argument);
  CHECK_THROWS_AS(tokenize("x", 3), std::invalid_argument);

  NgramBag bag{2, {}};
  accumulate_ngrams("a b c", bag);
  accumulate_ngrams("a b", bag);
  CHECK(bag.counts.at("a b") == 2);
  CHECK(bag.total() == 3);
}

namespace {
std::string random_text(std::mt19937_64& gen) {
  static const std::vector<std::string> pieces = {"Sun", "wind", " ", "  ", ",", "!", "#tag", "@who", "don't",
                                                  "http://u.rl/x", "www.q.org", "é", "☀", "\t", "...", "X1"};
  std::string s;
  const int n = static_cast<int>(gen() % 20);
  for (int i = 0; i < n; ++i) s += pieces[gen() % pieces.size()];
  return s;
}

std::string join(const Tokens& t) {
  std::string s;
  for (const auto& x : t) s += (s.empty() ? "" : " ") + x;
  return s;
}
}  // namespace

TEST_CASE("tokenizing joined tokens is idempotent (property)") {
  std::mt19937_64 gen(5);
  for (int i = 0; i < 3000; ++i) {
    const auto text = random_text(gen);
    const auto once = unigrams(text);
    CHECK(unigrams(join(once)) == once);
    for (const auto& tok : once) CHECK_FALSE(tok.empty());
  }
}

TEST_CASE("bag totals and merge order (property)") {
  std::mt19937_64 gen(8);
  for (int i = 0; i < 500; ++i) {
    const auto a = random_text(gen), b = random_text(gen);
    const auto ua = unigrams(a), ub = unigrams(b);
    CHECK(tokenize(a, 1).total() == ua.size());
    CHECK(tokenize(a, 2).total() == (ua.size() > 1 ? ua.size() - 1 : 0));
    auto ab = tokenize(a, 1);
    ab.merge(tokenize(b, 1));
    auto ba = tokenize(b, 1);
    ba.merge(tokenize(a, 1));
    CHECK(ab.counts == ba.counts);
    CHECK(ab.total() == ua.size() + ub.size());
  }
}
