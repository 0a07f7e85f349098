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
#include <sstream>

#include <json.hpp>

#include "ambient/errors.hpp"
#include "ambient/wordshift.hpp"
#include "oracles.hpp"

using namespace ambient;

namespace {
Lexicon make_lexicon(const oracle::Scores& s) {
  Lexicon lex;
  for (const auto& [w, v] : s) lex.entries[w] = v;
  return lex;
}

FrequencyDistribution make_dist(const oracle::Counts& c) {
  FrequencyDistribution d;
  for (const auto& [w, n] : c) d.add(w, n);
  return d;
}

const ShiftContribution& find(const ShiftReport& r, const std::string& w) {
  for (const auto& c : r.contributions)
    if (c.word == w) return c;
  throw std::runtime_error("missing " + w);
}
}  // namespace

TEST_CASE("two-word shift") {
  const auto lex = make_lexicon({{"good", 7.0}, {"bad", 3.0}});
  const auto r = shift_contributions(make_dist({{"good", 1}, {"bad", 1}}), make_dist({{"good", 3}, {"bad", 1}}), lex);
  CHECK(r.phi_ref == doctest::Approx(5.0));
  CHECK(r.phi_comp == doctest::Approx(6.0));
  CHECK(find(r, "good").delta == doctest::Approx(0.5));
  CHECK(find(r, "bad").delta == doctest::Approx(0.5));
  CHECK(find(r, "good").polarity == Polarity::AboveRefMean);
  CHECK(find(r, "bad").polarity == Polarity::BelowRefMean);
  CHECK(find(r, "bad").freq_change() == doctest::Approx(-0.25));
  CHECK(std::fabs(r.residual) < 1e-15);
  CHECK(r.contributions[0].word == "bad");  // tie on |delta| broken by word
  CHECK(r.contributions[0].rank == 1);
  CHECK(r.total_abs_delta() == doctest::Approx(1.0));
}

TEST_CASE("ranking and limits") {
  const auto lex = make_lexicon({{"a", 9.0}, {"b", 1.0}, {"c", 5.0}});
  const auto r = shift_contributions(make_dist({{"a", 1}, {"b", 1}, {"c", 1}}), make_dist({{"a", 5}, {"c", 1}}), lex);
  const auto top = rank_shifts(r, 1);
  REQUIRE(top.size() == 1);
  CHECK(std::fabs(top[0].delta) >= std::fabs(r.contributions.back().delta));
  CHECK(rank_shifts(r, 10).size() == 3);
  CHECK_THROWS_AS(rank_shifts(r, 0), std::invalid_argument);
  CHECK_THROWS_AS(shift_contributions(make_dist({{"zzz", 1}}), make_dist({{"a", 1}}), lex), NoScoredTokens);
  CHECK_THROWS_AS(shift_contributions(make_dist({{"a", 1}}), FrequencyDistribution{}, lex), NoScoredTokens);
}

TEST_CASE("shift output records") {
  const auto lex = make_lexicon({{"good", 7.0}, {"bad", 3.0}});
  const auto r = shift_contributions(make_dist({{"good", 1}, {"bad", 1}}), make_dist({{"good", 3}, {"bad", 1}}), lex);
  std::ostringstream out;
  write_shift(out, r, 5);
  const auto lines = testutil::lines_of(out.str());
  REQUIRE(lines.size() == 3);
  const auto head = nlohmann::json::parse(lines[0]);
  CHECK(head["phi_ref"].get<double>() == doctest::Approx(5.0));
  const auto first = nlohmann::json::parse(lines[1]);
  CHECK(first["rank"] == 1);
  CHECK(first["word"] == "bad");
  CHECK(first["polarity"] == "below_ref_mean");
  CHECK(first.contains("delta_pct"));
}

TEST_CASE("matches the definition and sums to the mean difference (property)") {
  std::mt19937_64 gen(29);
  for (int trial = 0; trial < 300; ++trial) {
    const auto lex_map = testutil::random_lexicon(gen, 50, 0.5);
    if (lex_map.empty()) continue;
    auto a = testutil::random_counts(gen, 50, 30, 40);
    auto b = testutil::random_counts(gen, 50, 30, 40);
    a[lex_map.begin()->first] += 1;
    b[lex_map.begin()->first] += 1;
    const auto lex = make_lexicon(lex_map);
    const auto r = shift_contributions(make_dist(a), make_dist(b), lex);
    const auto want = oracle::shift(a, b, lex_map);
    REQUIRE(want.size() == r.contributions.size());
    double sum = 0;
    for (const auto& c : r.contributions) {
      CHECK(std::fabs(c.delta - want.at(c.word)) <= 1e-12);
      sum += c.delta;
    }
    CHECK(std::fabs(sum - (r.phi_comp - r.phi_ref)) <= 1e-9);
    CHECK(std::fabs(r.phi_ref - oracle::phi(a, lex_map)) <= 1e-12);

    // Swapping the sides flips the total.
    const auto back = shift_contributions(make_dist(b), make_dist(a), lex);
    double back_sum = 0;
    for (const auto& c : back.contributions) back_sum += c.delta;
    CHECK(std::fabs(back_sum + sum) <= 1e-9);

    // Scaling either corpus leaves every contribution unchanged.
    oracle::Counts scaled;
    for (const auto& [w, n] : b) scaled[w] = 3 * n;
    const auto rs = shift_contributions(make_dist(a), make_dist(scaled), lex);
    for (const auto& c : rs.contributions) CHECK(std::fabs(c.delta - want.at(c.word)) <= 1e-12);

    const auto same = shift_contributions(make_dist(a), make_dist(a), lex);
    for (const auto& c : same.contributions) CHECK(c.delta == 0.0);
  }
}
