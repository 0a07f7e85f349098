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

#include <fstream>
#include <random>

#include <json.hpp>

#include "ambient/allotax.hpp"
#include "oracles.hpp"

using namespace ambient;

namespace {
FrequencyDistribution make_dist(const oracle::Counts& c) {
  FrequencyDistribution d;
  for (const auto& [w, n] : c) d.add(w, n);
  return d;
}
}  // namespace

TEST_CASE("tied fractional ranks") {
  const auto r = tied_ranks(FrequencyDistribution{{"a", 5}, {"b", 3}, {"c", 3}, {"d", 1}}, 0);
  CHECK(r.rank_of("a") == 1.0);
  CHECK(r.rank_of("b") == 2.5);
  CHECK(r.rank_of("c") == 2.5);
  CHECK(r.rank_of("d") == 4.0);

  // One type plus two types only the other corpus has: the absentees share
  // ranks 2 and 3.
  const auto single = tied_ranks(FrequencyDistribution{{"a", 5}}, 2);
  CHECK(single.rank_of("a") == 1.0);
  CHECK(single.absent_rank == 2.5);
  CHECK(single.rank_of("zzz") == 2.5);

  const auto all_tied = tied_ranks(FrequencyDistribution{{"x", 2}, {"y", 2}, {"z", 2}}, 1);
  CHECK(all_tied.rank_of("y") == 2.0);
  CHECK(all_tied.absent_rank == 4.0);
}

TEST_CASE("tied ranks agree with the counting oracle (property)") {
  std::mt19937_64 gen(31);
  for (int trial = 0; trial < 300; ++trial) {
    const auto a = testutil::random_counts(gen, 60, 40, 6);
    const auto b = testutil::random_counts(gen, 60, 40, 6);
    const auto u = oracle::union_types(a, b);
    std::size_t excl = 0;
    for (const auto& [t, n] : b) excl += a.count(t) ? 0 : 1;
    const auto got = tied_ranks(make_dist(a), excl);
    const auto want = oracle::tied_ranks(a, u);
    for (const auto& t : u) CHECK(got.rank_of(t) == want.at(t));
  }
}

TEST_CASE("two-type swap") {
  const auto r = rtd(FrequencyDistribution{{"a", 3}, {"b", 1}}, FrequencyDistribution{{"a", 1}, {"b", 3}});
  CHECK(r.divergence == doctest::Approx(0.4415341389240281).epsilon(1e-14));
  CHECK(r.normalization == doctest::Approx(1.040901607255891).epsilon(1e-14));
  REQUIRE(r.contributions.size() == 2);
  CHECK(r.contributions[0].type == "a");
  CHECK(r.contributions[0].contribution > 0);
  CHECK(r.contributions[1].contribution < 0);
  CHECK(r.contributions[0].r1 == 1.0);
  CHECK(r.contributions[0].r2 == 2.0);
}

TEST_CASE("rank turbulence terms on Eigen arrays") {
  Eigen::Array2d r1(1.0, 2.0), r2(2.0, 2.0);
  const auto t = rank_turbulence_terms(r1, r2, 0.25);
  CHECK(t[0] == doctest::Approx(std::pow(1.0 - std::pow(2.0, -0.25), 0.8)));
  CHECK(t[1] == 0.0);
}

TEST_CASE("argument validation") {
  CHECK_THROWS_AS(rtd(FrequencyDistribution{}, FrequencyDistribution{{"a", 1}}), std::invalid_argument);
  CHECK_THROWS_AS(rtd(FrequencyDistribution{{"a", 1}}, FrequencyDistribution{{"a", 1}}, {0.0}), std::invalid_argument);
  CHECK_THROWS_AS(rtd(FrequencyDistribution{{"a", 1}}, FrequencyDistribution{{"a", 1}}, {-1.0}),
                  std::invalid_argument);
}

TEST_CASE("a singleton corpus tied low in a larger one exceeds the disjoint normalization") {
  const oracle::Counts a = {{"t9", 1}};
  const oracle::Counts b = {{"t0", 1}, {"t1", 1}, {"t3", 3}, {"t4", 2}, {"t5", 1}, {"t6", 1}, {"t8", 1}, {"t9", 1}};
  const auto r = rtd(make_dist(a), make_dist(b));
  CHECK(r.divergence == doctest::Approx(oracle::rtd(a, b, 0.25).divergence).epsilon(1e-12));
  CHECK(r.divergence > 1.06);
}

TEST_CASE("identity, symmetry, lower bound, disjointness and brute force (property)") {
  std::mt19937_64 gen(37);
  for (int trial = 0; trial < 400; ++trial) {
    const auto a = testutil::random_counts(gen, 20, 15, 8);
    const auto b = testutil::random_counts(gen, 20, 15, 8);
    const auto da = make_dist(a), db = make_dist(b);
    const auto ab = rtd(da, db), ba = rtd(db, da);
    CHECK(std::fabs(rtd(da, da).divergence) <= 1e-12);
    CHECK(std::fabs(ab.divergence - ba.divergence) <= 1e-12);
    CHECK(ab.divergence >= 0.0);
    const auto want = oracle::rtd(a, b, 0.25);
    CHECK(std::fabs(ab.divergence - want.divergence) <= 1e-12);
    CHECK(std::fabs(ab.normalization - want.normalization) <= 1e-12);

    oracle::Counts renamed;
    for (const auto& [t, n] : b) renamed["x" + t] = n;
    CHECK(std::fabs(rtd(da, make_dist(renamed)).divergence - 1.0) <= 1e-9);

    // Contributions swap sign with the corpora.
    for (std::size_t i = 0; i < ab.contributions.size(); ++i)
      CHECK(ab.contributions[i].contribution == -ba.contributions[i].contribution);

    // Ranks depend only on the order of counts, so a monotone map of the
    // counts leaves the divergence unchanged.
    oracle::Counts a2, b2;
    for (const auto& [t, n] : a) a2[t] = n * n + 1;
    for (const auto& [t, n] : b) b2[t] = n * n + 1;
    CHECK(std::fabs(rtd(make_dist(a2), make_dist(b2)).divergence - ab.divergence) <= 1e-12);

    const double alpha = 0.1 + static_cast<double>(gen() % 30) / 10.0;
    CHECK(std::fabs(rtd(da, db, {alpha}).divergence - oracle::rtd(a, b, alpha).divergence) <= 1e-11);
  }
}

TEST_CASE("contribution list and histogram") {
  const oracle::Counts a{{"sun", 9}, {"panels", 5}, {"energy", 4}, {"the", 20}, {"mph", 1}};
  const oracle::Counts b{{"mph", 8}, {"uv", 6}, {"the", 20}, {"energy", 1}};
  const auto r = rtd(make_dist(a), make_dist(b));
  const auto list = rtd_contribution_list(r, 3);
  REQUIRE(list.size() == 3);
  for (std::size_t i = 1; i < list.size(); ++i)
    CHECK(std::fabs(list[i - 1].contribution) >= std::fabs(list[i].contribution));
  for (const auto& c : rtd_contribution_list(r, 100)) {
    CHECK(c.contribution != 0.0);
    CHECK(c.type != "the");
  }
  CHECK_THROWS_AS(rtd_contribution_list(r, 0), std::invalid_argument);

  const auto hist = rank_rank_histogram(r, 4);
  std::size_t total = 0;
  for (const auto& cell : hist) total += cell.count;
  CHECK(total == r.contributions.size());
  // Naive recount.
  std::map<std::pair<int, int>, std::size_t> naive;
  for (const auto& c : r.contributions)
    ++naive[{static_cast<int>(std::floor(4 * std::log10(c.r1))), static_cast<int>(std::floor(4 * std::log10(c.r2)))}];
  REQUIRE(naive.size() == hist.size());
  std::size_t i = 0;
  for (const auto& [key, n] : naive) {
    CHECK(hist[i].cell1 == key.first);
    CHECK(hist[i].cell2 == key.second);
    CHECK(hist[i].count == n);
    ++i;
  }
  CHECK_THROWS_AS(rank_rank_histogram(r, 0), std::invalid_argument);
}

TEST_CASE("balance statistics and written outputs") {
  const auto r = rtd(FrequencyDistribution{{"a", 3}, {"b", 1}, {"c", 1}}, FrequencyDistribution{{"a", 4}});
  CHECK(r.balance1.tokens == 5);
  CHECK(r.balance2.tokens == 4);
  CHECK(r.balance1.token_share == doctest::Approx(5.0 / 9.0));
  CHECK(r.balance1.type_share == doctest::Approx(1.0));
  CHECK(r.balance2.type_share == doctest::Approx(1.0 / 3.0));
  CHECK(r.balance1.exclusive_types == 2);
  CHECK(r.balance2.exclusive_type_share == 0.0);

  testutil::TempDir dir;
  write_rtd_output(dir.path().string(), r, 10, 4, 1);
  std::ifstream in(dir.file("divergence.json"));
  const auto j = nlohmann::json::parse(in);
  CHECK(j["divergence"].get<double>() == doctest::Approx(r.divergence));
  CHECK(j["alpha"] == 0.25);
  const auto contrib = testutil::lines_of(testutil::slurp(dir.file("contributions.tsv")));
  CHECK(contrib.size() == 1 + rtd_contribution_list(r, 10).size());
  CHECK(contrib[0].rfind("rank\t", 0) == 0);
  CHECK(std::filesystem::exists(dir.file("histogram.tsv")));
}
