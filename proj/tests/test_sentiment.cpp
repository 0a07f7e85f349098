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
#include "ambient/sentiment.hpp"
#include "oracles.hpp"

using namespace ambient;

namespace {
Lexicon make_lexicon(const oracle::Scores& s) {
  Lexicon lex;
  lex.name = "test";
  for (const auto& [w, v] : s) lex.entries[w] = v;
  return lex;
}

FrequencyDistribution make_dist(const oracle::Counts& c) {
  FrequencyDistribution d;
  for (const auto& [w, n] : c) d.add(w, n);
  return d;
}

BinnedCorpus three_doc_corpus() {
  BinnedCorpus c;
  c.binning = {0, kDefaultBinWidth};
  c.documents = {{{"d1", 0, "good good bad", {}, {}}, 0, {}},
                 {{"d2", 10, "happy day", {}, {}}, 0, {}},
                 {{"d3", kDefaultBinWidth + 1, "sad bad good news", {}, {}}, 1, {}}};
  return c;
}
}  // namespace

TEST_CASE("ambient sentiment of a small distribution") {
  const auto lex = make_lexicon({{"good", 7.0}, {"bad", 3.0}});
  const auto s = ambient_sentiment(make_dist({{"good", 3}, {"bad", 1}, {"the", 10}}), lex, 2);
  CHECK(s.phi_avg == doctest::Approx(6.0).epsilon(1e-15));
  CHECK(s.sigma == doctest::Approx(1.7320508075688772).epsilon(1e-14));
  CHECK(s.n_scored_tokens == 4);
  CHECK(s.std_error == doctest::Approx(1.7320508075688772 / std::sqrt(2.0)));

  const auto one = ambient_sentiment(make_dist({{"good", 5}}), lex, 1);
  CHECK(one.phi_avg == 7.0);
  CHECK(one.sigma == 0.0);

  CHECK_THROWS_AS(ambient_sentiment(make_dist({{"the", 2}}), lex, 1), NoScoredTokens);
  CHECK_THROWS_AS(ambient_sentiment(FrequencyDistribution{}, lex, 0), NoScoredTokens);
}

TEST_CASE("weighted moments on Eigen arrays") {
  Eigen::Array3d v(1.0, 2.0, 4.0);
  Eigen::Array3d w(1.0, 1.0, 2.0);
  const auto m = weighted_moments(v, w);
  CHECK(m.mean == doctest::Approx(2.75));
  CHECK(m.stddev == doctest::Approx(std::sqrt((3.0625 + 0.5625 + 2 * 1.5625) / 4)));
  Eigen::Array2f vf(1.0f, 3.0f);
  Eigen::Array2f wf(1.0f, 1.0f);
  CHECK(weighted_moments(vf, wf).mean == doctest::Approx(2.0f));
}

TEST_CASE("matches expanded-token oracle (property)") {
  std::mt19937_64 gen(17);
  for (int trial = 0; trial < 300; ++trial) {
    const auto lex = testutil::random_lexicon(gen, 40, 0.6);
    const auto counts = testutil::random_counts(gen, 40, 30, 50);
    const auto want = oracle::expanded_moments(counts, lex);
    if (want.tokens == 0) {
      CHECK_THROWS_AS(ambient_sentiment(make_dist(counts), make_lexicon(lex), 1), NoScoredTokens);
      continue;
    }
    const auto got = ambient_sentiment(make_dist(counts), make_lexicon(lex), 3);
    CHECK(std::fabs(got.phi_avg - want.mean) <= 1e-12);
    CHECK(std::fabs(got.sigma - want.sd) <= 1e-12);
    CHECK(got.n_scored_tokens == want.tokens);
  }
}

TEST_CASE("invariants: scale, bounds, convex combination (property)") {
  std::mt19937_64 gen(19);
  for (int trial = 0; trial < 300; ++trial) {
    const auto lex_map = testutil::random_lexicon(gen, 30, 0.7);
    if (lex_map.empty()) continue;
    const auto lex = make_lexicon(lex_map);
    auto a = testutil::random_counts(gen, 30, 20, 20);
    auto b = testutil::random_counts(gen, 30, 20, 20);
    a[lex_map.begin()->first] += 1;
    b[lex_map.rbegin()->first] += 1;

    const auto sa = ambient_sentiment(make_dist(a), lex, 1);
    oracle::Counts scaled;
    const std::uint64_t k = 1 + gen() % 7;
    for (const auto& [w, n] : a) scaled[w] = n * k;
    const auto ss = ambient_sentiment(make_dist(scaled), lex, 1);
    CHECK(std::fabs(ss.phi_avg - sa.phi_avg) <= 1e-12);
    CHECK(std::fabs(ss.sigma - sa.sigma) <= 1e-12);

    double lo = 1e9, hi = -1e9;
    for (const auto& [w, n] : a)
      if (auto it = lex_map.find(w); it != lex_map.end()) lo = std::min(lo, it->second), hi = std::max(hi, it->second);
    CHECK(sa.phi_avg >= lo - 1e-12);
    CHECK(sa.phi_avg <= hi + 1e-12);
    CHECK(sa.sigma >= 0.0);
    CHECK(sa.sigma <= (hi - lo) / 2 + 1e-12);

    const auto sb = ambient_sentiment(make_dist(b), lex, 1);
    oracle::Counts merged = a;
    for (const auto& [w, n] : b) merged[w] += n;
    const auto sm = ambient_sentiment(make_dist(merged), lex, 1);
    const double wa = static_cast<double>(sa.n_scored_tokens), wb = static_cast<double>(sb.n_scored_tokens);
    CHECK(std::fabs(sm.phi_avg - (wa * sa.phi_avg + wb * sb.phi_avg) / (wa + wb)) <= 1e-12);
  }
}

TEST_CASE("per-bin series on the three-document fixture") {
  const auto lex = make_lexicon({{"good", 7.0}, {"bad", 3.0}, {"happy", 8.0}, {"sad", 2.0}});
  LabelStore labels;
  const auto s = build_series(three_doc_corpus(), labels, lex, Partition::Combined);
  REQUIRE(s.bins.size() == 2);
  REQUIRE(s.bins[0].summary);
  CHECK(s.bins[0].summary->phi_avg == doctest::Approx(6.25).epsilon(1e-14));
  CHECK(s.bins[0].summary->sigma == doctest::Approx(1.920286436967152).epsilon(1e-13));
  CHECK(s.bins[0].summary->std_error == doctest::Approx(1.3578475614000267).epsilon(1e-13));
  CHECK(s.bins[0].n_tokens == 4);
  CHECK(s.bins[0].n_documents == 2);
  REQUIRE(s.bins[1].summary);
  CHECK(s.bins[1].summary->phi_avg == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(s.bins[1].summary->sigma == doctest::Approx(2.160246899469287).epsilon(1e-13));
  CHECK(s.bins[1].summary->std_error == doctest::Approx(2.160246899469287).epsilon(1e-13));
  CHECK(s.bins[1].n_tokens == 3);

  const auto longer = build_series(three_doc_corpus(), labels, lex, Partition::Combined, 3);
  REQUIRE(longer.bins.size() == 4);
  CHECK_FALSE(longer.bins[2].summary);
  CHECK(longer.bins[2].n_documents == 0);
  CHECK(longer.bins[3].bin == 3);
}

TEST_CASE("R and NR partitions need labels") {
  const auto lex = make_lexicon({{"good", 7.0}, {"bad", 3.0}, {"happy", 8.0}, {"sad", 2.0}});
  LabelStore labels;
  CHECK_THROWS_AS(build_series(three_doc_corpus(), labels, lex, Partition::R), ValidationError);
  labels.append({"d1", Label::R, LabelSource::Human, {}, 0});
  labels.append({"d2", Label::NR, LabelSource::Human, {}, 0});
  labels.append({"d3", Label::R, LabelSource::Model, 0.9, 0});
  const auto r = build_series(three_doc_corpus(), labels, lex, Partition::R);
  const auto nr = build_series(three_doc_corpus(), labels, lex, Partition::NR);
  REQUIRE(r.bins[0].summary);
  CHECK(r.bins[0].summary->phi_avg == doctest::Approx(17.0 / 3.0));
  CHECK(r.bins[0].n_documents == 1);
  CHECK(nr.bins[0].summary->phi_avg == doctest::Approx(8.0));
  CHECK_FALSE(nr.bins[1].summary);
}

TEST_CASE("series output records") {
  const auto lex = make_lexicon({{"good", 7.0}, {"bad", 3.0}, {"happy", 8.0}, {"sad", 2.0}});
  LabelStore labels;
  auto s = build_series(three_doc_corpus(), labels, lex, Partition::Combined, 2);
  std::ostringstream out;
  write_series(out, {s}, three_doc_corpus().binning, lex);
  const auto lines = testutil::lines_of(out.str());
  REQUIRE(lines.size() == 4);
  const auto meta = nlohmann::json::parse(lines[0]);
  CHECK(meta["record"] == "meta");
  const auto rec = nlohmann::json::parse(lines[1]);
  CHECK(rec["partition"] == "COMBINED");
  CHECK(rec["bin_index"] == 0);
  CHECK(rec["bin_start_iso"] == "1970-01-01T00:00:00Z");
  CHECK(rec["phi_avg"].get<double>() == doctest::Approx(6.25));
  CHECK(rec["n_tokens"] == 4);
  const auto gap = nlohmann::json::parse(lines[3]);
  CHECK(gap["phi_avg"].is_null());
  CHECK(gap["stderr"].is_null());
}
