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

#include "ambient/wordshift.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "ambient/errors.hpp"

namespace ambient {

namespace {

struct ScoredDistribution {
  std::map<std::string, double> p;  // over scored types only
  double phi = 0.0;
};

ScoredDistribution scored(const FrequencyDistribution& dist, const Lexicon& lexicon, const char* side) {
  ScoredDistribution out;
  std::uint64_t total = 0;
  for (const auto& [type, count] : dist.counts())
    if (lexicon.find(type)) total += count;
  if (total == 0) throw NoScoredTokens(std::string(side) + " corpus has no lexicon-covered tokens");
  for (const auto& [type, count] : dist.counts()) {
    if (const double* phi = lexicon.find(type)) {
      const double p = static_cast<double>(count) / static_cast<double>(total);
      out.p.emplace(type, p);
      out.phi += *phi * p;
    }
  }
  return out;
}

bool ranks_before(const ShiftContribution& a, const ShiftContribution& b) {
  const double da = std::abs(a.delta), db = std::abs(b.delta);
  if (da != db) return da > db;
  return a.word < b.word;
}

}  // namespace

std::string_view to_string(Polarity p) { return p == Polarity::AboveRefMean ? "above_ref_mean" : "below_ref_mean"; }

double ShiftReport::total_abs_delta() const {
  double sum = 0.0;
  for (const auto& c : contributions) sum += std::abs(c.delta);
  return sum;
}

ShiftReport shift_contributions(const FrequencyDistribution& ref, const FrequencyDistribution& comp,
                                const Lexicon& lexicon) {
  const ScoredDistribution r = scored(ref, lexicon, "reference");
  const ScoredDistribution c = scored(comp, lexicon, "comparison");

  ShiftReport report;
  report.phi_ref = r.phi;
  report.phi_comp = c.phi;

  std::map<std::string, std::pair<double, double>> union_types;
  for (const auto& [type, p] : r.p) union_types[type].first = p;
  for (const auto& [type, p] : c.p) union_types[type].second = p;

  double sum = 0.0;
  for (const auto& [type, freqs] : union_types) {
    ShiftContribution sc;
    sc.word = type;
    sc.phi_word = *lexicon.find(type);
    sc.freq_ref = freqs.first;
    sc.freq_comp = freqs.second;
    sc.delta = (sc.phi_word - report.phi_ref) * (sc.freq_comp - sc.freq_ref);
    sc.polarity = sc.phi_word > report.phi_ref ? Polarity::AboveRefMean : Polarity::BelowRefMean;
    sum += sc.delta;
    report.contributions.push_back(std::move(sc));
  }
  report.residual = (report.phi_comp - report.phi_ref) - sum;

  std::sort(report.contributions.begin(), report.contributions.end(), ranks_before);
  for (std::size_t i = 0; i < report.contributions.size(); ++i) report.contributions[i].rank = i + 1;
  return report;
}

std::vector<ShiftContribution> rank_shifts(const ShiftReport& report, std::size_t k) {
  if (k == 0) throw std::invalid_argument("k must be at least 1");
  std::vector<ShiftContribution> sorted = report.contributions;
  std::sort(sorted.begin(), sorted.end(), ranks_before);
  if (sorted.size() > k) sorted.resize(k);
  return sorted;
}

void write_shift(std::ostream& out, const ShiftReport& report, std::size_t k) {
  using json = nlohmann::json;
  const double total_abs = report.total_abs_delta();
  out << json{{"record", "header"},
              {"phi_ref", report.phi_ref},
              {"phi_comp", report.phi_comp},
              {"delta_phi", report.phi_comp - report.phi_ref},
              {"residual", report.residual},
              {"sum_abs_delta", total_abs},
              {"n_types", report.contributions.size()}}
             .dump()
      << '\n';
  for (const auto& c : rank_shifts(report, k)) {
    out << json{{"rank", c.rank},
                {"word", c.word},
                {"delta", c.delta},
                {"delta_pct", total_abs > 0.0 ? 100.0 * c.delta / total_abs : 0.0},
                {"phi_word", c.phi_word},
                {"freq_ref", c.freq_ref},
                {"freq_comp", c.freq_comp},
                {"polarity", std::string(to_string(c.polarity))}}
               .dump()
        << '\n';
  }
}

}  // namespace ambient
