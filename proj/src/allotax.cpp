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

#include "ambient/allotax.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <utility>

#include <json.hpp>

#include "ambient/errors.hpp"

namespace ambient {

RankedDistribution tied_ranks(const FrequencyDistribution& counts, std::size_t exclusive_count_other) {
  RankedDistribution out;
  out.n_types = counts.size();

  std::vector<std::pair<std::uint64_t, const std::string*>> order;
  order.reserve(counts.size());
  for (const auto& [type, count] : counts.counts()) order.emplace_back(count, &type);
  std::stable_sort(order.begin(), order.end(), [](const auto& a, const auto& b) { return a.first > b.first; });

  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j < order.size() && order[j].first == order[i].first) ++j;
    // Integer ranks i+1 .. j share their mean.
    const double tied = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t k = i; k < j; ++k) out.ranks.emplace(*order[k].second, tied);
    i = j;
  }
  const double n = static_cast<double>(out.n_types);
  out.absent_rank = (n + 1.0 + n + static_cast<double>(exclusive_count_other)) / 2.0;
  return out;
}

RtdReport rtd(const FrequencyDistribution& dist1, const FrequencyDistribution& dist2, const RtdConfig& config) {
  if (dist1.empty() || dist2.empty()) throw std::invalid_argument("rtd needs two nonempty distributions");
  if (!(config.alpha > 0.0) || !std::isfinite(config.alpha))
    throw std::invalid_argument("alpha must be positive and finite");

  std::size_t exclusive1 = 0, exclusive2 = 0;
  for (const auto& [type, count] : dist1.counts())
    if (dist2.count(type) == 0) ++exclusive1;
  for (const auto& [type, count] : dist2.counts())
    if (dist1.count(type) == 0) ++exclusive2;

  const RankedDistribution ranks1 = tied_ranks(dist1, exclusive2);
  const RankedDistribution ranks2 = tied_ranks(dist2, exclusive1);

  std::vector<std::string> types;
  types.reserve(dist1.size() + exclusive2);
  {
    auto a = dist1.counts().begin(), b = dist2.counts().begin();
    const auto ae = dist1.counts().end(), be = dist2.counts().end();
    while (a != ae || b != be) {
      if (b == be || (a != ae && a->first < b->first)) {
        types.push_back((a++)->first);
      } else if (a == ae || b->first < a->first) {
        types.push_back((b++)->first);
      } else {
        types.push_back(a->first);
        ++a;
        ++b;
      }
    }
  }

  const auto n = static_cast<Eigen::Index>(types.size());
  Eigen::ArrayXd r1(n), r2(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    r1[i] = ranks1.rank_of(types[static_cast<std::size_t>(i)]);
    r2[i] = ranks2.rank_of(types[static_cast<std::size_t>(i)]);
  }
  const Eigen::ArrayXd terms = rank_turbulence_terms(r1, r2, config.alpha);

  // Disjoint reference: each corpus's types keep their own ranks and sit at
  // the absent rank of the other corpus, which then holds all of them as
  // exclusives.
  const double n1 = static_cast<double>(dist1.size()), n2 = static_cast<double>(dist2.size());
  const double absent_in_2 = n2 + (n1 + 1.0) / 2.0;
  const double absent_in_1 = n1 + (n2 + 1.0) / 2.0;
  Eigen::ArrayXd own1(static_cast<Eigen::Index>(dist1.size())), own2(static_cast<Eigen::Index>(dist2.size()));
  {
    Eigen::Index i = 0;
    for (const auto& [type, r] : ranks1.ranks) own1[i++] = r;
    i = 0;
    for (const auto& [type, r] : ranks2.ranks) own2[i++] = r;
  }
  const double disjoint1 =
      rank_turbulence_terms(own1, Eigen::ArrayXd::Constant(own1.size(), absent_in_2), config.alpha).sum();
  const double disjoint2 =
      rank_turbulence_terms(Eigen::ArrayXd::Constant(own2.size(), absent_in_1), own2, config.alpha).sum();

  RtdReport report;
  report.alpha = config.alpha;
  report.normalization = disjoint1 + disjoint2;
  report.divergence = terms.sum() / report.normalization;
  report.contributions.reserve(types.size());
  for (Eigen::Index i = 0; i < n; ++i) {
    const double sign = r1[i] < r2[i] ? 1.0 : (r1[i] > r2[i] ? -1.0 : 0.0);
    report.contributions.push_back({types[static_cast<std::size_t>(i)], sign * terms[i], r1[i], r2[i]});
  }

  const double tokens = static_cast<double>(dist1.total() + dist2.total());
  const double union_types = static_cast<double>(types.size());
  auto balance = [&](const FrequencyDistribution& d, std::size_t exclusive) {
    BalanceStats b;
    b.tokens = d.total();
    b.types = d.size();
    b.exclusive_types = exclusive;
    b.token_share = static_cast<double>(d.total()) / tokens;
    b.type_share = static_cast<double>(d.size()) / union_types;
    b.exclusive_type_share = static_cast<double>(exclusive) / static_cast<double>(d.size());
    return b;
  };
  report.balance1 = balance(dist1, exclusive1);
  report.balance2 = balance(dist2, exclusive2);
  return report;
}

namespace {

bool contribution_before(const RtdContribution& a, const RtdContribution& b) {
  const double ma = std::abs(a.contribution), mb = std::abs(b.contribution);
  if (ma != mb) return ma > mb;
  return a.type < b.type;
}

int log_cell(double rank, int cells_per_decade) {
  return static_cast<int>(std::floor(std::log10(rank) * cells_per_decade));
}

}  // namespace

std::vector<RtdContribution> rtd_contribution_list(const RtdReport& report, std::size_t k) {
  if (k == 0) throw std::invalid_argument("k must be at least 1");
  std::vector<RtdContribution> out;
  for (const auto& c : report.contributions)
    if (c.contribution != 0.0) out.push_back(c);
  std::sort(out.begin(), out.end(), contribution_before);
  if (out.size() > k) out.resize(k);
  return out;
}

std::vector<HistogramCell> rank_rank_histogram(const RtdReport& report, int cells_per_decade) {
  if (cells_per_decade < 1) throw std::invalid_argument("cells_per_decade must be at least 1");
  std::map<std::pair<int, int>, HistogramCell> cells;
  for (const auto& c : report.contributions) {
    const int i = log_cell(c.r1, cells_per_decade), j = log_cell(c.r2, cells_per_decade);
    auto [it, inserted] = cells.try_emplace({i, j});
    HistogramCell& cell = it->second;
    if (inserted) {
      cell.cell1 = i;
      cell.cell2 = j;
    }
    ++cell.count;
    const double mag = std::abs(c.contribution), top = std::abs(cell.top_contribution);
    if (cell.count == 1 || mag > top || (mag == top && c.type < cell.top_type)) {
      cell.top_type = c.type;
      cell.top_contribution = c.contribution;
    }
  }
  std::vector<HistogramCell> out;
  out.reserve(cells.size());
  for (auto& [key, cell] : cells) out.push_back(std::move(cell));
  return out;
}

void write_rtd_output(const std::string& dir, const RtdReport& report, std::size_t top_k, int cells_per_decade,
                      int ngram) {
  namespace fs = std::filesystem;
  using json = nlohmann::json;
  fs::create_directories(dir);

  auto balance_json = [](const BalanceStats& b) {
    return json{{"token_share", b.token_share},
                {"type_share", b.type_share},
                {"exclusive_type_share", b.exclusive_type_share},
                {"tokens", b.tokens},
                {"types", b.types},
                {"exclusive_types", b.exclusive_types}};
  };
  {
    std::ofstream out(fs::path(dir) / "divergence.json", std::ios::trunc);
    if (!out) throw Error("cannot write divergence.json in " + dir);
    out << json{{"divergence", report.divergence},
                {"alpha", report.alpha},
                {"normalization", report.normalization},
                {"ngram", ngram},
                {"union_types", report.contributions.size()},
                {"corpus1", balance_json(report.balance1)},
                {"corpus2", balance_json(report.balance2)}}
               .dump(2)
        << '\n';
  }
  {
    std::ofstream out(fs::path(dir) / "contributions.tsv", std::ios::trunc);
    out.precision(17);
    out << "rank\ttype\tcontribution\tnormalized\tr1\tr2\tside\n";
    std::size_t rank = 0;
    for (const auto& c : rtd_contribution_list(report, top_k))
      out << ++rank << '\t' << c.type << '\t' << c.contribution << '\t' << c.contribution / report.normalization
          << '\t' << c.r1 << '\t' << c.r2 << '\t' << (c.contribution > 0 ? "corpus1" : "corpus2") << '\n';
  }
  {
    std::ofstream out(fs::path(dir) / "histogram.tsv", std::ios::trunc);
    out.precision(17);
    out << "cell1\tcell2\tcount\ttop_type\ttop_contribution\n";
    for (const auto& cell : rank_rank_histogram(report, cells_per_decade))
      out << cell.cell1 << '\t' << cell.cell2 << '\t' << cell.count << '\t' << cell.top_type << '\t'
          << cell.top_contribution << '\n';
  }
}

}  // namespace ambient
