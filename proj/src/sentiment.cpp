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

#include "ambient/sentiment.hpp"

#include <algorithm>
#include <map>

#include <json.hpp>

#include "ambient/errors.hpp"

namespace ambient {

SentimentSummary ambient_sentiment(const FrequencyDistribution& dist, const Lexicon& lexicon,
                                   std::size_t n_documents) {
  std::vector<double> scores;
  std::vector<double> counts;
  for (const auto& [type, count] : dist.counts()) {
    if (const double* phi = lexicon.find(type)) {
      scores.push_back(*phi);
      counts.push_back(static_cast<double>(count));
    }
  }
  if (scores.empty()) throw NoScoredTokens("no tokens covered by lexicon '" + lexicon.name + "'");

  const Eigen::Map<const Eigen::ArrayXd> phi(scores.data(), static_cast<Eigen::Index>(scores.size()));
  const Eigen::Map<const Eigen::ArrayXd> weight(counts.data(), static_cast<Eigen::Index>(counts.size()));
  const auto moments = weighted_moments(phi, weight);

  SentimentSummary summary;
  summary.phi_avg = moments.mean;
  summary.sigma = scores.size() == 1 ? 0.0 : moments.stddev;
  summary.n_scored_tokens = 0;
  for (double c : counts) summary.n_scored_tokens += static_cast<std::uint64_t>(c);
  summary.n_documents = n_documents;
  summary.std_error = n_documents > 0 ? summary.sigma / std::sqrt(static_cast<double>(n_documents)) : 0.0;
  return summary;
}

std::string_view to_string(Partition p) {
  switch (p) {
    case Partition::R: return "R";
    case Partition::NR: return "NR";
    case Partition::Combined: return "COMBINED";
    case Partition::Background: return "BACKGROUND";
  }
  return "?";
}

SentimentSeries build_series(const BinnedCorpus& corpus, const LabelStore& labels, const Lexicon& lexicon,
                             Partition partition, std::optional<std::int64_t> last_bin) {
  const std::int64_t last = last_bin.value_or(corpus.max_bin());
  std::map<std::int64_t, std::pair<FrequencyDistribution, std::size_t>> per_bin;

  for (const auto& bd : corpus.documents) {
    if (partition == Partition::R || partition == Partition::NR) {
      const auto label = labels.label_of(bd.doc.id);
      if (!label) throw ValidationError("document '" + bd.doc.id + "' has no label");
      if ((*label == Label::R) != (partition == Partition::R)) continue;
    }
    if (bd.bin > last) continue;
    auto& [dist, n_docs] = per_bin[bd.bin];
    dist.add(tokenize(bd.doc.text, 1));
    ++n_docs;
  }

  SentimentSeries series;
  series.partition = partition;
  for (std::int64_t bin = 0; bin <= last; ++bin) {
    SeriesPoint point;
    point.bin = bin;
    if (auto it = per_bin.find(bin); it != per_bin.end()) {
      point.n_documents = it->second.second;
      try {
        point.summary = ambient_sentiment(it->second.first, lexicon, point.n_documents);
        point.n_tokens = point.summary->n_scored_tokens;
      } catch (const NoScoredTokens&) {
      }
    }
    series.bins.push_back(point);
  }
  return series;
}

void write_series(std::ostream& out, const std::vector<SentimentSeries>& series, const TimeBinning& binning,
                  const Lexicon& lexicon) {
  using json = nlohmann::json;
  json meta = {{"record", "meta"},
               {"lexicon", lexicon.name},
               {"lexicon_entries", lexicon.entries.size()},
               {"lens", lexicon.lens ? json::array({lexicon.lens->first, lexicon.lens->second}) : json(nullptr)},
               {"epoch", format_iso8601(binning.epoch_start)},
               {"bin_width_seconds", binning.width},
               {"n_tokens", "scored token instances"},
               {"stderr", "sigma / sqrt(n_documents)"}};
  out << meta.dump() << '\n';
  for (const auto& s : series) {
    for (const auto& p : s.bins) {
      json rec = {{"partition", std::string(to_string(s.partition))},
                  {"bin_index", p.bin},
                  {"bin_start_iso", format_iso8601(binning.bin_start(p.bin))}};
      if (p.summary) {
        rec["phi_avg"] = p.summary->phi_avg;
        rec["sigma"] = p.summary->sigma;
        rec["stderr"] = p.summary->std_error;
      } else {
        rec["phi_avg"] = nullptr;
        rec["sigma"] = nullptr;
        rec["stderr"] = nullptr;
      }
      rec["n_tokens"] = p.n_tokens;
      rec["n_documents"] = p.n_documents;
      out << rec.dump() << '\n';
    }
  }
}

}  // namespace ambient
