#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "i3/catalog.hpp"
#include "i3/ledger.hpp"
#include "i3/metric.hpp"

namespace i3 {

struct ScoreReport {
  std::string article_id;
  std::string category;
  std::int64_t phi = 0;
  double beta = 0.0;
  double f_score = 0.0;
  double i3 = 0.0;
  std::size_t citations = 0;
  std::size_t rank_i3 = 0;
  std::size_t rank_citations = 0;

  bool operator==(const ScoreReport&) const = default;
};

inline ScoreReport score_article(const Ledger& ledger, const Catalog& catalog,
                                 std::string_view article_id, const ScoringOptions& opts = {}) {
  const ArticleRecord& art = ledger.article(article_id);
  const JournalRecord* publisher = catalog.find(art.journal);
  if (!publisher) throw ResolutionError({art.journal});
  FScoreBreakdown fb = f_score_breakdown(ledger, catalog, article_id, opts);
  BetaCoefficient beta = catalog.beta_for(publisher->category);

  ScoreReport r;
  r.article_id = art.id;
  r.category = publisher->category;
  r.phi = beta.phi;
  r.beta = beta.value();
  r.f_score = fb.f.value();
  r.i3 = compute_i3(fb.f, beta.beta).value();
  r.citations = fb.citations;
  return r;
}

namespace detail {

// i3 values closer than ~1e-12 share a bucket and fall through to the AUC
// tie-break. Buckets keep the comparator a strict weak ordering.
inline std::int64_t i3_bucket(double i3) { return std::llround(i3 * 1e12); }

struct RankKey {
  std::int64_t bucket;
  double auc;
  std::size_t citations;
  const std::string* id;
};

inline bool outranks(const RankKey& a, const RankKey& b) {
  if (a.bucket != b.bucket) return a.bucket > b.bucket;
  if (a.auc != b.auc) return a.auc > b.auc;
  if (a.citations != b.citations) return a.citations > b.citations;
  return *a.id < *b.id;
}

}  // namespace detail

// Orders reports by descending i3. Ties go to the larger area under the curve,
// then more raw citations, then the smaller article_id. Assigns rank_i3 and
// rank_citations (citation count descending; equal counts keep i3 order).
inline std::vector<ScoreReport> rank(std::vector<ScoreReport> reports) {
  const std::size_t n = reports.size();
  std::vector<detail::RankKey> keys(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& r = reports[i];
    keys[i] = {detail::i3_bucket(r.i3), i3_auc(FScore{r.f_score}, Beta{r.beta}), r.citations,
               &r.article_id};
  }
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return detail::outranks(keys[a], keys[b]); });

  std::vector<ScoreReport> out;
  out.reserve(n);
  for (std::size_t pos = 0; pos < n; ++pos) {
    out.push_back(std::move(reports[order[pos]]));
    out.back().rank_i3 = pos + 1;
  }
  std::vector<std::size_t> by_count(n);
  for (std::size_t i = 0; i < n; ++i) by_count[i] = i;
  std::stable_sort(by_count.begin(), by_count.end(), [&](std::size_t a, std::size_t b) {
    return out[a].citations > out[b].citations;
  });
  for (std::size_t pos = 0; pos < n; ++pos) out[by_count[pos]].rank_citations = pos + 1;
  return out;
}

inline constexpr std::array<int, 5> kPercentiles = {50, 75, 90, 95, 99};
inline constexpr std::size_t kMinPercentileSample = 20;

struct PercentileTable {
  std::string category;
  std::size_t sample = 0;
  std::vector<std::pair<int, double>> thresholds;  // (percentile, i3)
};

// Nearest-rank quantiles of i3 within one category.
inline PercentileTable percentile_table(std::span<const ScoreReport> reports,
                                        std::string_view category) {
  std::vector<double> values;
  for (const auto& r : reports)
    if (r.category == category) values.push_back(r.i3);
  if (values.empty())
    throw LookupError("no scored articles in category \"" + std::string(category) + "\"");
  if (values.size() < kMinPercentileSample)
    throw DomainError("percentile table for \"" + std::string(category) + "\" needs at least " +
                      std::to_string(kMinPercentileSample) + " articles, got " +
                      std::to_string(values.size()));
  std::sort(values.begin(), values.end());
  PercentileTable table;
  table.category = std::string(category);
  table.sample = values.size();
  const std::size_t n = values.size();
  for (int p : kPercentiles) {
    std::size_t nearest = (static_cast<std::size_t>(p) * n + 99) / 100;
    table.thresholds.emplace_back(p, values[std::max<std::size_t>(nearest, 1) - 1]);
  }
  return table;
}

struct Displacement {
  std::string article_id;
  std::size_t rank_i3 = 0;
  std::size_t rank_citations = 0;
  // rank_citations - rank_i3; positive when i3 places the article higher
  std::int64_t shift = 0;
};

struct MatthewSummary {
  std::vector<std::string> by_i3;
  std::vector<std::string> by_citations;
  std::vector<Displacement> displacements;  // in i3 order
  std::size_t promoted = 0;                 // articles with shift > 0
};

// Compares the i3 ranking against the raw citation-count ranking.
inline MatthewSummary matthew_comparison(std::span<const ScoreReport> reports) {
  std::vector<ScoreReport> ranked = rank({reports.begin(), reports.end()});
  MatthewSummary out;
  out.by_i3.resize(ranked.size());
  out.by_citations.resize(ranked.size());
  for (const auto& r : ranked) {
    out.by_i3[r.rank_i3 - 1] = r.article_id;
    out.by_citations[r.rank_citations - 1] = r.article_id;
    auto shift = static_cast<std::int64_t>(r.rank_citations) - static_cast<std::int64_t>(r.rank_i3);
    out.displacements.push_back({r.article_id, r.rank_i3, r.rank_citations, shift});
    if (shift > 0) ++out.promoted;
  }
  return out;
}

}  // namespace i3
