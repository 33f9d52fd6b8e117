#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "i3/catalog.hpp"
#include "i3/ledger.hpp"
#include "i3/metric.hpp"

namespace i3 {

struct DynamicsRow {
  int years = 0;
  double f_t = 0.0;
  double i3_t = 0.0;
  // Unset when the full-history i3 is zero and the ratios are undefined.
  std::optional<double> cr_simple;
  std::optional<double> cr_integral;
  // Historical numerator IFs above today's can push a ratio past one.
  bool exceeds_one = false;
};

struct DynamicsReport {
  std::string article_id;
  BetaCoefficient beta{Beta{kLambda}, 1};
  double f_full = 0.0;
  double i3_full = 0.0;
  std::vector<DynamicsRow> series;
  double auc_full = 0.0;
  double derivative_at_full = 0.0;
};

// Yearly i3 series for one article. Truncated scores use the impact factor in
// force at each citation's year; the full-history denominator uses current
// impact factors. f_t is the citation mass accrued by year t, and the integral
// ratio integrates the curve up to that mass.
inline DynamicsReport dynamics_report(const Ledger& ledger, const Catalog& catalog,
                                      std::string_view article_id, std::span<const int> years,
                                      std::optional<double> fallback_if = {}) {
  if (years.empty()) throw DomainError("dynamics needs at least one year");
  for (std::size_t i = 0; i < years.size(); ++i) {
    if (years[i] < 1) throw DomainError("dynamics years must be positive");
    if (i && years[i] <= years[i - 1])
      throw DomainError("dynamics years must be strictly ascending");
  }
  const ArticleRecord& art = ledger.article(article_id);
  const JournalRecord* publisher = catalog.find(art.journal);
  if (!publisher) throw ResolutionError({art.journal});

  DynamicsReport report;
  report.article_id = art.id;
  report.beta = catalog.beta_for(publisher->category);
  const Beta beta = report.beta.beta;

  const FScore full = f_score(ledger, catalog, article_id, {IfMode::current, {}, fallback_if});
  const I3Score i3_full = compute_i3(full, beta);
  report.f_full = full.value();
  report.i3_full = i3_full.value();
  report.auc_full = i3_auc(full, beta);
  report.derivative_at_full = i3_derivative(full, beta);

  for (int t : years) {
    FScore f_t = f_score(ledger, catalog, article_id, {IfMode::historical, t, fallback_if});
    I3Score i3_t = compute_i3(f_t, beta);
    DynamicsRow row;
    row.years = t;
    row.f_t = f_t.value();
    row.i3_t = i3_t.value();
    if (i3_full.value() > 0.0) {
      row.cr_simple = cr_simple(i3_t, i3_full);
      row.cr_integral = auc_ratio(f_t, full, beta);
      row.exceeds_one = *row.cr_simple > 1.0 || *row.cr_integral > 1.0;
    }
    report.series.push_back(row);
  }
  return report;
}

struct AucInput {
  FScore f;
  Beta beta;
};

enum class AucOrdering { a_greater, b_greater, equal };

struct AucComparison {
  double auc_a = 0.0;
  double auc_b = 0.0;
  double difference = 0.0;  // auc_b - auc_a
  AucOrdering ordering = AucOrdering::equal;
};

inline AucComparison compare_auc(const AucInput& a, const AucInput& b) {
  AucComparison out;
  out.auc_a = i3_auc(a.f, a.beta);
  out.auc_b = i3_auc(b.f, b.beta);
  out.difference = out.auc_b - out.auc_a;
  out.ordering = out.auc_a > out.auc_b   ? AucOrdering::a_greater
                 : out.auc_b > out.auc_a ? AucOrdering::b_greater
                                         : AucOrdering::equal;
  return out;
}

inline std::string_view to_string(AucOrdering o) {
  switch (o) {
    case AucOrdering::a_greater: return "a";
    case AucOrdering::b_greater: return "b";
    case AucOrdering::equal: break;
  }
  return "equal";
}

struct CurvePoint {
  double f = 0.0;
  double i3 = 0.0;
};

// n evenly spaced samples of i3 on [0, f_max], endpoints included.
inline std::vector<CurvePoint> curve_points(Beta beta, double f_max, int n) {
  if (n < 2) throw DomainError("curve needs at least two samples");
  if (!(f_max > 0.0) || !std::isfinite(f_max)) throw DomainError("curve f_max must be positive");
  std::vector<CurvePoint> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double f = i == n - 1 ? f_max : f_max * static_cast<double>(i) / (n - 1);
    out.push_back({f, compute_i3(FScore{f}, beta).value()});
  }
  return out;
}

}  // namespace i3
