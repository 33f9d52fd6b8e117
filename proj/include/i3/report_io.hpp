#pragma once

#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "i3/catalog.hpp"
#include "i3/csv.hpp"
#include "i3/dynamics.hpp"
#include "i3/ranking.hpp"

namespace i3 {

enum class OutputFormat { csv, json };

// Scores print with six decimals, coefficients with nine significant digits.
inline std::string fmt_score(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

inline std::string fmt_coef(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

// JSON numbers carry the same precision as the CSV text.
inline double json_score(double v) { return std::stod(fmt_score(v)); }
inline double json_coef(double v) { return std::stod(fmt_coef(v)); }

inline constexpr const char* kUndefined = "undefined";

inline void write_scores(std::ostream& out, std::span<const ScoreReport> rows, OutputFormat fmt) {
  if (fmt == OutputFormat::json) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& r : rows)
      arr.push_back({{"article_id", r.article_id},
                     {"category", r.category},
                     {"phi", r.phi},
                     {"beta", json_coef(r.beta)},
                     {"f_score", json_score(r.f_score)},
                     {"i3", json_score(r.i3)},
                     {"citations", r.citations},
                     {"rank_i3", r.rank_i3},
                     {"rank_citations", r.rank_citations}});
    out << arr.dump(2) << '\n';
    return;
  }
  csv::write_row(out, {"article_id", "category", "phi", "beta", "f_score", "i3", "citations",
                       "rank_i3", "rank_citations"});
  for (const auto& r : rows)
    csv::write_row(out, {r.article_id, r.category, std::to_string(r.phi), fmt_coef(r.beta),
                         fmt_score(r.f_score), fmt_score(r.i3), std::to_string(r.citations),
                         std::to_string(r.rank_i3), std::to_string(r.rank_citations)});
}

inline nlohmann::ordered_json matthew_json(const MatthewSummary& m) {
  auto moves = nlohmann::ordered_json::array();
  for (const auto& d : m.displacements)
    moves.push_back({{"article_id", d.article_id},
                     {"rank_i3", d.rank_i3},
                     {"rank_citations", d.rank_citations},
                     {"shift", d.shift}});
  return {{"by_i3", m.by_i3},
          {"by_citations", m.by_citations},
          {"displacements", moves},
          {"promoted", m.promoted}};
}

// CSV form: a blank line, then a displacement table, then a `promoted` line.
inline void write_matthew_csv(std::ostream& out, const MatthewSummary& m) {
  out << '\n';
  csv::write_row(out, {"article_id", "rank_i3", "rank_citations", "shift"});
  for (const auto& d : m.displacements)
    csv::write_row(out, {d.article_id, std::to_string(d.rank_i3),
                         std::to_string(d.rank_citations), std::to_string(d.shift)});
  csv::write_row(out, {"promoted", std::to_string(m.promoted)});
}

inline void write_percentiles(std::ostream& out, const PercentileTable& t, OutputFormat fmt) {
  if (fmt == OutputFormat::json) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& [p, v] : t.thresholds) arr.push_back({{"percentile", p}, {"i3", json_score(v)}});
    out << nlohmann::ordered_json{{"category", t.category}, {"sample", t.sample}, {"thresholds", arr}}
               .dump(2)
        << '\n';
    return;
  }
  csv::write_row(out, {"category", "percentile", "i3"});
  for (const auto& [p, v] : t.thresholds)
    csv::write_row(out, {t.category, std::to_string(p), fmt_score(v)});
}

inline void write_dynamics(std::ostream& out, const DynamicsReport& r, OutputFormat fmt) {
  auto ratio_text = [](const std::optional<double>& v) { return v ? fmt_score(*v) : kUndefined; };
  if (fmt == OutputFormat::json) {
    auto ratio = [](const std::optional<double>& v) -> nlohmann::ordered_json {
      return v ? nlohmann::ordered_json(json_score(*v)) : nlohmann::ordered_json(nullptr);
    };
    auto series = nlohmann::ordered_json::array();
    for (const auto& row : r.series)
      series.push_back({{"t", row.years},
                        {"f_t", json_score(row.f_t)},
                        {"i3_t", json_score(row.i3_t)},
                        {"cr_simple", ratio(row.cr_simple)},
                        {"cr_integral", ratio(row.cr_integral)},
                        {"exceeds_one", row.exceeds_one}});
    nlohmann::ordered_json doc = {{"article_id", r.article_id},
                                  {"phi", r.beta.phi},
                                  {"beta", json_coef(r.beta.value())},
                                  {"f_full", json_score(r.f_full)},
                                  {"i3_full", json_score(r.i3_full)},
                                  {"auc_full", json_score(r.auc_full)},
                                  {"derivative_at_full", json_coef(r.derivative_at_full)},
                                  {"series", series}};
    out << doc.dump(2) << '\n';
    return;
  }
  csv::write_row(out, {"article_id", "beta", "t", "f_t", "i3_t", "cr_simple", "cr_integral",
                       "exceeds_one", "f_full", "i3_full", "auc_full", "derivative_at_full"});
  for (const auto& row : r.series)
    csv::write_row(out, {r.article_id, fmt_coef(r.beta.value()), std::to_string(row.years),
                         fmt_score(row.f_t), fmt_score(row.i3_t), ratio_text(row.cr_simple),
                         ratio_text(row.cr_integral), row.exceeds_one ? "1" : "0",
                         fmt_score(r.f_full), fmt_score(r.i3_full), fmt_score(r.auc_full),
                         fmt_coef(r.derivative_at_full)});
}

// One (f, i3) column pair per curve.
inline void write_curves(std::ostream& out, std::span<const double> betas,
                         std::span<const std::vector<CurvePoint>> curves) {
  std::vector<std::string> header;
  for (double b : betas) {
    header.push_back("f@" + fmt_coef(b));
    header.push_back("i3@" + fmt_coef(b));
  }
  csv::write_row(out, header);
  std::size_t rows = curves.empty() ? 0 : curves.front().size();
  for (std::size_t i = 0; i < rows; ++i) {
    std::vector<std::string> fields;
    for (const auto& c : curves) {
      fields.push_back(fmt_score(c[i].f));
      fields.push_back(fmt_score(c[i].i3));
    }
    csv::write_row(out, fields);
  }
}

inline void write_catalog_stats(std::ostream& out, const CatalogStats& s, OutputFormat fmt) {
  if (fmt == OutputFormat::json) {
    auto cats = nlohmann::ordered_json::array();
    for (const auto& c : s.categories)
      cats.push_back({{"category", c.category},
                      {"phi", c.phi},
                      {"beta", json_coef(c.beta)},
                      {"mean_if", json_score(c.mean_if)}});
    out << nlohmann::ordered_json{{"journals", s.journal_count},
                                  {"mean_if", json_score(s.mean_if)},
                                  {"mean_phi", json_score(s.mean_phi)},
                                  {"categories", cats}}
               .dump(2)
        << '\n';
    return;
  }
  csv::write_row(out, {"category", "phi", "beta", "mean_if"});
  for (const auto& c : s.categories)
    csv::write_row(out, {c.category, std::to_string(c.phi), fmt_coef(c.beta), fmt_score(c.mean_if)});
  csv::write_row(out, {"*", fmt_score(s.mean_phi), "", fmt_score(s.mean_if)});
}

}  // namespace i3
