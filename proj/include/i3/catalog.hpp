#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "i3/csv.hpp"
#include "i3/errors.hpp"
#include "i3/metric.hpp"
#include "i3/parse.hpp"

namespace i3 {

// Trimmed, ASCII case-folded journal key. Journals join on this, never on ISSN.
inline std::string canonical_journal(std::string_view name) {
  std::string out{csv::Reader::trim(name)};
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

inline bool valid_issn(std::string_view s) {
  if (s.size() != 9 || s[4] != '-') return false;
  for (std::size_t i = 0; i < 9; ++i) {
    if (i == 4) continue;
    bool digit = s[i] >= '0' && s[i] <= '9';
    if (!digit && !(i == 8 && (s[i] == 'X' || s[i] == 'x'))) return false;
  }
  return true;
}

struct JournalRecord {
  std::string name;  // as first seen in the source
  std::optional<std::string> issn;
  std::string category;
  std::map<int, double> if_history;  // year -> impact factor

  double latest_if() const { return if_history.rbegin()->second; }

  bool operator==(const JournalRecord&) const = default;
};

struct CategorySummary {
  std::string category;
  std::int64_t phi = 0;
  double beta = 0.0;
  double mean_if = 0.0;  // mean of members' latest impact factors
};

struct CatalogStats {
  std::vector<CategorySummary> categories;  // sorted by name
  double mean_if = 0.0;   // over journals
  double mean_phi = 0.0;  // over categories
  std::size_t journal_count = 0;
};

// Journal catalog: journals keyed by canonical name, grouped by category.
// Immutable once loaded.
class Catalog {
 public:
  // Adds one (journal, year) observation. Returns an empty string on success
  // or a description of the conflict.
  std::string add(std::string_view category, std::string_view journal,
                  std::string_view issn, int year, double impact_factor) {
    std::string cat{csv::Reader::trim(category)};
    std::string key = canonical_journal(journal);
    if (cat.empty()) return "empty category";
    if (key.empty()) return "empty journal name";
    if (!(impact_factor >= 0.0)) return "impact factor must be non-negative";
    std::string_view issn_t = csv::Reader::trim(issn);
    if (!issn_t.empty() && !valid_issn(issn_t))
      return "malformed ISSN `" + std::string(issn_t) + "`";

    auto [it, inserted] = journals_.try_emplace(key);
    JournalRecord& rec = it->second;
    if (inserted) {
      rec.name = std::string(csv::Reader::trim(journal));
      rec.category = cat;
      categories_[cat].push_back(key);
    } else if (rec.category != cat) {
      return "journal \"" + rec.name + "\" listed under both \"" + rec.category +
             "\" and \"" + cat + "\"";
    }
    if (!issn_t.empty()) {
      if (rec.issn && *rec.issn != issn_t)
        return "conflicting ISSN for journal \"" + rec.name + "\"";
      rec.issn = std::string(issn_t);
    }
    auto [hit, fresh] = rec.if_history.try_emplace(year, impact_factor);
    if (!fresh && hit->second != impact_factor)
      return "conflicting impact factor for journal \"" + rec.name + "\" in " +
             std::to_string(year);
    return {};
  }

  bool empty() const noexcept { return journals_.empty(); }
  std::size_t size() const noexcept { return journals_.size(); }

  const std::map<std::string, JournalRecord>& journals() const noexcept { return journals_; }

  // category -> canonical keys of member journals, in insertion order
  const std::map<std::string, std::vector<std::string>>& categories() const noexcept {
    return categories_;
  }

  const JournalRecord* find(std::string_view journal) const {
    auto it = journals_.find(canonical_journal(journal));
    return it == journals_.end() ? nullptr : &it->second;
  }

  const JournalRecord& journal(std::string_view name) const {
    if (auto* rec = find(name)) return *rec;
    throw LookupError("unknown journal \"" + std::string(name) + "\"");
  }

  std::int64_t phi(std::string_view category) const {
    auto it = categories_.find(std::string(csv::Reader::trim(category)));
    if (it == categories_.end())
      throw LookupError("unknown category \"" + std::string(category) + "\"");
    return static_cast<std::int64_t>(it->second.size());
  }

  BetaCoefficient beta_for(std::string_view category) const {
    return compute_beta(phi(category));
  }

  // Impact factor for the latest history year <= `year`, or the latest
  // overall when no year is given.
  double impact_factor(std::string_view journal_name, std::optional<int> year = {}) const {
    const JournalRecord& rec = journal(journal_name);
    if (!year) return rec.latest_if();
    auto it = rec.if_history.upper_bound(*year);
    if (it == rec.if_history.begin())
      throw LookupError("no impact factor for \"" + rec.name + "\" in or before " +
                        std::to_string(*year) + "; earliest available year is " +
                        std::to_string(rec.if_history.begin()->first));
    return std::prev(it)->second;
  }

  bool operator==(const Catalog& other) const { return journals_ == other.journals_; }

 private:
  std::map<std::string, JournalRecord> journals_;
  std::map<std::string, std::vector<std::string>> categories_;
};

inline constexpr std::array<std::string_view, 5> kCatalogHeader = {
    "category", "journal", "issn", "year", "impact_factor"};

inline Catalog load_catalog(std::istream& in, std::string source = "catalog") {
  csv::Reader reader(in, source);
  reader.expect_header({kCatalogHeader.begin(), kCatalogHeader.end()});
  Catalog catalog;
  while (auto rec = reader.next()) {
    auto& f = rec->fields;
    if (f.size() == 1 && csv::Reader::trim(f[0]).empty()) continue;
    if (f.size() != kCatalogHeader.size())
      throw LoadError(source, rec->line,
                      "expected 5 fields, got " + std::to_string(f.size()));
    auto year = parse_year(csv::Reader::trim(f[3]));
    if (!year) throw LoadError(source, rec->line, "malformed year `" + f[3] + "`");
    auto impact = parse_number(csv::Reader::trim(f[4]));
    if (!impact) throw LoadError(source, rec->line, "malformed impact factor `" + f[4] + "`");
    if (*impact < 0.0) throw LoadError(source, rec->line, "negative impact factor");
    if (auto err = catalog.add(f[0], f[1], f[2], *year, *impact); !err.empty())
      throw LoadError(source, rec->line, err);
  }
  return catalog;
}

// Shortest decimal that reads back to the same double.
inline std::string round_trip_number(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

// Writes rows ordered by category, journal key, year.
inline void write_catalog(std::ostream& out, const Catalog& catalog) {
  csv::write_row(out, {kCatalogHeader.begin(), kCatalogHeader.end()});
  for (const auto& [category, keys] : catalog.categories()) {
    std::vector<std::string> sorted = keys;
    std::sort(sorted.begin(), sorted.end());
    for (const auto& key : sorted) {
      const JournalRecord& rec = catalog.journals().at(key);
      for (const auto& [year, impact] : rec.if_history)
        csv::write_row(out, {category, rec.name, rec.issn.value_or(""),
                             std::to_string(year), round_trip_number(impact)});
    }
  }
}

inline CatalogStats catalog_stats(const Catalog& catalog) {
  if (catalog.empty()) throw DomainError("catalog statistics need at least one journal");
  CatalogStats stats;
  double if_total = 0.0, phi_total = 0.0;
  for (const auto& [category, keys] : catalog.categories()) {
    CategorySummary s;
    s.category = category;
    s.phi = static_cast<std::int64_t>(keys.size());
    s.beta = compute_beta(s.phi).value();
    double sum = 0.0;
    for (const auto& key : keys) sum += catalog.journals().at(key).latest_if();
    s.mean_if = sum / static_cast<double>(keys.size());
    if_total += sum;
    phi_total += static_cast<double>(s.phi);
    stats.categories.push_back(std::move(s));
  }
  stats.journal_count = catalog.size();
  stats.mean_if = if_total / static_cast<double>(catalog.size());
  stats.mean_phi = phi_total / static_cast<double>(stats.categories.size());
  return stats;
}

}  // namespace i3
