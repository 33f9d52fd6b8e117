#pragma once

#include <algorithm>
#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "i3/catalog.hpp"
#include "i3/csv.hpp"
#include "i3/errors.hpp"
#include "i3/metric.hpp"
#include "i3/parse.hpp"

namespace i3 {

struct ArticleRecord {
  std::string id;
  std::string journal;
  Date publication_date;
};

struct CitationEvent {
  std::string article_id;
  std::string citing_journal;
  Date date;
};

// Articles and their citation events. Citations are kept sorted by date per
// article; per-journal counts are always derived from the events.
class Ledger {
 public:
  // Articles in source order.
  const std::vector<ArticleRecord>& articles() const noexcept { return articles_; }

  bool contains(std::string_view id) const {
    return index_.find(std::string(id)) != index_.end();
  }

  const ArticleRecord& article(std::string_view id) const {
    return articles_[slot(id)];
  }

  std::span<const CitationEvent> citations(std::string_view id) const {
    return citations_[slot(id)];
  }

  std::size_t citation_count() const noexcept {
    std::size_t n = 0;
    for (const auto& c : citations_) n += c.size();
    return n;
  }

 private:
  friend Ledger load_ledger(std::istream&, std::istream&, std::string, std::string);

  std::size_t slot(std::string_view id) const {
    auto it = index_.find(std::string(id));
    if (it == index_.end()) throw LookupError("unknown article \"" + std::string(id) + "\"");
    return it->second;
  }

  std::vector<ArticleRecord> articles_;
  std::vector<std::vector<CitationEvent>> citations_;
  std::unordered_map<std::string, std::size_t> index_;
};

inline Ledger load_ledger(std::istream& articles, std::istream& citations,
                          std::string articles_source = "articles",
                          std::string citations_source = "citations") {
  Ledger ledger;
  {
    csv::Reader reader(articles, articles_source);
    reader.expect_header({"article_id", "journal", "publication_date"});
    while (auto rec = reader.next()) {
      auto& f = rec->fields;
      if (f.size() == 1 && csv::Reader::trim(f[0]).empty()) continue;
      if (f.size() != 3)
        throw LoadError(articles_source, rec->line,
                        "expected 3 fields, got " + std::to_string(f.size()));
      std::string id{csv::Reader::trim(f[0])};
      if (id.empty()) throw LoadError(articles_source, rec->line, "empty article_id");
      auto date = parse_date(csv::Reader::trim(f[2]));
      if (!date)
        throw LoadError(articles_source, rec->line, "malformed publication_date `" + f[2] + "`");
      if (!ledger.index_.emplace(id, ledger.articles_.size()).second)
        throw LoadError(articles_source, rec->line, "duplicate article_id \"" + id + "\"");
      ledger.articles_.push_back({id, std::string(csv::Reader::trim(f[1])), *date});
    }
  }
  ledger.citations_.resize(ledger.articles_.size());
  {
    csv::Reader reader(citations, citations_source);
    reader.expect_header({"article_id", "citing_journal", "citation_date"});
    while (auto rec = reader.next()) {
      auto& f = rec->fields;
      if (f.size() == 1 && csv::Reader::trim(f[0]).empty()) continue;
      if (f.size() != 3)
        throw LoadError(citations_source, rec->line,
                        "expected 3 fields, got " + std::to_string(f.size()));
      std::string id{csv::Reader::trim(f[0])};
      auto it = ledger.index_.find(id);
      if (it == ledger.index_.end())
        throw LoadError(citations_source, rec->line, "citation of unknown article \"" + id + "\"");
      auto date = parse_date(csv::Reader::trim(f[2]));
      if (!date)
        throw LoadError(citations_source, rec->line, "malformed citation_date `" + f[2] + "`");
      const ArticleRecord& art = ledger.articles_[it->second];
      if (*date < art.publication_date)
        throw LoadError(citations_source, rec->line,
                        "citation dated " + format_date(*date) + " precedes publication of \"" +
                            id + "\" on " + format_date(art.publication_date));
      ledger.citations_[it->second].push_back(
          {id, std::string(csv::Reader::trim(f[1])), *date});
    }
  }
  for (auto& list : ledger.citations_)
    std::stable_sort(list.begin(), list.end(),
                     [](const CitationEvent& a, const CitationEvent& b) { return a.date < b.date; });
  return ledger;
}

enum class IfMode { historical, current };

struct ScoringOptions {
  IfMode if_mode = IfMode::current;
  // Whole years since publication; citations after the shifted date are ignored.
  std::optional<int> as_of_years;
  // Impact factor used for citing journals missing from the catalog. Unset
  // means such journals are an error.
  std::optional<double> fallback_if;
};

struct FScoreBreakdown {
  FScore f{0.0};
  double publishing_if = 0.0;
  std::size_t citations = 0;  // qualifying citation events
};

inline FScoreBreakdown f_score_breakdown(const Ledger& ledger, const Catalog& catalog,
                                         std::string_view article_id,
                                         const ScoringOptions& opts = {}) {
  const ArticleRecord& art = ledger.article(article_id);
  if (opts.as_of_years && *opts.as_of_years < 0)
    throw DomainError("as-of years must be non-negative");
  if (opts.fallback_if && !(*opts.fallback_if >= 0.0))
    throw DomainError("fallback impact factor must be non-negative");

  const bool historical = opts.if_mode == IfMode::historical;
  const JournalRecord* publisher = catalog.find(art.journal);
  if (!publisher) throw ResolutionError({art.journal});

  std::optional<Date> cutoff;
  if (opts.as_of_years) cutoff = add_years(art.publication_date, *opts.as_of_years);

  // eta: qualifying events per (journal key, lookup year); year 0 in current mode
  std::map<std::pair<std::string, int>, std::size_t> eta;
  std::set<std::string> missing;
  std::size_t count = 0;
  for (const auto& c : ledger.citations(article_id)) {
    if (cutoff && c.date > *cutoff) break;
    ++count;
    std::string key = canonical_journal(c.citing_journal);
    if (!catalog.find(key) && !opts.fallback_if) {
      missing.insert(std::string(csv::Reader::trim(c.citing_journal)));
      continue;
    }
    ++eta[{std::move(key), historical ? year_of(c.date) : 0}];
  }
  if (!missing.empty()) throw ResolutionError({missing.begin(), missing.end()});

  auto lookup = [&](const std::string& key, int year) {
    if (!catalog.find(key)) return *opts.fallback_if;
    return historical ? catalog.impact_factor(key, year) : catalog.impact_factor(key);
  };

  FScoreBreakdown out;
  out.publishing_if = historical
                          ? catalog.impact_factor(publisher->name, year_of(art.publication_date))
                          : publisher->latest_if();
  double total = out.publishing_if;
  for (const auto& [k, n] : eta) total += static_cast<double>(n) * lookup(k.first, k.second);
  out.f = FScore{total};
  out.citations = count;
  return out;
}

// psi_a + sum over citing journals of (citation count x impact factor).
inline FScore f_score(const Ledger& ledger, const Catalog& catalog, std::string_view article_id,
                      const ScoringOptions& opts = {}) {
  return f_score_breakdown(ledger, catalog, article_id, opts).f;
}

struct TruncationCheck {
  bool holds = true;
  double truncated = 0.0;
  double full = 0.0;
  explicit operator bool() const noexcept { return holds; }
};

// Truncated score never exceeds the full-history score (current IFs).
inline TruncationCheck validate_truncation(const Ledger& ledger, const Catalog& catalog,
                                           std::string_view article_id, int years,
                                           std::optional<double> fallback_if = {}) {
  ScoringOptions full{IfMode::current, std::nullopt, fallback_if};
  ScoringOptions cut{IfMode::current, years, fallback_if};
  TruncationCheck check;
  check.truncated = f_score(ledger, catalog, article_id, cut).value();
  check.full = f_score(ledger, catalog, article_id, full).value();
  check.holds = check.truncated <= check.full;
  return check;
}

}  // namespace i3
