#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "i3/csv.hpp"
#include "i3/errors.hpp"
#include "i3/parse.hpp"

namespace i3 {

struct GeneratorConfig {
  int articles = 100;
  int categories = 5;
  std::uint64_t seed = 0;
  int mean_phi = 12;       // expected journals per category
  double mean_if = 2.0;    // mean of latest impact factors, exact before rounding
  int first_year = 2000;   // impact-factor history span
  int last_year = 2024;
};

struct Corpus {
  std::string catalog_csv;
  std::string articles_csv;
  std::string citations_csv;
};

namespace detail {

// Draws built directly on mt19937_64 bits; the standard distributions are not
// reproducible across library implementations.
class CorpusRng {
 public:
  explicit CorpusRng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Open interval (0, 1).
  double uniform_open() {
    double u;
    do u = uniform(); while (u == 0.0);
    return u;
  }

  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(engine_() % span);
  }

  double normal() {
    double u1 = uniform_open(), u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.141592653589793 * u2);
  }

 private:
  std::mt19937_64 engine_;
};

inline char issn_check_digit(int body) {
  int sum = 0;
  for (int w = 2; w <= 8; ++w, body /= 10) sum += (body % 10) * w;
  int c = (11 - sum % 11) % 11;
  return c == 10 ? 'X' : static_cast<char>('0' + c);
}

inline std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

}  // namespace detail

// Synthetic catalog + ledger. Every citation resolves, no citation precedes its
// article, and every citation year has an impact-factor entry.
inline Corpus generate_corpus(const GeneratorConfig& cfg) {
  if (cfg.articles < 1 || cfg.categories < 1)
    throw DomainError("generator needs at least one article and one category");
  if (cfg.mean_phi < 1) throw DomainError("mean journals per category must be >= 1");
  if (cfg.last_year - cfg.first_year < 6) throw DomainError("year span too short");

  detail::CorpusRng rng(cfg.seed);
  using namespace std::chrono;

  struct Journal {
    std::string category, name, issn;
    std::vector<double> history;  // first_year..last_year
  };
  const int span = cfg.last_year - cfg.first_year + 1;
  std::vector<Journal> journals;
  int issn_seq = 1000000 + static_cast<int>(rng.between(0, 999999));
  for (int k = 0; k < cfg.categories; ++k) {
    char cat[32];
    std::snprintf(cat, sizeof cat, "Field %02d", k + 1);
    auto phi = rng.between(1, 2 * cfg.mean_phi - 1);
    for (std::int64_t j = 0; j < phi; ++j) {
      Journal jr;
      jr.category = cat;
      char name[64];
      std::snprintf(name, sizeof name, "Journal of %s Studies %lld", cat, static_cast<long long>(j + 1));
      jr.name = name;
      int body = issn_seq++ % 10000000;
      char issn[16];
      std::snprintf(issn, sizeof issn, "%04d-%03d%c", body / 1000, body % 1000,
                    detail::issn_check_digit(body));
      jr.issn = issn;
      jr.history.resize(static_cast<std::size_t>(span));
      double v = -std::log(rng.uniform_open()) + 0.05;
      for (int y = span - 1; y >= 0; --y) {
        jr.history[static_cast<std::size_t>(y)] = v;
        v *= std::exp(0.08 * rng.normal());
      }
      journals.push_back(std::move(jr));
    }
  }
  double latest_sum = 0.0;
  for (const auto& j : journals) latest_sum += j.history.back();
  const double scale = cfg.mean_if * static_cast<double>(journals.size()) / latest_sum;
  for (auto& j : journals)
    for (auto& v : j.history) v = std::max(0.001, v * scale);

  Corpus out;
  {
    std::ostringstream os;
    csv::write_row(os, {"category", "journal", "issn", "year", "impact_factor"});
    for (const auto& j : journals)
      for (int y = 0; y < span; ++y)
        csv::write_row(os, {j.category, j.name, j.issn, std::to_string(cfg.first_year + y),
                            detail::fixed(j.history[static_cast<std::size_t>(y)], 3)});
    out.catalog_csv = os.str();
  }

  // Citing journals are drawn in proportion to their latest impact factor.
  std::vector<double> cumulative;
  double acc = 0.0;
  for (const auto& j : journals) cumulative.push_back(acc += j.history.back());
  auto pick_citing = [&] {
    double u = rng.uniform() * acc;
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    return static_cast<std::size_t>(std::min<std::ptrdiff_t>(
        it - cumulative.begin(), static_cast<std::ptrdiff_t>(journals.size()) - 1));
  };

  const sys_days first_pub{year{cfg.first_year + 1} / January / 1};
  const sys_days last_pub{year{cfg.last_year - 4} / December / 31};
  const sys_days end{year{cfg.last_year} / December / 31};
  const int width = static_cast<int>(std::to_string(cfg.articles).size());

  std::ostringstream arts, cites;
  csv::write_row(arts, {"article_id", "journal", "publication_date"});
  csv::write_row(cites, {"article_id", "citing_journal", "citation_date"});
  for (int a = 0; a < cfg.articles; ++a) {
    char id[32];
    std::snprintf(id, sizeof id, "A%0*d", width, a + 1);
    const auto& publisher = journals[static_cast<std::size_t>(
        rng.between(0, static_cast<std::int64_t>(journals.size()) - 1))];
    sys_days pub = first_pub + days{rng.between(0, (last_pub - first_pub).count())};
    csv::write_row(arts, {id, publisher.name, format_date(year_month_day{pub})});

    // Heavy-tailed citation counts (Pareto, shape 1.6).
    double draw = 10.0 * (std::pow(rng.uniform_open(), -1.0 / 1.6) - 1.0);
    auto n = static_cast<std::int64_t>(std::min(draw, 3000.0));
    std::vector<std::pair<sys_days, std::size_t>> events;
    for (std::int64_t c = 0; c < n; ++c) {
      sys_days when = pub + days{rng.between(0, (end - pub).count())};
      events.emplace_back(when, pick_citing());
    }
    std::sort(events.begin(), events.end());
    for (const auto& [when, j] : events)
      csv::write_row(cites, {id, journals[j].name, format_date(year_month_day{when})});
  }
  out.articles_csv = arts.str();
  out.citations_csv = cites.str();
  return out;
}

inline constexpr const char* kCatalogFile = "catalog.csv";
inline constexpr const char* kArticlesFile = "articles.csv";
inline constexpr const char* kCitationsFile = "citations.csv";

inline void write_corpus(const Corpus& corpus, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  auto put = [&](const char* name, const std::string& body) {
    std::ofstream f(dir / name, std::ios::binary | std::ios::trunc);
    if (!f || !(f << body) || !f.flush())
      throw LoadError((dir / name).string(), 0, "cannot write file");
  };
  put(kCatalogFile, corpus.catalog_csv);
  put(kArticlesFile, corpus.articles_csv);
  put(kCitationsFile, corpus.citations_csv);
}

}  // namespace i3
