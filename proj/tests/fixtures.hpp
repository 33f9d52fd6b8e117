#pragma once

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "i3/i3.hpp"

namespace fixtures {

inline i3::Catalog catalog_from(const std::string& body) {
  std::istringstream in("category,journal,issn,year,impact_factor\n" + body);
  return i3::load_catalog(in);
}

inline i3::Ledger ledger_from(const std::string& articles, const std::string& citations) {
  std::istringstream a("article_id,journal,publication_date\n" + articles);
  std::istringstream c("article_id,citing_journal,citation_date\n" + citations);
  return i3::load_ledger(a, c);
}

// `count` journals named "<prefix> N" in one category with a single IF entry.
inline std::string category_rows(const std::string& category, int count, double impact = 2.0,
                                 int year = 2015, const std::string& prefix = "") {
  std::ostringstream os;
  std::string stem = prefix.empty() ? category + " Journal" : prefix;
  for (int i = 1; i <= count; ++i)
    os << '"' << category << "\",\"" << stem << ' ' << i << "\",," << year << ',' << impact
       << '\n';
  return os.str();
}

struct RandomLedger {
  i3::Catalog catalog;
  i3::Ledger ledger;
  std::vector<std::string> ids;
};

// Small random corpus with strictly positive, time-varying impact factors.
inline RandomLedger random_ledger(std::mt19937_64& rng, int articles = 4) {
  std::uniform_int_distribution<int> journals_n(1, 6), cites_n(0, 25), day_n(0, 365 * 12),
      pick(0, 5);
  std::uniform_real_distribution<double> impact(0.1, 8.0);
  std::ostringstream cat;
  int nj = journals_n(rng);
  for (int j = 0; j < nj; ++j)
    for (int y = 2000; y <= 2030; ++y)
      cat << "Field,J" << j << ",," << y << ',' << impact(rng) << '\n';
  std::ostringstream arts, cites;
  std::vector<std::string> ids;
  using namespace std::chrono;
  for (int a = 0; a < articles; ++a) {
    std::string id = "R" + std::to_string(a);
    ids.push_back(id);
    sys_days pub = sys_days{2005y / January / 1} + days{day_n(rng) / 3};
    arts << id << ",J" << pick(rng) % nj << ',' << i3::format_date(year_month_day{pub}) << '\n';
    int n = cites_n(rng);
    for (int c = 0; c < n; ++c)
      cites << id << ",J" << pick(rng) % nj << ','
            << i3::format_date(year_month_day{pub + days{1 + day_n(rng)}}) << '\n';
  }
  return {catalog_from(cat.str()), ledger_from(arts.str(), cites.str()), ids};
}

struct CommandResult {
  int exit_code = -1;
  std::string out;
};

// Runs the CLI with stdout captured; stderr is discarded.
inline CommandResult run_cli(const std::string& args) {
  std::string cmd = std::string(I3_CLI_PATH) + " " + args + " 2>/dev/null";
  CommandResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::path(I3_TEST_TMP) / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline void write_file(const std::filesystem::path& p, const std::string& body) {
  std::ofstream(p, std::ios::binary) << body;
}

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace fixtures
