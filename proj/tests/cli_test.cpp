#include <gtest/gtest.h>

#include <sstream>

#include <nlohmann/json.hpp>

#include "fixtures.hpp"

using fixtures::read_file;
using fixtures::run_cli;
using fixtures::scratch_dir;
using fixtures::write_file;
namespace fs = std::filesystem;

namespace {

struct Paths {
  fs::path dir;
  std::string flags;
};

Paths corpus(const std::string& name, const std::string& catalog, const std::string& articles,
             const std::string& citations) {
  Paths p{scratch_dir(name), {}};
  write_file(p.dir / "catalog.csv", "category,journal,issn,year,impact_factor\n" + catalog);
  write_file(p.dir / "articles.csv", "article_id,journal,publication_date\n" + articles);
  write_file(p.dir / "citations.csv", "article_id,citing_journal,citation_date\n" + citations);
  p.flags = "--catalog " + (p.dir / "catalog.csv").string() + " --articles " +
            (p.dir / "articles.csv").string() + " --citations " +
            (p.dir / "citations.csv").string();
  return p;
}

std::vector<std::vector<std::string>> rows(const std::string& text) {
  std::vector<std::vector<std::string>> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> fields;
    std::istringstream ls(line);
    std::string f;
    while (std::getline(ls, f, ',')) fields.push_back(f);
    out.push_back(fields);
  }
  return out;
}

double column(const std::string& text, std::size_t row, const std::string& name) {
  auto table = rows(text);
  auto& header = table.at(0);
  auto idx = std::find(header.begin(), header.end(), name) - header.begin();
  return std::stod(table.at(row).at(static_cast<std::size_t>(idx)));
}

}  // namespace

TEST(CliScore, CalibratedArticle) {
  // 92 titles, one publishing journal of IF 0, 20 citations of IF 100: f = 2000.
  std::ostringstream cites;
  for (int i = 0; i < 20; ++i) cites << "A1,Heavy,2016-01-01\n";
  auto p = corpus("score_calibrated",
                  fixtures::category_rows("Mid", 92, 0.0, 2000) + "Other,Heavy,,2000,100\n",
                  "A1,Mid Journal 1,2015-01-01\n", cites.str());
  auto r = run_cli(p.flags + " score A1");
  ASSERT_EQ(r.exit_code, 0);
  double beta = i3::compute_beta(92).value();
  EXPECT_NEAR(column(r.out, 1, "f_score"), 2000.0, 1e-9);
  EXPECT_NEAR(column(r.out, 1, "i3"), 1 - std::exp(-beta * 2000), 1e-6);
  EXPECT_NEAR(column(r.out, 1, "i3"), 0.90, 1e-3);
}

TEST(CliScore, UncitedArticle) {
  auto p = corpus("score_uncited", fixtures::category_rows("C", 106, 2.0, 2000),
                  "A1,C Journal 3,2015-01-01\n", "");
  auto r = run_cli(p.flags + " score A1");
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_NEAR(column(r.out, 1, "i3"), 1 - std::exp(-i3::compute_beta(106).value() * 2.0), 1e-6);
  EXPECT_NEAR(column(r.out, 1, "i3"), 0.001998, 1e-5);
  EXPECT_NE(r.out.find(",0.00100097448,"), std::string::npos);  // beta at 9 significant digits
}

TEST(CliScore, EmptyArticleList) {
  auto p = corpus("score_empty", "C,J,,2000,1\n", "", "");
  auto all = run_cli(p.flags + " score --all");
  EXPECT_EQ(all.exit_code, 0);
  EXPECT_EQ(all.out, "article_id,category,phi,beta,f_score,i3,citations,rank_i3,rank_citations\n");
  auto none = run_cli(p.flags + " score");
  EXPECT_EQ(none.exit_code, 0);
  EXPECT_EQ(none.out, all.out);
}

TEST(CliScore, ExitCodes) {
  auto bad = corpus("score_bad", "C,J,,20x0,1\n", "A1,J,2015-01-01\n", "");
  EXPECT_EQ(run_cli(bad.flags + " score --all").exit_code, 1);

  auto unresolved = corpus("score_unresolved", "C,J,,2000,1\n", "A1,J,2015-01-01\n",
                           "A1,Ghost,2016-01-01\n");
  EXPECT_EQ(run_cli(unresolved.flags + " score --all").exit_code, 2);
  auto fallback = run_cli(unresolved.flags + " --fallback-if 0.5 score --all");
  ASSERT_EQ(fallback.exit_code, 0);
  EXPECT_NEAR(column(fallback.out, 1, "f_score"), 1.5, 1e-9);

  EXPECT_EQ(run_cli(unresolved.flags + " score NOPE").exit_code, 1);
  EXPECT_EQ(run_cli("--catalog /nonexistent/catalog.csv catalog-stats").exit_code, 1);
  EXPECT_EQ(run_cli(bad.flags + " --format xml score --all").exit_code, 1);
}

TEST(CliScore, AsOfAndJson) {
  auto p = corpus("score_asof", "C,Home,,2000,1\nC,Cite,,2000,3\n", "A1,Home,2010-01-01\n",
                  "A1,Cite,2010-06-01\nA1,Cite,2015-06-01\n");
  EXPECT_NEAR(column(run_cli(p.flags + " score A1 --as-of 1").out, 1, "f_score"), 4.0, 1e-9);
  auto r = run_cli(p.flags + " --format json score --all");
  ASSERT_EQ(r.exit_code, 0);
  auto doc = nlohmann::json::parse(r.out);
  ASSERT_EQ(doc.size(), 1u);
  EXPECT_EQ(doc[0]["article_id"], "A1");
  EXPECT_DOUBLE_EQ(doc[0]["f_score"].get<double>(), 7.0);
  EXPECT_EQ(doc[0]["citations"], 2);
}

TEST(CliRank, OrderFollowsScore) {
  auto p = corpus("rank_three", "C,Home,,2000,1\nC,Cite,,2000,2\n",
                  "low,Home,2010-01-01\nhigh,Home,2010-01-01\nmid,Home,2010-01-01\n",
                  "high,Cite,2011-01-01\nhigh,Cite,2011-01-01\nhigh,Cite,2011-01-01\n"
                  "mid,Cite,2011-01-01\n");
  auto r = run_cli(p.flags + " rank");
  ASSERT_EQ(r.exit_code, 0);
  auto t = rows(r.out);
  ASSERT_EQ(t.size(), 4u);
  EXPECT_EQ(t[1][0], "high");
  EXPECT_EQ(t[2][0], "mid");
  EXPECT_EQ(t[3][0], "low");
}

TEST(CliRank, MixedCategoriesGolden) {
  auto p = corpus("rank_mixed", "Small,S,,2000,1\nBig,B1,,2000,1\nBig,B2,,2000,1\nBig,B3,,2000,1\n",
                  "s1,S,2010-01-01\nb1,B2,2010-01-01\n", "b1,B1,2011-01-01\nb1,B3,2012-01-01\n");
  // Equal i3 (beta*f is the same); the wider area of the larger category wins.
  auto r = run_cli(p.flags + " rank");
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.out,
            "article_id,category,phi,beta,f_score,i3,citations,rank_i3,rank_citations\n"
            "b1,Big,3,0.0353677651,3.000000,0.100668,2,1,1\n"
            "s1,Small,1,0.106103295,1.000000,0.100668,0,2,2\n");
}

TEST(CliRank, MatthewSummaryAppended) {
  std::ostringstream cites;
  for (int i = 0; i < 2; ++i) cites << "Few,Elite,2012-01-01\n";
  for (int i = 0; i < 20; ++i) cites << "Many,Obscure,2012-01-01\n";
  auto p = corpus("rank_matthew", "F,Home,,2000,1\nF,Elite,,2000,50\nF,Obscure,,2000,0.01\n",
                  "Few,Home,2010-01-01\nMany,Home,2010-01-01\n", cites.str());
  auto plain = run_cli(p.flags + " rank");
  auto r = run_cli(p.flags + " rank --matthew");
  ASSERT_EQ(r.exit_code, 0);
  ASSERT_EQ(r.out.rfind(plain.out, 0), 0u);
  EXPECT_EQ(r.out.substr(plain.out.size()),
            "\narticle_id,rank_i3,rank_citations,shift\nFew,1,2,1\nMany,2,1,-1\npromoted,1\n");
  auto j = nlohmann::json::parse(run_cli(p.flags + " --format json rank --matthew").out);
  EXPECT_EQ(j["matthew"]["promoted"], 1);
  EXPECT_EQ(j["ranking"][0]["article_id"], "Few");
}

TEST(CliRank, Percentiles) {
  std::string arts;
  for (int i = 0; i < 20; ++i) arts += "P" + std::to_string(i) + ",J,2010-01-01\n";
  auto p = corpus("rank_pct", "C,J,,2000,2\n", arts, "");
  auto r = run_cli(p.flags + " rank --percentiles C");
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_EQ(rows(r.out).size(), 6u);
  EXPECT_EQ(run_cli(p.flags + " rank --percentiles Missing").exit_code, 1);
}

TEST(CliDynamics, ConcentratedAndUndefined) {
  auto p = corpus("dyn", "C,Home,,2000,2\nC,Cite,,2000,3\nZ,Zero,,2000,0\n",
                  "A1,Home,2010-03-01\nA0,Zero,2010-03-01\n",
                  "A1,Cite,2010-05-01\nA1,Cite,2010-09-01\n");
  auto r = run_cli(p.flags + " dynamics A1 --years 1,5,10");
  ASSERT_EQ(r.exit_code, 0);
  auto t = rows(r.out);
  ASSERT_EQ(t.size(), 4u);
  for (std::size_t i = 1; i < 4; ++i) {
    EXPECT_EQ(column(r.out, i, "cr_simple"), 1.0);
    EXPECT_EQ(column(r.out, i, "cr_integral"), 1.0);
    EXPECT_EQ(column(r.out, i, "f_t"), 8.0);
  }
  auto zero = run_cli(p.flags + " dynamics A0");
  ASSERT_EQ(zero.exit_code, 0);
  EXPECT_NE(zero.out.find(",undefined,undefined,"), std::string::npos);
  auto js = nlohmann::json::parse(run_cli(p.flags + " --format json dynamics A0").out);
  EXPECT_TRUE(js["series"][0]["cr_simple"].is_null());
  EXPECT_EQ(run_cli(p.flags + " dynamics A1 --years 5,1").exit_code, 1);
}

TEST(CliDynamics, UniformFlowAndHalfMass) {
  std::ostringstream flow;
  for (int year = 0; year < 10; ++year)
    for (int i = 0; i < 10; ++i) flow << "U,Big," << 2010 + year << "-03-0" << 1 + i % 9 << '\n';
  for (int i = 0; i < 10; ++i) flow << "H,Heavy,2015-02-01\n";
  for (int i = 0; i < 10; ++i) flow << "H,Heavy,2019-02-01\n";
  auto p = corpus("dyn_flow",
                  "Solo,Home,,2000,0\nOther,Big,,2000,10\nOther,Heavy,,2000,100\n" +
                      fixtures::category_rows("Mid", 92, 0.0, 2000),
                  "U,Home,2010-01-01\nH,Mid Journal 1,2015-01-15\n", flow.str());
  auto u = run_cli(p.flags + " dynamics U --years 5,10");
  ASSERT_EQ(u.exit_code, 0);
  EXPECT_NEAR(column(u.out, 1, "cr_integral"), 0.5, 0.01);
  auto h = run_cli(p.flags + " dynamics H --years 1,10");
  ASSERT_EQ(h.exit_code, 0);
  double beta = i3::compute_beta(92).value();
  double simple = std::expm1(-beta * 1000) / std::expm1(-beta * 2000);
  EXPECT_NEAR(column(h.out, 1, "f_t"), 1000.0, 1e-9);
  EXPECT_NEAR(column(h.out, 1, "cr_simple"), simple, 1e-6);
  EXPECT_NEAR(column(h.out, 1, "cr_integral"), 0.33332, 2e-3);
}

TEST(CliCalibrate, Modes) {
  auto t = run_cli("calibrate --target 0.90 --fscore 2000");
  ASSERT_EQ(t.exit_code, 0);
  EXPECT_EQ(t.out, "0.00115129255\n");
  EXPECT_NEAR(std::stod(run_cli("calibrate --phi 61").out), 0.00173940, 1e-8);
  EXPECT_EQ(run_cli("calibrate --phi 1").out, "0.106103295\n");
  EXPECT_EQ(run_cli("calibrate --phi 0").exit_code, 1);
  EXPECT_EQ(run_cli("calibrate --phi 3 --target 0.5 --fscore 10").exit_code, 1);
  EXPECT_EQ(run_cli("calibrate --target 0.5").exit_code, 1);
  EXPECT_EQ(run_cli("calibrate").exit_code, 1);
}

TEST(CliCurves, Endpoints) {
  auto r = run_cli("curves --beta 0.00115129,0.0024 --max-f 5000 --samples 2");
  ASSERT_EQ(r.exit_code, 0);
  auto t = rows(r.out);
  ASSERT_EQ(t.size(), 3u);
  EXPECT_EQ(t[0], (std::vector<std::string>{"f@0.00115129", "i3@0.00115129", "f@0.0024", "i3@0.0024"}));
  EXPECT_EQ(t[1], (std::vector<std::string>{"0.000000", "0.000000", "0.000000", "0.000000"}));
  EXPECT_NEAR(std::stod(t[2][1]), 0.99684, 1e-4);
  EXPECT_EQ(run_cli("curves --beta 0.001 --samples 1").exit_code, 1);
}

TEST(CliGen, DeterministicAndLoadable) {
  auto a = scratch_dir("gen_a"), b = scratch_dir("gen_b");
  ASSERT_EQ(run_cli("gen --articles 100 --categories 5 --seed 42 --out " + a.string()).exit_code, 0);
  ASSERT_EQ(run_cli("gen --articles 100 --categories 5 --seed 42 --out " + b.string()).exit_code, 0);
  for (const char* f : {"catalog.csv", "articles.csv", "citations.csv"})
    EXPECT_EQ(read_file(a / f), read_file(b / f)) << f;
  std::string flags = "--catalog " + (a / "catalog.csv").string() + " --articles " +
                      (a / "articles.csv").string() + " --citations " + (a / "citations.csv").string();
  auto stats = run_cli(flags + " catalog-stats");
  ASSERT_EQ(stats.exit_code, 0);
  EXPECT_EQ(rows(stats.out).size(), 7u);
  auto summary = rows(stats.out).back();
  EXPECT_NEAR(std::stod(summary.at(3)), 2.0, 0.1);
  EXPECT_EQ(run_cli(flags + " --if-mode historical score --all").exit_code, 0);
  EXPECT_EQ(run_cli("gen --articles 5 --categories 1 --seed 1 --out /proc/forbidden").exit_code, 1);
  EXPECT_NE(run_cli("gen --articles 5 --categories 1 --out " + a.string()).exit_code, 0);
}

TEST(CliGen, ScoreAllSortedEqualsRank) {
  auto dir = scratch_dir("gen_rank");
  ASSERT_EQ(run_cli("gen --articles 300 --categories 4 --seed 9 --out " + dir.string()).exit_code, 0);
  std::string flags = "--catalog " + (dir / "catalog.csv").string() + " --articles " +
                      (dir / "articles.csv").string() + " --citations " +
                      (dir / "citations.csv").string();
  auto score = run_cli(flags + " score --all");
  auto ranked = run_cli(flags + " rank");
  ASSERT_EQ(score.exit_code, 0);
  ASSERT_EQ(ranked.exit_code, 0);
  std::istringstream in(score.out);
  std::string header, line;
  std::getline(in, header);
  std::vector<std::pair<int, std::string>> lines;
  while (std::getline(in, line)) {
    auto pos = line.rfind(',');
    auto prev = line.rfind(',', pos - 1);
    lines.emplace_back(std::stoi(line.substr(prev + 1, pos - prev - 1)), line);
  }
  std::sort(lines.begin(), lines.end());
  std::string sorted = header + "\n";
  for (const auto& [rank, l] : lines) sorted += l + "\n";
  EXPECT_EQ(sorted, ranked.out);
}
