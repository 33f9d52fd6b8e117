// Command-line front end: i3 <subcommand> [options]
//
// Exit codes: 0 success, 1 input or validation error, 2 unresolved journals.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "i3/i3.hpp"

namespace {

namespace fs = std::filesystem;

struct RunConfig {
  std::string catalog_path;
  std::string articles_path;
  std::string citations_path;
  std::string format = "csv";
  std::string if_mode = "current";
  std::optional<double> fallback_if;

  i3::OutputFormat output_format() const {
    return format == "json" ? i3::OutputFormat::json : i3::OutputFormat::csv;
  }
  i3::IfMode mode() const {
    return if_mode == "historical" ? i3::IfMode::historical : i3::IfMode::current;
  }
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::ifstream open_input(const std::string& path, const char* flag) {
  if (path.empty()) throw UsageError(std::string("missing required ") + flag);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError(std::string("cannot read ") + flag + " file " + path);
  return in;
}

struct Inputs {
  i3::Catalog catalog;
  std::optional<i3::Ledger> ledger;
};

// Every path is checked before anything is parsed.
Inputs load_inputs(const RunConfig& cfg, bool need_ledger) {
  auto cat = open_input(cfg.catalog_path, "--catalog");
  std::optional<std::ifstream> arts, cites;
  if (need_ledger) {
    arts = open_input(cfg.articles_path, "--articles");
    cites = open_input(cfg.citations_path, "--citations");
  }
  Inputs in{i3::load_catalog(cat, cfg.catalog_path), std::nullopt};
  if (need_ledger) in.ledger = i3::load_ledger(*arts, *cites, cfg.articles_path, cfg.citations_path);
  return in;
}

i3::ScoringOptions scoring_options(const RunConfig& cfg, std::optional<int> as_of) {
  return {cfg.mode(), as_of, cfg.fallback_if};
}

std::vector<i3::ScoreReport> score_ids(const Inputs& in, const std::vector<std::string>& ids,
                                       const i3::ScoringOptions& opts) {
  std::vector<i3::ScoreReport> out;
  out.reserve(ids.size());
  for (const auto& id : ids) out.push_back(i3::score_article(*in.ledger, in.catalog, id, opts));
  return out;
}

std::vector<std::string> all_ids(const i3::Ledger& ledger) {
  std::vector<std::string> ids;
  for (const auto& a : ledger.articles()) ids.push_back(a.id);
  return ids;
}

// Ranks are computed over the scored set; rows keep the requested order.
void restore_order(std::vector<i3::ScoreReport>& ranked, const std::vector<std::string>& ids) {
  std::map<std::string, std::size_t> pos;
  for (std::size_t i = 0; i < ids.size(); ++i) pos.emplace(ids[i], i);
  std::stable_sort(ranked.begin(), ranked.end(), [&](const auto& a, const auto& b) {
    return pos.at(a.article_id) < pos.at(b.article_id);
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Individual Impact Index (i3) scoring"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  app.add_option("--catalog", cfg.catalog_path, "Journal catalog CSV");
  app.add_option("--articles", cfg.articles_path, "Articles CSV");
  app.add_option("--citations", cfg.citations_path, "Citations CSV");
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--if-mode", cfg.if_mode, "Impact factor lookup mode")
      ->check(CLI::IsMember({"historical", "current"}));
  app.add_option("--fallback-if", cfg.fallback_if,
                 "Impact factor for citing journals missing from the catalog")
      ->check(CLI::NonNegativeNumber);

  // score
  auto* score = app.add_subcommand("score", "Score articles");
  std::vector<std::string> score_ids_arg;
  bool score_all = false;
  std::optional<int> score_as_of;
  score->add_option("ids", score_ids_arg, "Article ids");
  score->add_flag("--all", score_all, "Score every article in the ledger");
  score->add_option("--as-of", score_as_of, "Whole years since publication")
      ->check(CLI::NonNegativeNumber);

  // rank
  auto* rank = app.add_subcommand("rank", "Rank all articles by i3");
  bool rank_matthew = false;
  std::optional<int> rank_as_of;
  std::string rank_percentiles;
  rank->add_flag("--matthew", rank_matthew, "Append the citation-count divergence summary");
  rank->add_option("--as-of", rank_as_of, "Whole years since publication")
      ->check(CLI::NonNegativeNumber);
  rank->add_option("--percentiles", rank_percentiles,
                   "Print the i3 percentile table for this category instead");

  // dynamics
  auto* dynamics = app.add_subcommand("dynamics", "Yearly i3 series and citation ratios");
  std::string dyn_id;
  std::vector<int> dyn_years{1, 5, 10};
  dynamics->add_option("article_id", dyn_id)->required();
  dynamics->add_option("--years", dyn_years, "Years since publication")->delimiter(',');

  // calibrate
  auto* calibrate = app.add_subcommand("calibrate", "Solve or compute beta");
  std::optional<double> cal_target, cal_fscore;
  std::optional<long long> cal_phi;
  auto* t_opt = calibrate->add_option("--target", cal_target, "Target i3 in (0,1)");
  auto* f_opt = calibrate->add_option("--fscore", cal_fscore, "Reference f-score");
  auto* p_opt = calibrate->add_option("--phi", cal_phi, "Category title count");
  t_opt->needs(f_opt)->excludes(p_opt);
  f_opt->needs(t_opt)->excludes(p_opt);

  // curves
  auto* curves = app.add_subcommand("curves", "Emit i3 curves for plotting");
  std::vector<double> curve_betas;
  double curve_max = 5000.0;
  int curve_samples = 101;
  curves->add_option("--beta", curve_betas, "Beta values")->required()->delimiter(',');
  curves->add_option("--max-f", curve_max, "Upper f bound");
  curves->add_option("--samples", curve_samples, "Samples per curve");

  // gen
  auto* gen = app.add_subcommand("gen", "Write a synthetic catalog/articles/citations triplet");
  i3::GeneratorConfig gen_cfg;
  std::string gen_out;
  gen->add_option("--articles", gen_cfg.articles, "Article count")->required();
  gen->add_option("--categories", gen_cfg.categories, "Category count")->required();
  gen->add_option("--seed", gen_cfg.seed, "RNG seed")->required();
  gen->add_option("--mean-phi", gen_cfg.mean_phi, "Expected journals per category");
  gen->add_option("--out", gen_out, "Output directory")->required();

  auto* stats = app.add_subcommand("catalog-stats", "Per-category title counts and coefficients");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  std::ostream& out = std::cout;
  try {
    const auto fmt = cfg.output_format();
    if (*score) {
      Inputs in = load_inputs(cfg, true);
      auto ids = score_all ? all_ids(*in.ledger) : score_ids_arg;
      auto ranked = i3::rank(score_ids(in, ids, scoring_options(cfg, score_as_of)));
      restore_order(ranked, ids);
      i3::write_scores(out, ranked, fmt);
    } else if (*rank) {
      Inputs in = load_inputs(cfg, true);
      auto ranked =
          i3::rank(score_ids(in, all_ids(*in.ledger), scoring_options(cfg, rank_as_of)));
      if (!rank_percentiles.empty()) {
        i3::write_percentiles(out, i3::percentile_table(ranked, rank_percentiles), fmt);
      } else if (fmt == i3::OutputFormat::json && rank_matthew) {
        std::ostringstream rows;
        i3::write_scores(rows, ranked, fmt);
        nlohmann::ordered_json doc = {{"ranking", nlohmann::ordered_json::parse(rows.str())},
                                      {"matthew", i3::matthew_json(i3::matthew_comparison(ranked))}};
        out << doc.dump(2) << '\n';
      } else {
        i3::write_scores(out, ranked, fmt);
        if (rank_matthew) i3::write_matthew_csv(out, i3::matthew_comparison(ranked));
      }
    } else if (*dynamics) {
      Inputs in = load_inputs(cfg, true);
      i3::write_dynamics(out, i3::dynamics_report(*in.ledger, in.catalog, dyn_id, dyn_years,
                                                  cfg.fallback_if),
                         fmt);
    } else if (*calibrate) {
      if (!cal_phi && !cal_target) throw UsageError("calibrate needs --target/--fscore or --phi");
      double beta = cal_phi ? i3::compute_beta(*cal_phi).value()
                            : i3::solve_beta(*cal_target, i3::FScore{*cal_fscore}).value();
      if (fmt == i3::OutputFormat::json) {
        nlohmann::ordered_json doc = {{"beta", i3::json_coef(beta)}};
        if (cal_phi) doc["phi"] = *cal_phi;
        out << doc.dump(2) << '\n';
      } else {
        out << i3::fmt_coef(beta) << '\n';
      }
    } else if (*curves) {
      std::vector<std::vector<i3::CurvePoint>> family;
      for (double b : curve_betas)
        family.push_back(i3::curve_points(i3::Beta{b}, curve_max, curve_samples));
      i3::write_curves(out, curve_betas, family);
    } else if (*gen) {
      i3::write_corpus(i3::generate_corpus(gen_cfg), gen_out);
    } else if (*stats) {
      Inputs in = load_inputs(cfg, false);
      i3::write_catalog_stats(out, i3::catalog_stats(in.catalog), fmt);
    }
  } catch (const i3::ResolutionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  out.flush();
  return 0;
}
