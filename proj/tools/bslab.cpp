#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bslab/acceptance.hpp"
#include "bslab/config.hpp"
#include "bslab/errors.hpp"
#include "bslab/euclid.hpp"
#include "bslab/octagon.hpp"
#include "bslab/report.hpp"
#include "bslab/schreier.hpp"
#include "bslab/zcover.hpp"

namespace {

using namespace bslab;
using nlohmann::json;

std::string resolve_out(const ParsedConfig& cfg, const std::string& flag_out) {
  if (!flag_out.empty()) return flag_out;
  if (!cfg.out_dir.empty()) return cfg.out_dir;
  return "out";
}

// ---------------------------------------------------------------- euclid ---

int run_euclid(const ParsedConfig& pc, const std::string& out_dir, int threads) {
  const EuclidConfig& cfg = *pc.euclid;
  ReportTable t;
  t.module = "euclid";
  t.config_hash = pc.hash;
  t.meta["family"] = cfg.family_kind;
  t.meta["tail_tol"] = fmt_double(cfg.tail_tol);

  t.columns = {"n", "covol", "systole"};
  auto suffixed = [](const std::string& base, size_t i, size_t total) {
    return total == 1 ? base : base + std::to_string(i + 1);
  };
  for (size_t i = 0; i < cfg.radii.size(); ++i)
    t.columns.push_back(suffixed("count_R", i, cfg.radii.size()));
  for (size_t i = 0; i < cfg.functions.size(); ++i)
    t.columns.push_back(suffixed("defect_f", i, cfg.functions.size()));
  t.columns.insert(t.columns.end(),
                   {"poisson_resid", "module", "tail_tol", "saturated", "error"});

  bool budget_hit = false;
  for (long long n = cfg.n_begin; n <= cfg.n_end; ++n) {
    std::vector<std::string> row;
    try {
      ScanResult res = scan_family(cfg.family, cfg.functions, cfg.radii, n, n,
                                   cfg.tail_tol, threads);
      const ScanRow& r = res.rows.at(0);
      row = {std::to_string(r.n), rat_to_string(r.covol), fmt_double(r.systole)};
      for (long long c : r.counts) row.push_back(std::to_string(c));
      for (const Rat& d : r.defects) row.push_back(rat_to_string(d));
      row.push_back(fmt_double(r.poisson_resid));
      row.insert(row.end(), {"euclid", fmt_double(cfg.tail_tol), "true", ""});
    } catch (const BudgetExceeded& e) {
      budget_hit = true;
      row.assign(t.columns.size(), "");
      row[0] = std::to_string(n);
      row[t.columns.size() - 4] = "euclid";
      row[t.columns.size() - 3] = fmt_double(cfg.tail_tol);
      row[t.columns.size() - 2] = "false";
      row[t.columns.size() - 1] = e.what();
    }
    t.add_row(std::move(row));
  }
  write_report_files(t, out_dir, "euclid_scan");
  std::printf("euclid scan: %zu rows -> %s/euclid_scan.{csv,json}\n", t.rows.size(),
              out_dir.c_str());
  return budget_hit ? 3 : 0;
}

// -------------------------------------------------------------- schreier ---

int run_schreier(const ParsedConfig& pc, const std::string& out_dir) {
  const SchreierConfig& cfg = *pc.schreier;
  SchreierScan scan =
      scan_relative(cfg.scheme, cfg.n_begin, cfg.n_end, cfg.r_list, cfg.ball_budget);

  ReportTable t;
  t.module = "schreier";
  t.config_hash = pc.hash;
  t.meta["group"] = scan.group_desc;
  t.meta["scheme"] = scan.scheme_desc;
  t.meta["ball_budget"] = std::to_string(cfg.ball_budget);
  t.columns = {"n",     "r",      "count_sum",   "sign_sum", "bound",
               "index", "module", "ball_budget", "saturated"};
  for (const SchreierRow& r : scan.rows)
    t.add_row({std::to_string(r.n), std::to_string(r.r), rat_to_string(r.count_sum),
               rat_to_string(r.sign_sum), std::to_string(r.bound),
               std::to_string(r.index), "schreier", std::to_string(cfg.ball_budget),
               "true"});
  write_report_files(t, out_dir, "schreier_scan");
  std::printf("schreier scan: %zu rows -> %s/schreier_scan.{csv,json}\n", t.rows.size(),
              out_dir.c_str());
  return 0;
}

// ------------------------------------------------------------ hyperbolic ---

int run_hyp(const ParsedConfig& pc, const std::string& task, const std::string& out_dir,
            long long seed_override) {
  HypConfig cfg = *pc.hyp;
  cfg.task = task;
  if (seed_override >= 0) cfg.seed = static_cast<unsigned long long>(seed_override);

  OctagonGroup g = OctagonGroup::build();
  GroupBall ball = group_ball(g, cfg.cutoff, cfg.margin, cfg.ball_budget);

  std::vector<ChiCondition> conds;
  std::vector<long long> labels;
  for (long long n : cfg.covers) {
    conds.push_back({n, false});
    labels.push_back(n);
  }
  if (cfg.include_kernel) {
    conds.push_back({1, true});
    labels.push_back(0);  // row label for the limit subgroup
  }

  ReportTable t;
  t.module = "hyperbolic";
  t.config_hash = pc.hash;
  t.meta["task"] = cfg.task;
  t.meta["samples"] = std::to_string(cfg.samples);
  t.meta["seed"] = std::to_string(cfg.seed);
  t.meta["ball_elements"] = std::to_string(ball.elements.size());
  t.columns = {"n",         "R",      "estimate", "ci",   "cutoff",
               "saturated", "module", "budget",   "samples", "seed"};

  for (size_t ci = 0; ci < conds.size(); ++ci) {
    for (double R : cfg.radii) {
      double estimate = 0, halfwidth = 0;
      bool saturated = false;
      if (cfg.task == "bsprob") {
        BsEstimate e = mc_bs_probability(g, ball, conds[ci], R, cfg.samples, cfg.seed);
        estimate = e.estimate;
        halfwidth = e.ci_halfwidth;
        saturated = e.saturated;
      } else {
        McEquivalence e =
            mc_equivalence(g, ball, conds[ci], R, cfg.samples, cfg.seed, cfg.band);
        if (cfg.task == "injrad") {
          estimate = e.prob_a;  // fraction of area with inj_rad <= R
          halfwidth = e.ci_a;
        } else {  // equiv: agreement fraction; ci column = indeterminate fraction
          estimate = e.agree_fraction;
          halfwidth = e.indet_fraction;
        }
        saturated = e.saturated;
      }
      t.add_row({std::to_string(labels[ci]), fmt_double(R), fmt_double(estimate),
                 fmt_double(halfwidth), fmt_double(ball.cutoff), fmt_bool(saturated),
                 "hyperbolic", std::to_string(cfg.ball_budget),
                 std::to_string(cfg.samples), std::to_string(cfg.seed)});
    }
  }
  write_report_files(t, out_dir, "hyp_" + cfg.task);
  std::printf("hyp %s: %zu rows -> %s/hyp_%s.{csv,json}\n", cfg.task.c_str(), t.rows.size(),
              out_dir.c_str(), cfg.task.c_str());
  return 0;
}

// ---------------------------------------------------------------- zcover ---

int run_zcover(const ParsedConfig& pc, const std::string& out_dir) {
  const ZCoverConfig& cfg = *pc.zcover;

  json doc;
  doc["module"] = "zcover";
  doc["version"] = kBslabVersion;
  doc["config_hash"] = pc.hash;
  doc["functions"] = json::array();

  ReportTable t;  // plot-ready long format of the defect columns
  t.module = "zcover";
  t.config_hash = pc.hash;
  t.columns = {"f",      "n",      "defect", "degree", "zero_from",
               "l2_trace", "module", "budget", "saturated"};

  for (size_t fi = 0; fi < cfg.functions.size(); ++fi) {
    const TestFunction& f = cfg.functions[fi];
    TwistedTrace tw = twisted_geometric(cfg.scheme, f, cfg.budget);
    long long m = cfg.quadrature_m > 0 ? cfg.quadrature_m : 2 * tw.degree + 1;

    DefectReport def = kernel_defect_check(cfg.scheme, f, cfg.n_list);
    QuadratureReport quad = circle_quadrature_check(cfg.scheme, f, m);
    MeasureReport meas = spectral_measure_integral(cfg.scheme, f, m, cfg.tail_tol, cfg.budget);
    IndependenceReport ind = trace_independence_check(cfg.scheme, f, cfg.n_list);

    json jf;
    jf["f"] = {{"kind", "bspline"}, {"k", f.order()}};
    for (const Rat& a : f.scales()) jf["f"]["a"].push_back(rat_to_string(a));
    jf["degree"] = tw.degree;
    jf["thresholds"] = {{"chi_max", def.chi_max}, {"zero_from", def.zero_from}};
    jf["l2_trace"] = rat_to_string(ind.l2);
    jf["independence_all_equal"] = ind.all_equal;
    jf["quadrature"] = {{"m", quad.m},
                        {"value", rat_to_string(quad.exact_quadrature)},
                        {"exact_match", quad.exact_match},
                        {"float_err", quad.float_err}};
    jf["measure_integral"] = {{"value", meas.value},
                              {"err_bound", meas.err_bound},
                              {"m", meas.m},
                              {"points", meas.points}};
    jf["theta_grid"] = json::array();
    for (long long jth = 0; jth < cfg.theta_grid; ++jth) {
      std::complex<double> v =
          tw.value(static_cast<double>(jth) / static_cast<double>(cfg.theta_grid));
      jf["theta_grid"].push_back({{"theta", std::to_string(jth) + "/" +
                                                std::to_string(cfg.theta_grid)},
                                  {"re", v.real()},
                                  {"im", v.imag()}});
    }
    jf["defects"] = json::array();
    for (size_t i = 0; i < cfg.n_list.size(); ++i) {
      jf["defects"].push_back(
          {{"n", cfg.n_list[i]}, {"defect", rat_to_string(def.defects[i])}});
      t.add_row({std::to_string(fi), std::to_string(cfg.n_list[i]),
                 rat_to_string(def.defects[i]), std::to_string(tw.degree),
                 std::to_string(def.zero_from), rat_to_string(ind.l2), "zcover",
                 std::to_string(cfg.budget), "true"});
    }
    doc["functions"].push_back(std::move(jf));
  }

  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  {
    std::ofstream out(fs::path(out_dir) / "zcover_check.json", std::ios::binary);
    if (!out) throw ConfigError("cannot write zcover_check.json in " + out_dir);
    out << doc.dump(2) << "\n";
  }
  write_report_files(t, out_dir, "zcover_defects");
  std::printf("zcover check: %zu functions -> %s/zcover_check.json\n",
              doc["functions"].size(), out_dir.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lattice convergence laboratory"};
  app.require_subcommand(1);

  std::string config_path, out_flag;
  int threads = 1;
  long long seed_override = -1;

  auto add_common = [&](CLI::App* cmd, bool needs_config = true) {
    auto* opt = cmd->add_option("--config", config_path, "experiment config (JSON)");
    if (needs_config) opt->required();
    cmd->add_option("--out", out_flag, "output directory (overrides config)");
    cmd->add_option("--threads", threads, "worker threads (row order is unaffected)");
    cmd->add_option("--seed-override", seed_override, "replace the config seed");
  };

  CLI::App* euclid = app.add_subcommand("euclid", "Euclidean lattice families");
  CLI::App* euclid_scan = euclid->add_subcommand("scan", "counts, defects, trace identity");
  add_common(euclid_scan);

  CLI::App* schreier = app.add_subcommand("schreier", "marked groups and coset schemes");
  CLI::App* schreier_scan = schreier->add_subcommand("scan", "relative count/sign sums");
  add_common(schreier_scan);

  CLI::App* hyp = app.add_subcommand("hyp", "hyperbolic octagon surface");
  CLI::App* hyp_injrad = hyp->add_subcommand("injrad", "injectivity-radius statistics");
  CLI::App* hyp_bsprob = hyp->add_subcommand("bsprob", "short-displacement probability");
  CLI::App* hyp_equiv =
      hyp->add_subcommand("equiv", "agreement of the two threshold formulations");
  add_common(hyp_injrad);
  add_common(hyp_bsprob);
  add_common(hyp_equiv);

  CLI::App* zcover = app.add_subcommand("zcover", "infinite cyclic covers");
  CLI::App* zcover_check = zcover->add_subcommand("check", "twisted traces and defects");
  add_common(zcover_check);

  CLI::App* suite = app.add_subcommand("suite", "bundled verification runs");
  CLI::App* acceptance = suite->add_subcommand("acceptance", "full criteria suite");
  std::vector<int> only;
  acceptance->add_option("--only", only, "criterion numbers to run (default: all)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? 2 : 0;
  }

  try {
    if (acceptance->parsed()) return bslab::acceptance_main(only);

    bslab::ParsedConfig pc = bslab::load_config(config_path);
    auto expect_model = [&](const std::string& want) {
      if (pc.model != want)
        throw bslab::ConfigError("config model is \"" + pc.model + "\" but the subcommand needs \"" +
                                 want + "\"");
    };
    std::string out_dir = resolve_out(pc, out_flag);

    if (euclid_scan->parsed()) {
      expect_model("euclid");
      return run_euclid(pc, out_dir, threads);
    }
    if (schreier_scan->parsed()) {
      expect_model("schreier");
      return run_schreier(pc, out_dir);
    }
    for (auto [cmd, task] : {std::pair<CLI::App*, const char*>{hyp_injrad, "injrad"},
                             {hyp_bsprob, "bsprob"},
                             {hyp_equiv, "equiv"}}) {
      if (cmd->parsed()) {
        expect_model("hyperbolic");
        return run_hyp(pc, task, out_dir, seed_override);
      }
    }
    if (zcover_check->parsed()) {
      expect_model("zcover");
      return run_zcover(pc, out_dir);
    }
    std::fprintf(stderr, "no runnable subcommand\n");
    return 2;
  } catch (const bslab::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const bslab::BudgetExceeded& e) {
    std::fprintf(stderr, "budget exceeded: %s\n", e.what());
    return 3;
  } catch (const bslab::InvariantViolation& e) {
    std::fprintf(stderr, "invariant violation: %s\n", e.what());
    return 4;
  }
}
