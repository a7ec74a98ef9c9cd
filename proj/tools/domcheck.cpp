// Copyright 2026 The domcheck authors
// SPDX-License-Identifier: Apache-2.0
//
// Command-line surface: exact weighted-l1 norms and separation sequences on
// user matrices, the parametric 2x2 example, randomized verification
// campaigns, and the lp failure search. Exit codes: 0 verified/clean,
// 1 property violation detected, 2 usage/input error.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "domcheck/domcheck.hpp"

namespace {

using domcheck::json;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

struct OutputOptions {
  std::string out_dir;          // empty: stdout only
  std::string format = "json";  // json | csv
};

void emit(const OutputOptions& opts, const std::string& name, const json& report,
          const std::string& csv) {
  if (opts.format == "csv")
    std::cout << csv;
  else
    std::cout << report.dump(2) << "\n";
  if (!opts.out_dir.empty()) {
    std::filesystem::create_directories(opts.out_dir);
    const std::filesystem::path dir(opts.out_dir);
    domcheck::write_file((dir / (name + "_report.json")).string(),
                         report.dump(2) + "\n");
    if (!csv.empty()) domcheck::write_file((dir / (name + ".csv")).string(), csv);
  }
}

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                   t0)
      .count();
}

domcheck::Rational parse_rational_flag(const std::string& text,
                                       const std::string& flag) {
  try {
    return domcheck::Rational::parse(text);
  } catch (const domcheck::parse_error&) {
    throw domcheck::config_error(flag + ": expected a rational like \"1/3\", got '" +
                                 text + "'");
  }
}

// --- norms ------------------------------------------------------------------

int cmd_norms(const std::string& s_path, const std::string& t_path, int horizon,
              const OutputOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::string s_bytes = domcheck::read_file(s_path);
  const std::string t_bytes = domcheck::read_file(t_path);
  const domcheck::Operator s = domcheck::load_operator_file(s_path);
  const domcheck::Operator t = domcheck::load_operator_file(t_path);
  if (!domcheck::same_space(s.space(), t.space()))
    throw domcheck::dimension_error(
        "S and T act on different spaces (dim/weights mismatch)");
  if (horizon < 1) throw domcheck::config_error("horizon must be >= 1");

  const auto seq = domcheck::separation_sequence(s, t, horizon);
  const auto n0 = domcheck::first_separation_index(seq);

  json report;
  report["manifest"] = domcheck::make_manifest(
      "norms", std::nullopt, json{{"horizon", horizon}},
      {{"S", s_path, domcheck::fnv1a64(s_bytes)},
       {"T", t_path, domcheck::fnv1a64(t_bytes)}},
      0.0);
  report["space"] = domcheck::space_to_json(*s.space());
  report["norm_s"] = domcheck::operator_norm_1(s).str();
  report["norm_t"] = domcheck::operator_norm_1(t).str();
  report["dominates"] = domcheck::dominates(s, t);
  report["separation"] = domcheck::separation_to_json(seq);
  report["n0"] = n0 ? json(*n0) : json(nullptr);
  report["d_monotone_nonincreasing"] = domcheck::monotone_nonincreasing(seq);
  report["manifest"]["wall_time_ms"] = ms_since(t0);

  emit(opts, "norms", report, domcheck::separation_csv(seq));
  return kExitOk;
}

// --- example ------------------------------------------------------------------

json params_to_json(const domcheck::ExampleParams& p) {
  return json{{"A", p.A.str()},
              {"B", p.B.str()},
              {"C", p.C.str()},
              {"D", p.D.str()},
              {"lambda", p.lambda.str()}};
}

int cmd_example_single(const domcheck::ExampleParams& params, int horizon,
                       const OutputOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto cv = domcheck::cross_validate(params);
  const auto pair = domcheck::build_example(params);
  const auto verdict = domcheck::verify_theorem(pair, horizon);
  const auto diag = domcheck::separation_diagnostic(params);

  json report;
  report["manifest"] = domcheck::make_manifest(
      "example", std::nullopt,
      json{{"horizon", horizon}, {"params", params_to_json(params)}}, {}, 0.0);
  report["params"] = params_to_json(params);
  report["closed_form"] = json{{"norm_s", cv.formula.norm_s.str()},
                               {"norm_s_minus_t", cv.formula.norm_s_minus_t.str()},
                               {"norm_s2_minus_t2", cv.formula.norm_s2_minus_t2.str()}};
  report["engine"] = json{{"norm_s", cv.engine.norm_s.str()},
                          {"norm_s_minus_t", cv.engine.norm_s_minus_t.str()},
                          {"norm_s2_minus_t2", cv.engine.norm_s2_minus_t2.str()}};
  report["cross_validate"] = cv.ok;
  report["separation"] = domcheck::separation_to_json(verdict.d_sequence);
  report["n0"] = verdict.n0 ? json(*verdict.n0) : json(nullptr);
  report["corollary_applicable"] = verdict.corollary_applicable;
  report["separation_diagnostic"] =
      json{{"c_positive", diag.c_positive},
           {"b_plus_d_below_one", diag.b_plus_d_below_one}};
  report["manifest"]["wall_time_ms"] = ms_since(t0);

  emit(opts, "example", report, domcheck::separation_csv(verdict.d_sequence));
  return cv.ok ? kExitOk : kExitViolation;
}

int cmd_example_sweep(const domcheck::Rational& step, int horizon,
                      const OutputOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  if (step.sign() <= 0 || step > domcheck::Rational(1))
    throw domcheck::config_error("sweep step must lie in (0, 1]");

  std::vector<domcheck::Rational> grid;
  for (domcheck::Rational v(0); v <= domcheck::Rational(1); v += step)
    grid.push_back(v);

  std::ostringstream csv;
  csv << "A,B,C,D,lambda,n0\n";
  json rows = json::array();
  for (const auto& a : grid)
    for (const auto& b : grid)
      for (const auto& c : grid)
        for (const auto& d : grid)
          for (const auto& lam : grid) {
            const domcheck::ExampleParams p{a, b, c, d, lam};
            try {
              p.validate();
            } catch (const domcheck::constraint_error&) {
              continue;
            }
            const auto pair = domcheck::build_example(p);
            const auto seq = domcheck::separation_sequence(pair.S, pair.T, horizon);
            const auto n0 = domcheck::first_separation_index(seq);
            csv << a.str() << "," << b.str() << "," << c.str() << "," << d.str()
                << "," << lam.str() << ",";
            if (n0) csv << *n0;
            csv << "\n";
            json row = params_to_json(p);
            row["n0"] = n0 ? json(*n0) : json(nullptr);
            rows.push_back(std::move(row));
          }

  json report;
  report["manifest"] = domcheck::make_manifest(
      "example", std::nullopt,
      json{{"horizon", horizon}, {"sweep_step", step.str()}}, {}, 0.0);
  report["rows"] = std::move(rows);
  report["manifest"]["wall_time_ms"] = ms_since(t0);
  emit(opts, "example_sweep", report, csv.str());
  return kExitOk;
}

// --- verify -------------------------------------------------------------------

json verify_report_json(const domcheck::CampaignReport& report, bool emit_trials,
                        double wall_ms) {
  json j;
  j["manifest"] = domcheck::make_manifest(
      "verify", report.config.master_seed,
      domcheck::campaign_config_to_json(report.config), {}, wall_ms);
  const json body = domcheck::campaign_report_to_json(report, emit_trials);
  j["counts"] = body.at("counts");
  if (body.contains("trials")) j["trials"] = body.at("trials");
  return j;
}

int cmd_verify(domcheck::CampaignConfig config, int threads, bool emit_trials,
               const OutputOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto report = domcheck::run_campaign(config, threads);
  json j = verify_report_json(report, emit_trials, 0.0);
  j["manifest"]["wall_time_ms"] = ms_since(t0);
  emit(opts, "verify", j, domcheck::trials_csv(report));
  return report.counts.violations == 0 ? kExitOk : kExitViolation;
}

// --- search-lp ------------------------------------------------------------------

int cmd_search_lp(const domcheck::LpSearchConfig& config, int threads,
                  const OutputOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto result = domcheck::search_lp_failure(config, threads);
  json j;
  j["manifest"] = domcheck::make_manifest(
      "search-lp", config.master_seed, domcheck::lp_config_to_json(config), {}, 0.0);
  const json body = domcheck::lp_result_to_json(result);
  j["pairs_checked"] = body.at("pairs_checked");
  j["candidates"] = body.at("candidates");
  j["manifest"]["wall_time_ms"] = ms_since(t0);
  emit(opts, "search_lp", j, domcheck::lp_csv(result));
  return kExitOk;
}

// --- manifest rerun --------------------------------------------------------------

struct ManifestSeedConfig {
  std::uint64_t master_seed = 0;
  json config;
  std::string subcommand;
};

ManifestSeedConfig load_manifest(const std::string& path) {
  const json doc = domcheck::parse_json_file(path);
  const json& m = doc.contains("manifest") ? doc.at("manifest") : doc;
  if (!m.contains("subcommand") || !m.contains("config") ||
      !m.contains("master_seed") || !m.at("master_seed").is_number())
    throw domcheck::config_error(path + ": not a rerunnable manifest");
  return ManifestSeedConfig{m.at("master_seed").get<std::uint64_t>(),
                            m.at("config"), m.at("subcommand").get<std::string>()};
}

// a bare config file: the manifest's "config" object, optionally carrying
// its own "master_seed"
json load_config_file(const std::string& path, std::uint64_t& seed) {
  const json doc = domcheck::parse_json_file(path);
  if (!doc.is_object())
    throw domcheck::config_error(path + ": config file must hold a JSON object");
  if (doc.contains("master_seed")) {
    if (!doc.at("master_seed").is_number())
      throw domcheck::config_error(path + ": master_seed must be an integer");
    seed = doc.at("master_seed").get<std::uint64_t>();
  }
  return doc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"verification toolkit for dominated positive l1-contractions"};
  app.fallthrough();

  OutputOptions opts;
  std::uint64_t seed = 0x5EEDD0C5ULL;
  app.add_option("--out,-o", opts.out_dir, "directory for report files")
      ->envname("DOMCHECK_OUT");
  app.add_option("--format,-f", opts.format, "stdout format")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--seed,-s", seed, "master seed for randomized subcommands");

  // norms
  auto* norms = app.add_subcommand("norms", "exact norms and d(n) for S, T files");
  std::string s_path, t_path;
  int norms_horizon = 16;
  norms->add_option("--s", s_path, "matrix file for S")->required();
  norms->add_option("--t", t_path, "matrix file for T")->required();
  norms->add_option("--horizon,-H", norms_horizon, "d(n) horizon");

  // example
  auto* example = app.add_subcommand("example", "the parametric 2x2 family");
  bool paper_instance = false;
  bool sweep = false;
  std::string a_txt, b_txt, c_txt, d_txt, lambda_txt, step_txt = "1/4";
  int example_horizon = 16;
  example->add_flag("--paper-instance", paper_instance,
                    "use A=C=1/2, B=D=1/3, lambda=1/4");
  example->add_option("--A", a_txt, "parameter A (rational)");
  example->add_option("--B", b_txt, "parameter B (rational)");
  example->add_option("--C", c_txt, "parameter C (rational)");
  example->add_option("--D", d_txt, "parameter D (rational)");
  example->add_option("--lambda", lambda_txt, "parameter lambda (rational)");
  example->add_flag("--sweep", sweep, "emit CSV of (params, n0) over a grid");
  example->add_option("--sweep-step", step_txt, "grid step (rational in (0,1])");
  example->add_option("--horizon,-H", example_horizon, "d(n) horizon");

  // verify
  auto* verify = app.add_subcommand("verify", "randomized theorem campaign");
  domcheck::CampaignConfig ccfg;
  int threads = 0;
  bool emit_trials = false;
  std::string density_txt, stochastic_txt, from_manifest;
  verify->add_option("--trials", ccfg.trials, "number of sampled pairs");
  verify->add_option("--dim-min", ccfg.dim_min, "smallest dimension");
  verify->add_option("--dim-max", ccfg.dim_max, "largest dimension");
  verify->add_option("--horizon,-H", ccfg.horizon, "d(n) horizon per pair");
  verify->add_option("--density", density_txt, "zero-entry probability (rational)");
  verify->add_option("--grid", ccfg.magnitude_grid, "denominator of the magnitude grid");
  verify->add_option("--stochastic-fraction", stochastic_txt,
                     "fraction of columns pinned to weighted sum exactly 1");
  verify->add_option("--threads", threads, "worker threads (0 = hardware)");
  verify->add_flag("--emit-trials", emit_trials, "include per-trial rows in JSON");
  std::string verify_config_file;
  auto* verify_config_opt =
      verify->add_option("--config", verify_config_file, "campaign config JSON file");
  verify
      ->add_option("--from-manifest", from_manifest,
                   "rerun the campaign recorded in a report/manifest file")
      ->excludes(verify_config_opt);

  // search-lp
  auto* search = app.add_subcommand("search-lp", "probe p > 1 for failures");
  domcheck::LpSearchConfig lcfg;
  std::string lp_from_manifest;
  search->add_option("--p", lcfg.p_list, "p values (repeatable; each > 1)");
  search->add_option("--trials", lcfg.trials, "number of sampled pairs");
  search->add_option("--dim-min", lcfg.dim_min, "smallest dimension");
  search->add_option("--dim-max", lcfg.dim_max, "largest dimension");
  search->add_option("--horizon,-H", lcfg.horizon, "d_p(n) horizon per pair");
  search->add_option("--margin-tol", lcfg.margin_tol, "certification margin");
  search->add_option("--tol", lcfg.tol, "power-iteration tolerance");
  search->add_option("--max-iter", lcfg.max_iter, "power-iteration cap");
  search->add_option("--restarts", lcfg.restarts, "random restarts per bracket");
  search->add_option("--density", lcfg.density, "zero-entry probability");
  search->add_option("--grid", lcfg.magnitude_grid, "magnitude grid denominator");
  search->add_option("--threads", threads, "worker threads (0 = hardware)");
  std::string lp_config_file;
  auto* lp_config_opt =
      search->add_option("--config", lp_config_file, "search config JSON file");
  search
      ->add_option("--from-manifest", lp_from_manifest,
                   "rerun the search recorded in a report/manifest file")
      ->excludes(lp_config_opt);

  app.require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (norms->parsed()) return cmd_norms(s_path, t_path, norms_horizon, opts);

    if (example->parsed()) {
      if (sweep)
        return cmd_example_sweep(parse_rational_flag(step_txt, "--sweep-step"),
                                 example_horizon, opts);
      domcheck::ExampleParams params;
      if (paper_instance) {
        params = domcheck::ExampleParams::paper_instance();
      } else {
        if (a_txt.empty() || b_txt.empty() || c_txt.empty() || d_txt.empty() ||
            lambda_txt.empty())
          throw domcheck::config_error(
              "example needs --paper-instance or all of --A --B --C --D --lambda");
        params = domcheck::ExampleParams{parse_rational_flag(a_txt, "--A"),
                                         parse_rational_flag(b_txt, "--B"),
                                         parse_rational_flag(c_txt, "--C"),
                                         parse_rational_flag(d_txt, "--D"),
                                         parse_rational_flag(lambda_txt, "--lambda")};
      }
      return cmd_example_single(params, example_horizon, opts);
    }

    if (verify->parsed()) {
      if (!from_manifest.empty()) {
        const auto m = load_manifest(from_manifest);
        if (m.subcommand != "verify")
          throw domcheck::config_error(from_manifest + ": manifest is for '" +
                                       m.subcommand + "', not 'verify'");
        ccfg = domcheck::campaign_config_from_json(m.config, m.master_seed);
      } else if (!verify_config_file.empty()) {
        const json cfg_json = load_config_file(verify_config_file, seed);
        ccfg = domcheck::campaign_config_from_json(cfg_json, seed);
      } else {
        ccfg.master_seed = seed;
        if (!density_txt.empty())
          ccfg.density = parse_rational_flag(density_txt, "--density");
        if (!stochastic_txt.empty())
          ccfg.stochastic_column_fraction =
              parse_rational_flag(stochastic_txt, "--stochastic-fraction");
      }
      ccfg.validate();
      return cmd_verify(ccfg, threads, emit_trials, opts);
    }

    if (search->parsed()) {
      if (!lp_from_manifest.empty()) {
        const auto m = load_manifest(lp_from_manifest);
        if (m.subcommand != "search-lp")
          throw domcheck::config_error(lp_from_manifest + ": manifest is for '" +
                                       m.subcommand + "', not 'search-lp'");
        lcfg = domcheck::lp_config_from_json(m.config, m.master_seed);
      } else if (!lp_config_file.empty()) {
        const json cfg_json = load_config_file(lp_config_file, seed);
        lcfg = domcheck::lp_config_from_json(cfg_json, seed);
      } else {
        lcfg.master_seed = seed;
      }
      lcfg.validate();
      return cmd_search_lp(lcfg, threads, opts);
    }
  } catch (const domcheck::parse_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const domcheck::config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const domcheck::constraint_error& e) {
    std::cerr << "constraint violated (" << e.constraint << "): " << e.what() << "\n";
    return kExitUsage;
  } catch (const domcheck::dimension_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const domcheck::positivity_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const domcheck::domination_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitViolation;
  }
  return kExitOk;
}
