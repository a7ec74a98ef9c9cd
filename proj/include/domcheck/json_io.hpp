// Copyright 2026 The domcheck authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <chrono>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "domcheck/example.hpp"
#include "domcheck/pnorm.hpp"
#include "domcheck/verifier.hpp"
#include "domcheck/version.hpp"

namespace domcheck {

// ordered_json keeps insertion order, which makes report bytes a pure
// function of the data -- required by the determinism contract
using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// scalars: rationals travel as "p/q" strings (never floats), so downstream
// tools keep exactness; integers are accepted on input
// ---------------------------------------------------------------------------

inline json scalar_to_json(const Rational& r) { return json(r.str()); }

inline Rational scalar_from_json(const json& j) {
  if (j.is_number_integer() || j.is_number_unsigned())
    return Rational::parse(j.dump());
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_float())
    throw parse_error("floating-point scalars are not accepted; use \"p/q\"");
  throw parse_error("scalar must be an integer or a \"p/q\" string");
}

// ---------------------------------------------------------------------------
// matrix/vector file schema:
//   {"dim": n, "weights": ["p/q", ...]?, "entries": [[...], ...]}
// ---------------------------------------------------------------------------

inline json space_to_json(const Space& s) {
  json w = json::array();
  for (const Rational& r : s.weights()) w.push_back(scalar_to_json(r));
  return json{{"dim", s.dim()}, {"weights", std::move(w)}};
}

inline json operator_to_json(const Operator& m) {
  json j;
  j["dim"] = m.dim();
  json w = json::array();
  for (const Rational& r : m.space()->weights()) w.push_back(scalar_to_json(r));
  j["weights"] = std::move(w);
  json rows = json::array();
  for (int i = 0; i < m.dim(); ++i) {
    json row = json::array();
    for (int jc = 0; jc < m.dim(); ++jc) row.push_back(scalar_to_json(m.at(i, jc)));
    rows.push_back(std::move(row));
  }
  j["entries"] = std::move(rows);
  return j;
}

inline Operator operator_from_json(const json& j) {
  if (!j.is_object()) throw parse_error("matrix document must be a JSON object");
  if (!j.contains("dim") || !j.at("dim").is_number_integer())
    throw parse_error("matrix document needs an integer \"dim\"");
  const int dim = j.at("dim").get<int>();
  if (dim < 1) throw parse_error("\"dim\" must be >= 1");

  std::vector<Rational> weights;
  if (j.contains("weights")) {
    const json& w = j.at("weights");
    if (!w.is_array() || static_cast<int>(w.size()) != dim)
      throw parse_error("\"weights\" must be an array of length dim");
    for (const json& e : w) weights.push_back(scalar_from_json(e));
  } else {
    weights.assign(static_cast<size_t>(dim), Rational(1));  // counting trace
  }
  SpacePtr space = make_space(dim, std::move(weights));

  if (!j.contains("entries") || !j.at("entries").is_array())
    throw parse_error("matrix document needs an \"entries\" array");
  const json& rows = j.at("entries");
  if (static_cast<int>(rows.size()) != dim)
    throw parse_error("expected " + std::to_string(dim) + " rows, got " +
                      std::to_string(rows.size()));
  std::vector<Rational> flat;
  flat.reserve(static_cast<size_t>(dim) * static_cast<size_t>(dim));
  for (const json& row : rows) {
    if (!row.is_array() || static_cast<int>(row.size()) != dim)
      throw parse_error("ragged matrix: every row must have length " +
                        std::to_string(dim));
    for (const json& e : row) flat.push_back(scalar_from_json(e));
  }
  return Operator(std::move(space), std::move(flat));
}

inline json separation_to_json(const SeparationSequence& seq) {
  json d = json::array();
  for (const Rational& v : seq.values) d.push_back(scalar_to_json(v));
  return json{{"horizon", seq.horizon}, {"d", std::move(d)}};
}

// ---------------------------------------------------------------------------
// campaign config / report
// ---------------------------------------------------------------------------

inline json campaign_config_to_json(const CampaignConfig& c) {
  return json{{"trials", c.trials},
              {"dim_min", c.dim_min},
              {"dim_max", c.dim_max},
              {"horizon", c.horizon},
              {"density", c.density.str()},
              {"magnitude_grid", c.magnitude_grid},
              {"stochastic_column_fraction", c.stochastic_column_fraction.str()}};
}

inline CampaignConfig campaign_config_from_json(const json& j,
                                                std::uint64_t master_seed) {
  CampaignConfig c;
  try {
    c.master_seed = master_seed;
    c.trials = j.at("trials").get<int>();
    c.dim_min = j.at("dim_min").get<int>();
    c.dim_max = j.at("dim_max").get<int>();
    c.horizon = j.at("horizon").get<int>();
    c.density = scalar_from_json(j.at("density"));
    c.magnitude_grid = j.at("magnitude_grid").get<int>();
    c.stochastic_column_fraction =
        scalar_from_json(j.at("stochastic_column_fraction"));
  } catch (const json::exception& e) {
    throw config_error(std::string("bad campaign config: ") + e.what());
  }
  c.validate();
  return c;
}

inline json trial_summary_to_json(const TrialSummary& s) {
  json j;
  j["trial"] = s.trial;
  j["dim"] = s.dim;
  j["n0"] = s.n0 ? json(*s.n0) : json(nullptr);
  j["min_d"] = s.min_d.str();
  j["violations"] = s.violations;
  j["corollary_applicable"] = s.corollary_applicable;
  j["d_monotone_nonincreasing"] = s.monotone_nonincreasing;
  return j;
}

inline json campaign_counts_to_json(const CampaignCounts& c) {
  return json{{"trials", c.trials},
              {"with_n0", c.with_n0},
              {"no_separation", c.no_separation},
              {"corollary_cases", c.corollary_cases},
              {"violations", c.violations}};
}

inline json campaign_report_to_json(const CampaignReport& r, bool include_trials) {
  json j;
  j["config"] = campaign_config_to_json(r.config);
  j["counts"] = campaign_counts_to_json(r.counts);
  if (include_trials) {
    json trials = json::array();
    for (const TrialSummary& s : r.trials) trials.push_back(trial_summary_to_json(s));
    j["trials"] = std::move(trials);
  }
  return j;
}

// ---------------------------------------------------------------------------
// lp search config / result
// ---------------------------------------------------------------------------

inline json lp_config_to_json(const LpSearchConfig& c) {
  return json{{"trials", c.trials},
              {"dim_min", c.dim_min},
              {"dim_max", c.dim_max},
              {"horizon", c.horizon},
              {"p_list", c.p_list},
              {"margin_tol", c.margin_tol},
              {"tol", c.tol},
              {"max_iter", c.max_iter},
              {"restarts", c.restarts},
              {"density", c.density},
              {"magnitude_grid", c.magnitude_grid}};
}

inline LpSearchConfig lp_config_from_json(const json& j, std::uint64_t master_seed) {
  LpSearchConfig c;
  try {
    c.master_seed = master_seed;
    c.trials = j.at("trials").get<int>();
    c.dim_min = j.at("dim_min").get<int>();
    c.dim_max = j.at("dim_max").get<int>();
    c.horizon = j.at("horizon").get<int>();
    c.p_list = j.at("p_list").get<std::vector<double>>();
    c.margin_tol = j.at("margin_tol").get<double>();
    c.tol = j.at("tol").get<double>();
    c.max_iter = j.at("max_iter").get<int>();
    c.restarts = j.at("restarts").get<int>();
    c.density = j.at("density").get<double>();
    c.magnitude_grid = j.at("magnitude_grid").get<int>();
  } catch (const json::exception& e) {
    throw config_error(std::string("bad lp search config: ") + e.what());
  }
  c.validate();
  return c;
}

inline json dense_matrix_to_json(const DenseMatrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows; ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols; ++j) row.push_back(m.at(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline json failure_candidate_to_json(const FailureCandidate& c) {
  json j;
  j["trial"] = c.trial;
  j["p"] = c.p;
  j["dim"] = c.dim;
  j["S"] = dense_matrix_to_json(c.S);
  j["T"] = dense_matrix_to_json(c.T);
  j["n0_claim"] = c.n0_claim;
  j["upper_at_n0"] = c.upper_at_n0;
  j["n_violation"] = c.n_violation;
  j["lower_at_violation"] = c.lower_at_violation;
  j["margin_n0"] = c.margin_n0;
  j["margin_violation"] = c.margin_violation;
  json pts = json::array();
  for (const BracketPoint& b : c.brackets)
    pts.push_back(json{{"n", b.n}, {"lower", b.lower}, {"upper", b.upper}});
  j["brackets"] = std::move(pts);
  return j;
}

inline json lp_result_to_json(const LpSearchResult& r) {
  json j;
  j["config"] = lp_config_to_json(r.config);
  j["pairs_checked"] = r.pairs_checked;
  json cands = json::array();
  for (const FailureCandidate& c : r.candidates)
    cands.push_back(failure_candidate_to_json(c));
  j["candidates"] = std::move(cands);
  return j;
}

// ---------------------------------------------------------------------------
// manifests: every report embeds one; a rerun from the manifest must
// reproduce the report byte-identically except for timestamp and wall time
// ---------------------------------------------------------------------------

/// FNV-1a 64-bit, for input-file identification in manifests.
inline std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 0x100000001B3ULL;
  }
  return h;
}

inline std::string to_hex(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i, v >>= 4) s[static_cast<size_t>(i)] = digits[v & 0xF];
  return s;
}

struct ManifestInput {
  std::string name;  // role, e.g. "S", "T"
  std::string path;
  std::uint64_t digest = 0;
};

inline std::string iso8601_utc_now() {
  const std::time_t t =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

inline json make_manifest(const std::string& subcommand,
                          std::optional<std::uint64_t> master_seed,
                          json config, const std::vector<ManifestInput>& inputs,
                          double wall_time_ms) {
  json j;
  j["tool"] = std::string(kToolName);
  j["version"] = std::string(kVersion);
  j["subcommand"] = subcommand;
  j["master_seed"] = master_seed ? json(*master_seed) : json(nullptr);
  j["config"] = std::move(config);
  json ins = json::object();
  for (const ManifestInput& in : inputs)
    ins[in.name] = json{{"path", in.path}, {"fnv1a64", to_hex(in.digest)}};
  j["inputs"] = std::move(ins);
  j["timestamp"] = iso8601_utc_now();
  j["wall_time_ms"] = wall_time_ms;
  return j;
}

/// Blanks the two volatile manifest fields; reports are compared for byte
/// identity after this.
inline void scrub_volatile_fields(json& report) {
  if (report.contains("manifest")) {
    report["manifest"]["timestamp"] = nullptr;
    report["manifest"]["wall_time_ms"] = nullptr;
  }
}

// ---------------------------------------------------------------------------
// files
// ---------------------------------------------------------------------------

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw parse_error("cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw error("cannot write file: " + path);
  out << content;
}

inline json parse_json_file(const std::string& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw parse_error(path + ": " + e.what());
  }
}

inline Operator load_operator_file(const std::string& path) {
  try {
    return operator_from_json(parse_json_file(path));
  } catch (const parse_error& e) {
    throw parse_error(path + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------
// tidy CSV emission (plotting is out-of-process)
// ---------------------------------------------------------------------------

inline std::string separation_csv(const SeparationSequence& seq) {
  std::ostringstream out;
  out << "n,d\n";
  for (int n = 1; n <= seq.horizon; ++n) out << n << "," << seq.d(n).str() << "\n";
  return out.str();
}

inline std::string trials_csv(const CampaignReport& r) {
  std::ostringstream out;
  out << "trial,dim,n0,min_d,violations\n";
  for (const TrialSummary& s : r.trials) {
    out << s.trial << "," << s.dim << ",";
    if (s.n0) out << *s.n0;
    out << "," << s.min_d.str() << "," << s.violations << "\n";
  }
  return out.str();
}

inline std::string lp_csv(const LpSearchResult& r) {
  std::ostringstream out;
  out << "p,dim,n0_claim,n_violation,margin\n";
  for (const FailureCandidate& c : r.candidates)
    out << c.p << "," << c.dim << "," << c.n0_claim << "," << c.n_violation << ","
        << std::min(c.margin_n0, c.margin_violation) << "\n";
  return out.str();
}

}  // namespace domcheck
