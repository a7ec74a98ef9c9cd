// Copyright 2026 The domcheck authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "domcheck/sampler.hpp"

namespace domcheck {

struct CampaignConfig {
  std::uint64_t master_seed = 0x5EEDD0C5ULL;
  int trials = 1000;
  int dim_min = 2;
  int dim_max = 10;
  int horizon = 50;
  Rational density = Rational(1, 3);
  int magnitude_grid = 8;
  Rational stochastic_column_fraction = Rational(1, 4);

  void validate() const {
    if (trials < 1) throw config_error("trials must be >= 1");
    if (dim_min < 1 || dim_min > dim_max)
      throw config_error("need 1 <= dim_min <= dim_max");
    // blow-up guard: denominators of d(n) grow with dim and horizon even in
    // reduced form, so campaigns stay inside this box
    if (dim_max > 16) throw config_error("campaign dimensions are capped at 16");
    if (horizon < 1) throw config_error("horizon must be >= 1");
    if (horizon > 64) throw config_error("campaign horizon is capped at 64");
    if (density.sign() < 0 || density >= Rational(1))
      throw config_error("density must lie in [0, 1)");
    if (magnitude_grid < 1) throw config_error("magnitude grid must be >= 1");
    if (stochastic_column_fraction.sign() < 0 ||
        stochastic_column_fraction > Rational(1))
      throw config_error("stochastic column fraction must lie in [0, 1]");
    // coin() draws against the denominator, which must fit a machine word
    if (!density.denominator().fits_ulong_p() ||
        !stochastic_column_fraction.denominator().fits_ulong_p())
      throw config_error("probability denominators must fit 64 bits");
  }

  SamplerParams sampler_params() const {
    return SamplerParams{magnitude_grid, density, stochastic_column_fraction};
  }
};

/// Smallest n with d(n) < 1 (strict, exact), or nullopt within the horizon.
inline std::optional<int> first_separation_index(const SeparationSequence& d) {
  for (int n = 1; n <= d.horizon; ++n)
    if (d.d(n) < Rational(1)) return n;
  return std::nullopt;
}

/// One pair's verdict. `violations` lists every n in [n0, horizon] with
/// d(n) >= 1; the theorem says the list is empty, which makes it the oracle:
/// a nonzero count signals an engine or sampler bug, never "the paper is
/// wrong".
struct Verdict {
  std::uint64_t pair_id = 0;
  std::optional<int> n0;        // first separation index
  std::vector<int> violations;  // empty when n0 is absent, by convention
  SeparationSequence d_sequence;
  bool corollary_applicable = false;  // d(1) < 1
  bool monotone_nonincreasing = true; // recorded, never asserted
};

/// Checks the main theorem on one pair up to the horizon: past n0, d(n) must
/// stay strictly below 1. Also re-checks the subsequence consequence
/// d(k*n0) < 1 obtained by applying the d(1)<1 corollary to (S^n0, T^n0);
/// those multiples are a subset of [n0, horizon], so any failure lands in
/// `violations` either way.
inline Verdict verify_theorem(const DominatedPair& pair, int horizon,
                              std::uint64_t pair_id = 0) {
  if (!pair.valid())
    throw domination_error("verify_theorem: pair violates its invariants");
  Verdict v;
  v.pair_id = pair_id;
  v.d_sequence = separation_sequence(pair.S, pair.T, horizon);
  v.monotone_nonincreasing = monotone_nonincreasing(v.d_sequence);
  v.n0 = first_separation_index(v.d_sequence);
  v.corollary_applicable = v.d_sequence.d(1) < Rational(1);
  if (v.n0) {
    for (int n = *v.n0; n <= horizon; ++n)
      if (!(v.d_sequence.d(n) < Rational(1))) v.violations.push_back(n);
    for (int kn = *v.n0; kn <= horizon; kn += *v.n0)
      if (!(v.d_sequence.d(kn) < Rational(1)) &&
          std::find(v.violations.begin(), v.violations.end(), kn) ==
              v.violations.end())
        v.violations.push_back(kn);
  }
  return v;
}

/// Corollary check: when d(1) < 1, every d(n) must stay below 1. When
/// d(1) = 1 the corollary's hypothesis fails and nothing is asserted.
inline Verdict verify_corollary(const DominatedPair& pair, int horizon,
                                std::uint64_t pair_id = 0) {
  if (!pair.valid())
    throw domination_error("verify_corollary: pair violates its invariants");
  Verdict v;
  v.pair_id = pair_id;
  v.d_sequence = separation_sequence(pair.S, pair.T, horizon);
  v.monotone_nonincreasing = monotone_nonincreasing(v.d_sequence);
  v.n0 = first_separation_index(v.d_sequence);
  v.corollary_applicable = v.d_sequence.d(1) < Rational(1);
  if (v.corollary_applicable)
    for (int n = 1; n <= horizon; ++n)
      if (!(v.d_sequence.d(n) < Rational(1))) v.violations.push_back(n);
  return v;
}

/// Per-trial record kept by campaigns (the full d-sequence is summarized to
/// its minimum to keep reports small).
struct TrialSummary {
  int trial = 0;
  int dim = 0;
  std::optional<int> n0;
  Rational min_d;
  int violations = 0;
  bool corollary_applicable = false;
  bool monotone_nonincreasing = true;
};

struct CampaignCounts {
  long trials = 0;
  long with_n0 = 0;          // case (ii): separation happens within horizon
  long no_separation = 0;    // case (i): d(n) = 1 for all n <= horizon
  long corollary_cases = 0;  // d(1) < 1
  long violations = 0;       // must be zero; nonzero means engine bug
};

struct CampaignReport {
  CampaignConfig config;
  std::vector<TrialSummary> trials;  // in trial order
  CampaignCounts counts;
  double wall_time_ms = 0.0;  // excluded from determinism comparisons
};

/// Runs the campaign. Trials are independent, seeded by (master_seed, trial);
/// results are aggregated in trial order, so the report does not depend on
/// the number of threads. `threads` <= 0 picks the hardware count.
inline CampaignReport run_campaign(const CampaignConfig& config, int threads = 0) {
  config.validate();
  const auto t0 = std::chrono::steady_clock::now();

  CampaignReport report;
  report.config = config;
  report.trials.resize(static_cast<size_t>(config.trials));

  const SamplerParams params = config.sampler_params();
  auto run_trial = [&](int trial) {
    SplitMix64 rng(subseed(config.master_seed, static_cast<std::uint64_t>(trial)));
    const int dim = config.dim_min + rng.bounded_int(config.dim_max - config.dim_min + 1);
    const DominatedPair pair = sample_dominated_pair(dim, rng, params);
    const Verdict v = verify_theorem(pair, config.horizon,
                                     static_cast<std::uint64_t>(trial));
    TrialSummary s;
    s.trial = trial;
    s.dim = dim;
    s.n0 = v.n0;
    s.min_d = min_value(v.d_sequence);
    s.violations = static_cast<int>(v.violations.size());
    s.corollary_applicable = v.corollary_applicable;
    s.monotone_nonincreasing = v.monotone_nonincreasing;
    report.trials[static_cast<size_t>(trial)] = std::move(s);
  };

  int n_threads = threads > 0 ? threads
                              : static_cast<int>(std::thread::hardware_concurrency());
  if (n_threads < 1) n_threads = 1;
  if (n_threads == 1 || config.trials == 1) {
    for (int i = 0; i < config.trials; ++i) run_trial(i);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(n_threads));
    for (int t = 0; t < n_threads; ++t)
      pool.emplace_back([&] {
        for (int i = next.fetch_add(1); i < config.trials; i = next.fetch_add(1))
          run_trial(i);
      });
    for (auto& th : pool) th.join();
  }

  for (const TrialSummary& s : report.trials) {
    ++report.counts.trials;
    if (s.n0) ++report.counts.with_n0; else ++report.counts.no_separation;
    if (s.corollary_applicable) ++report.counts.corollary_cases;
    report.counts.violations += s.violations;
  }
  report.wall_time_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
          .count();
  return report;
}

}  // namespace domcheck
