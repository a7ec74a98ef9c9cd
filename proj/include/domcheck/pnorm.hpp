// Copyright 2026 The domcheck authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "domcheck/errors.hpp"
#include "domcheck/operators.hpp"
#include "domcheck/rng.hpp"

namespace domcheck {

/// Dense real matrix, row-major. The lp explorer works in floating point:
/// p-th roots leave the rational field, so certification is by margins here,
/// never by exactness.
struct DenseMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> a;

  DenseMatrix() = default;
  DenseMatrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0.0) {
    if (r < 1 || c < 1) throw dimension_error("matrix dimensions must be >= 1");
  }

  double& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  double at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

  static DenseMatrix identity(int n) {
    DenseMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
  }
};

/// Rational operator lowered to doubles (nearest), for lp cross-checks.
inline DenseMatrix to_dense(const Operator& m) {
  DenseMatrix d(m.dim(), m.dim());
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j) d.at(i, j) = m.at(i, j).to_double();
  return d;
}

inline std::vector<double> matvec(const DenseMatrix& m, const std::vector<double>& x) {
  std::vector<double> y(static_cast<size_t>(m.rows), 0.0);
  for (int i = 0; i < m.rows; ++i) {
    double acc = 0.0;
    for (int j = 0; j < m.cols; ++j) acc += m.at(i, j) * x[static_cast<size_t>(j)];
    y[static_cast<size_t>(i)] = acc;
  }
  return y;
}

inline std::vector<double> matvec_transposed(const DenseMatrix& m,
                                             const std::vector<double>& x) {
  std::vector<double> y(static_cast<size_t>(m.cols), 0.0);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j)
      y[static_cast<size_t>(j)] += m.at(i, j) * x[static_cast<size_t>(i)];
  return y;
}

inline DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols != b.rows) throw dimension_error("matmul shape mismatch");
  DenseMatrix r(a.rows, b.cols);
  for (int i = 0; i < a.rows; ++i)
    for (int k = 0; k < a.cols; ++k) {
      const double aik = a.at(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < b.cols; ++j) r.at(i, j) += aik * b.at(k, j);
    }
  return r;
}

inline DenseMatrix subtract(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows != b.rows || a.cols != b.cols)
    throw dimension_error("subtract shape mismatch");
  DenseMatrix r = a;
  for (size_t k = 0; k < r.a.size(); ++k) r.a[k] -= b.a[k];
  return r;
}

namespace detail {
inline void require_finite(const std::vector<double>& x) {
  for (double v : x)
    if (!std::isfinite(v)) throw error("non-finite vector entry");
}
}  // namespace detail

/// (sum_i w_i |x_i|^p)^(1/p), max-factored for stability at large p.
inline double p_norm_vec(const std::vector<double>& x, double p,
                         const std::vector<double>& weights) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw config_error("need finite p >= 1");
  if (weights.size() != x.size()) throw dimension_error("weights length mismatch");
  detail::require_finite(x);
  double m = 0.0;
  for (double v : x) m = std::max(m, std::fabs(v));
  if (m == 0.0) return 0.0;
  double sum = 0.0;
  for (size_t i = 0; i < x.size(); ++i)
    sum += weights[i] * std::pow(std::fabs(x[i]) / m, p);
  return m * std::pow(sum, 1.0 / p);
}

inline double p_norm_vec(const std::vector<double>& x, double p) {
  return p_norm_vec(x, p, std::vector<double>(x.size(), 1.0));
}

/// Max absolute column sum: the exact l1 -> l1 operator norm on floats.
inline double col_sum_norm(const DenseMatrix& m) {
  double best = 0.0;
  for (int j = 0; j < m.cols; ++j) {
    double s = 0.0;
    for (int i = 0; i < m.rows; ++i) s += std::fabs(m.at(i, j));
    best = std::max(best, s);
  }
  return best;
}

/// Max absolute row sum: the exact linf -> linf operator norm.
inline double row_sum_norm(const DenseMatrix& m) {
  double best = 0.0;
  for (int i = 0; i < m.rows; ++i) {
    double s = 0.0;
    for (int j = 0; j < m.cols; ++j) s += std::fabs(m.at(i, j));
    best = std::max(best, s);
  }
  return best;
}

/// Riesz-Thorin interpolation bound ||M||_p <= ||M||_1^(1/p) ||M||_inf^(1-1/p).
inline double interpolation_upper(const DenseMatrix& m, double p) {
  const double n1 = col_sum_norm(m);
  const double ninf = row_sum_norm(m);
  if (n1 == 0.0 || ninf == 0.0) return 0.0;
  return std::pow(n1, 1.0 / p) * std::pow(ninf, 1.0 - 1.0 / p);
}

/// Certified interval around an lp operator norm. `lower` is always the
/// directly evaluated ||M w||_p / ||w||_p of the stored witness; `upper` the
/// interpolation bound, so the interval is valid even when the iteration
/// stalled (converged = false).
struct PNormBracket {
  double p = 2.0;
  double lower = 0.0;
  double upper = 0.0;
  std::vector<double> witness;
  int iterations = 0;
  bool converged = false;
};

namespace detail {

// phi with ||phi||_q = 1 and phi . y = ||y||_p (the dual attaining functional)
inline std::vector<double> dual_of(const std::vector<double>& y, double p,
                                   double norm_p) {
  std::vector<double> phi(y.size(), 0.0);
  if (norm_p == 0.0) return phi;
  for (size_t i = 0; i < y.size(); ++i) {
    const double r = std::fabs(y[i]) / norm_p;
    phi[i] = std::copysign(std::pow(r, p - 1.0), y[i]);
  }
  return phi;
}

// ||z||_q, max-factored so huge q (p near 1) stays stable
inline double q_norm(const std::vector<double>& z, double q) {
  double m = 0.0;
  for (double v : z) m = std::max(m, std::fabs(v));
  if (m == 0.0) return 0.0;
  double sum = 0.0;
  for (double v : z) sum += std::pow(std::fabs(v) / m, q);
  return m * std::pow(sum, 1.0 / q);
}

struct StartResult {
  double gain = 0.0;
  std::vector<double> witness;
  int iterations = 0;
  bool converged = false;
};

// Boyd/Higham nonlinear power iteration for ||M||_p. The gain sequence
// ||M x_k||_p is nondecreasing, so the best iterate is a certified lower
// bound regardless of where the iteration stops.
inline StartResult power_iterate(const DenseMatrix& m, double p,
                                 std::vector<double> x, double tol,
                                 int max_iter) {
  const double q = p / (p - 1.0);
  StartResult r;
  const double x_norm = p_norm_vec(x, p);
  if (x_norm == 0.0) return r;
  for (double& v : x) v /= x_norm;
  r.witness = x;
  double prev_gain = -1.0;
  for (int it = 0; it < max_iter; ++it) {
    ++r.iterations;
    const std::vector<double> y = matvec(m, x);
    const double gain = p_norm_vec(y, p);
    if (gain > r.gain) {
      r.gain = gain;
      r.witness = x;
    }
    if (gain == 0.0) {  // M annihilates x; stationary
      r.converged = true;
      break;
    }
    const std::vector<double> z = matvec_transposed(m, dual_of(y, p, gain));
    const double zq = q_norm(z, q);
    double z_dot_x = 0.0;
    for (size_t i = 0; i < x.size(); ++i) z_dot_x += z[i] * x[i];
    // stationarity test: ||z||_q <= z.x means x is a fixed point of the map
    if (zq <= z_dot_x * (1.0 + 1e-14) ||
        (prev_gain >= 0.0 && std::fabs(gain - prev_gain) <= tol * std::max(1.0, gain))) {
      r.converged = true;
      break;
    }
    prev_gain = gain;
    if (zq == 0.0) {
      r.converged = true;
      break;
    }
    double zmax = 0.0;
    for (double v : z) zmax = std::max(zmax, std::fabs(v));
    std::vector<double> u(z.size(), 0.0);
    for (size_t i = 0; i < z.size(); ++i)
      u[i] = std::copysign(std::pow(std::fabs(z[i]) / zmax, q - 1.0), z[i]);
    const double u_norm = p_norm_vec(u, p);
    if (u_norm == 0.0) {
      r.converged = true;
      break;
    }
    for (double& v : u) v /= u_norm;
    x = std::move(u);
  }
  return r;
}

}  // namespace detail

/// Lower bound from the power iteration (all-ones start plus `restarts`
/// random positive starts, best kept), upper bound from interpolation.
/// Non-convergence leaves converged = false; the bracket stays valid.
inline PNormBracket p_norm_op_bracket(const DenseMatrix& m, double p, double tol,
                                      int max_iter, int restarts = 8,
                                      std::uint64_t seed = 0x9E3779B9ULL) {
  if (!(p > 1.0) || !std::isfinite(p))
    throw config_error("p-norm bracket requires finite p > 1");
  if (!(tol > 0.0)) throw config_error("tolerance must be > 0");
  if (max_iter < 1) throw config_error("max_iter must be >= 1");
  detail::require_finite(m.a);

  PNormBracket br;
  br.p = p;
  br.upper = interpolation_upper(m, p);
  br.witness.assign(static_cast<size_t>(m.cols), 0.0);
  br.witness[0] = 1.0;
  if (br.upper == 0.0) {  // zero matrix: norm is exactly 0
    br.converged = true;
    return br;
  }

  SplitMix64 rng(seed);
  for (int s = 0; s <= restarts; ++s) {
    std::vector<double> x0(static_cast<size_t>(m.cols), 1.0);
    if (s > 0)
      for (double& v : x0) v = rng.next_double() + 1e-3;
    auto res = detail::power_iterate(m, p, std::move(x0), tol, max_iter);
    br.iterations += res.iterations;
    if (res.gain > br.lower) {
      br.lower = res.gain;
      br.witness = std::move(res.witness);
      br.converged = res.converged;
    } else if (res.gain == br.lower && res.converged) {
      br.converged = true;
    }
  }
  // fp rounding can push the directly evaluated lower a hair past the bound
  br.upper = std::max(br.upper, br.lower);
  return br;
}

/// Accumulated floating-point error allowance for d_p(n) values of matrices
/// with entries in [0, 1]: a coarse forward-error cap on n chained dim-wide
/// products plus the norm evaluation. Margins below this are noise, not
/// evidence.
inline double fp_error_budget(int dim, int n) {
  return 64.0 * static_cast<double>(dim) * static_cast<double>(n + 1) *
         std::numeric_limits<double>::epsilon();
}

struct LpSearchConfig {
  std::uint64_t master_seed = 0xD15EA5EULL;
  int trials = 200;
  int dim_min = 2;
  int dim_max = 6;
  int horizon = 8;
  std::vector<double> p_list = {1.5, 2.0, 3.0};
  double margin_tol = 1e-6;
  double tol = 1e-12;
  int max_iter = 2000;
  int restarts = 8;
  double density = 0.25;  // probability of a zero entry
  int magnitude_grid = 8;

  void validate() const {
    if (trials < 1) throw config_error("trials must be >= 1");
    if (dim_min < 1 || dim_min > dim_max)
      throw config_error("need 1 <= dim_min <= dim_max");
    if (horizon < 2) throw config_error("lp search horizon must be >= 2");
    if (p_list.empty()) throw config_error("p list must not be empty");
    for (double p : p_list)
      if (!(p > 1.0) || !std::isfinite(p))
        throw config_error("every p must be finite and > 1 (at p = 1 the "
                           "theorem holds; nothing to search)");
    if (!(margin_tol > 0.0)) throw config_error("margin_tol must be > 0");
    if (!(tol > 0.0)) throw config_error("tol must be > 0");
    if (max_iter < 1) throw config_error("max_iter must be >= 1");
    if (restarts < 0) throw config_error("restarts must be >= 0");
    if (!(density >= 0.0 && density < 1.0))
      throw config_error("density must lie in [0, 1)");
    if (magnitude_grid < 1) throw config_error("magnitude grid must be >= 1");
  }
};

struct BracketPoint {
  int n = 0;
  double lower = 0.0;
  double upper = 0.0;
};

/// A pair where the lp separation provably (up to fp margins) drops below 1
/// at n0 and climbs back to >= 1 later -- exactly what the l1 theorem rules
/// out. Both gaps are certified with margins above the fp error budget and
/// re-validated at 10x tighter tolerance before emission.
struct FailureCandidate {
  int trial = 0;
  double p = 0.0;
  int dim = 0;
  DenseMatrix S;
  DenseMatrix T;
  int n0_claim = 0;
  double upper_at_n0 = 0.0;
  int n_violation = 0;
  double lower_at_violation = 0.0;
  double margin_n0 = 0.0;        // 1 - upper_at_n0
  double margin_violation = 0.0; // lower_at_violation - 1
  std::vector<BracketPoint> brackets;
};

struct LpSearchResult {
  LpSearchConfig config;
  long pairs_checked = 0;
  std::vector<FailureCandidate> candidates;
  double wall_time_ms = 0.0;
};

namespace detail {

inline DenseMatrix sample_grid_matrix(int dim, SplitMix64& rng, int grid,
                                      double density) {
  DenseMatrix m(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      if (rng.next_double() < density) continue;
      m.at(i, j) = static_cast<double>(rng.bounded(static_cast<std::uint64_t>(grid) + 1)) /
                   static_cast<double>(grid);
    }
  return m;
}

// Examines one (pair, p) task; returns a candidate when both gaps certify.
inline std::optional<FailureCandidate> probe_pair(const DenseMatrix& s_raw,
                                                  const DenseMatrix& t_raw,
                                                  double p, int trial,
                                                  const LpSearchConfig& cfg,
                                                  std::uint64_t task_seed) {
  DenseMatrix s = s_raw;
  DenseMatrix t = t_raw;
  // scale the whole pair so the certified upper bound of ||S||_p is <= 1;
  // one factor for both matrices keeps T <= S and positivity
  double ub = interpolation_upper(s, p);
  if (ub > 1.0) {
    const double scale = (1.0 - 1e-12) / ub;
    for (double& v : s.a) v *= scale;
    for (double& v : t.a) v *= scale;
  }
  if (interpolation_upper(s, p) > 1.0) return std::nullopt;  // fp safety

  const int dim = s.rows;
  std::vector<DenseMatrix> diffs;  // diffs[k] = S^(k+1) - T^(k+1)
  diffs.reserve(static_cast<size_t>(cfg.horizon));
  std::vector<BracketPoint> points;
  DenseMatrix sn = s;
  DenseMatrix tn = t;
  int n0 = 0;
  int n_violation = 0;
  for (int n = 1; n <= cfg.horizon; ++n) {
    if (n > 1) {
      sn = matmul(sn, s);
      tn = matmul(tn, t);
    }
    diffs.push_back(subtract(sn, tn));
    const PNormBracket br =
        p_norm_op_bracket(diffs.back(), p, cfg.tol, cfg.max_iter, cfg.restarts,
                          subseed(task_seed, static_cast<std::uint64_t>(n)));
    points.push_back(BracketPoint{n, br.lower, br.upper});
    if (n0 == 0 && br.upper < 1.0 - cfg.margin_tol) {
      n0 = n;
      continue;
    }
    if (n0 > 0 && br.lower >= 1.0 + cfg.margin_tol) {
      n_violation = n;
      break;
    }
  }
  if (n0 == 0 || n_violation == 0) return std::nullopt;

  // re-validate both gaps at 10x tighter tolerance and require margins to
  // clear the fp error budget, not only margin_tol
  const double need = std::max(cfg.margin_tol, fp_error_budget(dim, n_violation));
  const PNormBracket at_n0 = p_norm_op_bracket(
      diffs[static_cast<size_t>(n0 - 1)], p, cfg.tol / 10.0, cfg.max_iter * 10,
      cfg.restarts, subseed(task_seed, 0x5EC0ULL));
  const PNormBracket at_violation = p_norm_op_bracket(
      diffs[static_cast<size_t>(n_violation - 1)], p, cfg.tol / 10.0,
      cfg.max_iter * 10, cfg.restarts, subseed(task_seed, 0x5EC1ULL));
  if (!(at_n0.upper < 1.0 - need)) return std::nullopt;
  if (!(at_violation.lower >= 1.0 + need)) return std::nullopt;

  FailureCandidate c;
  c.trial = trial;
  c.p = p;
  c.dim = dim;
  c.S = std::move(s);
  c.T = std::move(t);
  c.n0_claim = n0;
  c.upper_at_n0 = at_n0.upper;
  c.n_violation = n_violation;
  c.lower_at_violation = at_violation.lower;
  c.margin_n0 = 1.0 - at_n0.upper;
  c.margin_violation = at_violation.lower - 1.0;
  c.brackets = std::move(points);
  return c;
}

}  // namespace detail

/// Randomized probe of the lp (p > 1) regime: samples dominated pairs,
/// contracts them in the certified sense, and reports any pair whose
/// separation sequence provably dips below 1 and returns to >= 1. An empty
/// result is a valid outcome; the search is exploratory.
inline LpSearchResult search_lp_failure(const LpSearchConfig& config,
                                        int threads = 0) {
  config.validate();
  const auto t0 = std::chrono::steady_clock::now();
  LpSearchResult result;
  result.config = config;

  std::vector<std::vector<FailureCandidate>> per_trial(
      static_cast<size_t>(config.trials));
  auto run_trial = [&](int trial) {
    SplitMix64 rng(subseed(config.master_seed, static_cast<std::uint64_t>(trial)));
    const int dim = config.dim_min + rng.bounded_int(config.dim_max - config.dim_min + 1);
    const DenseMatrix t_raw =
        detail::sample_grid_matrix(dim, rng, config.magnitude_grid, config.density);
    DenseMatrix extra =
        detail::sample_grid_matrix(dim, rng, config.magnitude_grid, config.density);
    DenseMatrix s_raw = t_raw;
    for (size_t k = 0; k < s_raw.a.size(); ++k) s_raw.a[k] += extra.a[k];
    for (size_t ip = 0; ip < config.p_list.size(); ++ip) {
      auto cand = detail::probe_pair(
          s_raw, t_raw, config.p_list[ip], trial, config,
          subseed(config.master_seed,
                  (static_cast<std::uint64_t>(trial) << 8) ^ (ip + 1)));
      if (cand) per_trial[static_cast<size_t>(trial)].push_back(std::move(*cand));
    }
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

  result.pairs_checked =
      static_cast<long>(config.trials) * static_cast<long>(config.p_list.size());
  for (auto& list : per_trial)
    for (auto& c : list) result.candidates.push_back(std::move(c));
  result.wall_time_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
          .count();
  return result;
}

}  // namespace domcheck
