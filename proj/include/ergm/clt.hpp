#ifndef ERGM_CLT_HPP
#define ERGM_CLT_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

#include "ergm/enumeration.hpp"
#include "ergm/errors.hpp"
#include "ergm/exact.hpp"
#include "ergm/meanfield.hpp"
#include "ergm/numerics.hpp"
#include "ergm/sampler.hpp"

namespace ergm {

inline double standard_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

/// Sup-norm distance between the empirical CDF of xs and cdf.
template <typename Cdf>
double ks_distance(std::vector<double> xs, Cdf&& cdf) {
  if (xs.empty()) return 0.0;
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = cdf(xs[i]);
    d = std::max({d, (static_cast<double>(i) + 1.0) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

/// Mean accumulated as offsets from the first value, so constant input is exact.
inline double mean_of(std::span<const double> xs) {
  if (xs.empty()) return 0.0;
  const double pivot = xs.front();
  double s = 0.0;
  for (double x : xs) s += x - pivot;
  return pivot + s / static_cast<double>(xs.size());
}

/// Unbiased sample variance (two-pass).
inline double variance_of(std::span<const double> xs) {
  if (xs.size() < 2) return 0.0;
  const double mu = mean_of(xs);
  double s = 0.0;
  for (double x : xs) s += (x - mu) * (x - mu);
  return s / static_cast<double>(xs.size() - 1);
}

/// Effective sample size of one autocorrelated series by batch means.
inline double batch_means_ess(std::span<const double> xs, int batches = 50) {
  const std::size_t n = xs.size();
  const std::size_t b = n / static_cast<std::size_t>(batches);
  if (b < 2) return static_cast<double>(n);
  std::vector<double> means;
  means.reserve(static_cast<std::size_t>(batches));
  for (int k = 0; k < batches; ++k) {
    means.push_back(mean_of(xs.subspan(static_cast<std::size_t>(k) * b, b)));
  }
  const double s2 = variance_of(xs);
  const double bm = static_cast<double>(b) * variance_of(means);
  if (bm <= 0.0) return static_cast<double>(n);
  return std::min(static_cast<double>(n), static_cast<double>(n) * s2 / bm);
}

enum class Centering { empirical, exact };

/// Standardized draws: W uses floor(T/n), W_full uses T/n; frac holds {T/n}.
struct Standardized {
  std::vector<double> w_floor;
  std::vector<double> w_full;
  std::vector<double> frac;
};

/// sqrt(6)(X - mean)/n for X = floor(T/n) and X = T/n. With Centering::exact the
/// means come from `exact` (floored-measure moments); otherwise from the draws.
inline Standardized standardize(std::span<const Draw> draws, int n, Centering center,
                                const std::optional<FloorMoments>& exact = std::nullopt) {
  if (draws.empty()) throw DomainError("standardize needs a nonempty series");
  if (center == Centering::exact && !exact) {
    throw DomainError("exact centering needs exact moments");
  }
  Standardized s;
  std::vector<double> floor_vals, full_vals;
  for (const auto& d : draws) {
    floor_vals.push_back(static_cast<double>(floor_div(d.m, n)));
    full_vals.push_back(static_cast<double>(d.m) / n);
    s.frac.push_back(static_cast<double>(d.m % n) / n);
  }
  const double mu_floor = center == Centering::exact ? exact->mean_floor : mean_of(floor_vals);
  const double mu_full =
      center == Centering::exact ? exact->mean_triangles / n : mean_of(full_vals);
  const double scale = std::sqrt(6.0) / n;
  for (std::size_t i = 0; i < draws.size(); ++i) {
    s.w_floor.push_back(scale * (floor_vals[i] - mu_floor));
    s.w_full.push_back(scale * (full_vals[i] - mu_full));
  }
  return s;
}

inline std::vector<Draw> pooled_draws(std::span<const SampleSeries> series) {
  std::vector<Draw> out;
  for (const auto& s : series) out.insert(out.end(), s.draws.begin(), s.draws.end());
  return out;
}

struct CltReport {
  int n = 0;
  std::size_t draws = 0;
  std::vector<double> w_values;  ///< standardized T/n statistic
  double v_theory = 0.0;
  double v_empirical = 0.0;        ///< sample variance of w_values
  double v_empirical_floor = 0.0;  ///< sample variance of the floor statistic
  double variance_ratio = 0.0;
  double ks_distance = 0.0;  ///< of w/sqrt(v_theory) against N(0,1)
  double ess = 0.0;
  double ks_threshold_99 = 0.0;  ///< 1.63 / sqrt(ess)
  double frac_mean = 0.0;
  double frac_var = 0.0;
  double max_decomposition_error = 0.0;
};

/// Gaussianity diagnostics for pooled chains against the mean-field variance.
/// Each chain is standardized around the pooled mean; ESS is summed per chain.
inline CltReport normality_report(std::span<const SampleSeries> series, double v_theory) {
  if (!(v_theory > 0.0)) throw DomainError("normality_report needs v_theory > 0");
  if (series.empty()) throw DomainError("normality_report needs at least one series");
  const int n = series.front().n;
  const auto draws = pooled_draws(series);
  const auto st = standardize(draws, n, Centering::empirical);

  CltReport r;
  r.n = n;
  r.draws = draws.size();
  r.w_values = st.w_full;
  r.v_theory = v_theory;
  r.v_empirical = variance_of(st.w_full);
  r.v_empirical_floor = variance_of(st.w_floor);
  r.variance_ratio = r.v_empirical / v_theory;
  const double sd = std::sqrt(v_theory);
  r.ks_distance = ks_distance(st.w_full, [sd](double x) { return standard_normal_cdf(x / sd); });

  std::size_t offset = 0;
  for (const auto& s : series) {
    r.ess += batch_means_ess(std::span<const double>(st.w_full).subspan(offset, s.draws.size()));
    offset += s.draws.size();
  }
  r.ks_threshold_99 = 1.63 / std::sqrt(r.ess);
  r.frac_mean = mean_of(st.frac);
  r.frac_var = variance_of(st.frac);

  const double scale = std::sqrt(6.0) / n;
  for (std::size_t i = 0; i < draws.size(); ++i) {
    const double lhs = st.w_full[i] - st.w_floor[i];
    const double rhs = scale * (st.frac[i] - r.frac_mean);
    r.max_decomposition_error = std::max(r.max_decomposition_error, std::abs(lhs - rhs));
  }
  return r;
}

/// Same diagnostics on i.i.d. values already on the W scale (one batch).
inline CltReport normality_report(std::span<const double> w, double v_theory) {
  if (!(v_theory > 0.0)) throw DomainError("normality_report needs v_theory > 0");
  CltReport r;
  r.draws = w.size();
  r.w_values.assign(w.begin(), w.end());
  r.v_theory = v_theory;
  r.v_empirical = variance_of(w);
  r.variance_ratio = r.v_empirical / v_theory;
  const double sd = std::sqrt(v_theory);
  r.ks_distance = ks_distance(r.w_values, [sd](double x) { return standard_normal_cdf(x / sd); });
  r.ess = batch_means_ess(w);
  r.ks_threshold_99 = 1.63 / std::sqrt(r.ess);
  return r;
}

struct C2Row {
  int n = 0;
  double t_n = 0.0;
  double c1_at_zero = 0.0;  ///< c'_n(0), compare with u*^3
  double c2 = 0.0;          ///< c''_n(t_n), compare with v(alpha,h)
  double u3_limit = 0.0;
  double v_limit = 0.0;
};

/// Exact c''_n(t_n) with t_n = sqrt(6) t / n over a range of n, beside the
/// mean-field limits. A trend table; no convergence is asserted at these sizes.
inline std::vector<C2Row> c2_sequence(const TwoParam& params, double t, int n_min, int n_max,
                                      const std::function<CoefficientTable(int)>& table_for) {
  const auto mf = free_energy_2p(params);
  std::vector<C2Row> rows;
  for (int n = n_min; n <= n_max; ++n) {
    const auto table = table_for(n);
    C2Row r;
    r.n = n;
    r.t_n = std::sqrt(6.0) * t / n;
    r.c1_at_zero = cumulant_gen(table, params, 0.0).c1;
    r.c2 = cumulant_gen(table, params, r.t_n).c2;
    r.u3_limit = mf.u_star * mf.u_star * mf.u_star;
    r.v_limit = mf.clt_variance;
    rows.push_back(r);
  }
  return rows;
}

struct FractionalPartReport {
  int n = 0;
  double mean = 0.0;
  double variance = 0.0;
  std::vector<double> histogram;  ///< P({T/n} = k/n), k = 0..n-1
  double exp_moment = 0.0;        ///< E[exp(alpha {T/n})]
  double exp_moment_bound = 0.0;  ///< e^{|alpha|}
  double exp_moment_variance = 0.0;  ///< Var(exp(alpha {T/n}))
  bool bound_holds = false;
};

namespace detail {

inline FractionalPartReport fractional_from_law(int n, double alpha,
                                                const std::vector<double>& p_by_residue) {
  FractionalPartReport r;
  r.n = n;
  r.histogram = p_by_residue;
  double e1 = 0.0, e2 = 0.0;
  for (int k = 0; k < n; ++k) {
    const double f = static_cast<double>(k) / n;
    const double p = p_by_residue[static_cast<std::size_t>(k)];
    r.mean += p * f;
    e1 += p * std::exp(alpha * f);
    e2 += p * std::exp(2.0 * alpha * f);
  }
  for (int k = 0; k < n; ++k) {
    const double f = static_cast<double>(k) / n - r.mean;
    r.variance += p_by_residue[static_cast<std::size_t>(k)] * f * f;
  }
  r.exp_moment = e1;
  r.exp_moment_variance = std::max(0.0, e2 - e1 * e1);
  r.exp_moment_bound = std::exp(std::abs(alpha));
  r.bound_holds = std::isfinite(e1) && std::isfinite(e2) && e1 <= r.exp_moment_bound;
  return r;
}

}  // namespace detail

/// Exact law of {T/n} under the floored measure.
inline FractionalPartReport fractional_part_report(const CoefficientTable& table,
                                                   const TwoParam& params) {
  const int n = table.n();
  const auto law = floored_triangle_law(table, params);
  std::vector<double> by_residue(static_cast<std::size_t>(n), 0.0);
  for (std::size_t m = 0; m < law.size(); ++m) by_residue[m % static_cast<std::size_t>(n)] += law[m];
  return detail::fractional_from_law(n, params.alpha, by_residue);
}

/// Empirical law of {T/n} from pooled draws.
inline FractionalPartReport fractional_part_report(std::span<const Draw> draws, int n,
                                                   double alpha) {
  if (draws.empty()) throw DomainError("fractional_part_report needs draws");
  std::vector<double> by_residue(static_cast<std::size_t>(n), 0.0);
  for (const auto& d : draws) by_residue[static_cast<std::size_t>(d.m % n)] += 1.0;
  for (auto& p : by_residue) p /= static_cast<double>(draws.size());
  return detail::fractional_from_law(n, alpha, by_residue);
}

}  // namespace ergm

#endif  // ERGM_CLT_HPP
