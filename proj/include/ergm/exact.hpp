#ifndef ERGM_EXACT_HPP
#define ERGM_EXACT_HPP

#include <cmath>
#include <cstdint>
#include <vector>

#include "ergm/enumeration.hpp"
#include "ergm/numerics.hpp"
#include "ergm/params.hpp"

namespace ergm {

/// Which Hamiltonian weights the triangle count: alpha*T/n or alpha*floor(T/n).
enum class Hamiltonian { original, floored };

/// ln K_m = ln sum_l G[m,l] e^{h l} for every triangle count m (-inf if no graph).
inline std::vector<double> log_triangle_weights(const CoefficientTable& table, double h) {
  std::vector<double> out(static_cast<std::size_t>(table.max_triangles() + 1), kNegInf);
  for (std::int64_t m = 0; m <= table.max_triangles(); ++m) {
    LogSumExp acc;
    for (std::int64_t l = 0; l <= table.max_edges(); ++l) {
      const auto c = table.count(m, l);
      if (c != 0) acc.add(std::log(static_cast<double>(c)) + h * static_cast<double>(l));
    }
    out[static_cast<std::size_t>(m)] = acc.value();
  }
  return out;
}

namespace detail {

inline double triangle_exponent(double alpha, std::int64_t m, int n, Hamiltonian ham) {
  if (ham == Hamiltonian::floored) return alpha * static_cast<double>(floor_div(m, n));
  return alpha * static_cast<double>(m) / n;
}

inline double log_partition_from_weights(const std::vector<double>& log_k, double alpha, int n,
                                         Hamiltonian ham) {
  LogSumExp acc;
  for (std::size_t m = 0; m < log_k.size(); ++m) {
    acc.add(log_k[m] + triangle_exponent(alpha, static_cast<std::int64_t>(m), n, ham));
  }
  return acc.value();
}

}  // namespace detail

/// ln Z (original) or ln Z-hat (floored), by log-sum-exp over the table.
inline double exact_log_partition(const CoefficientTable& table, const TwoParam& params,
                                  Hamiltonian ham) {
  return detail::log_partition_from_weights(log_triangle_weights(table, params.h),
                                            params.alpha, table.n(), ham);
}

/// Law of the triangle count T under the floored Gibbs measure, indexed by m.
inline std::vector<double> floored_triangle_law(const CoefficientTable& table,
                                                const TwoParam& params) {
  const auto log_k = log_triangle_weights(table, params.h);
  const double log_z =
      detail::log_partition_from_weights(log_k, params.alpha, table.n(), Hamiltonian::floored);
  std::vector<double> p(log_k.size(), 0.0);
  for (std::size_t m = 0; m < p.size(); ++m) {
    const double e = log_k[m] + detail::triangle_exponent(params.alpha, static_cast<std::int64_t>(m),
                                                          table.n(), Hamiltonian::floored);
    p[m] = std::exp(e - log_z);
  }
  return p;
}

struct FloorMoments {
  double mean_floor = 0.0;      ///< E[floor(T/n)]
  double var_floor = 0.0;       ///< Var(floor(T/n))
  double mean_triangles = 0.0;  ///< E[T]
  double var_triangles = 0.0;   ///< Var(T)
  double mean_frac = 0.0;       ///< E[{T/n}]
};

/// Exact moments under the floored measure.
inline FloorMoments exact_floor_moments(const CoefficientTable& table, const TwoParam& params) {
  const auto p = floored_triangle_law(table, params);
  const int n = table.n();
  FloorMoments r;
  for (std::size_t m = 0; m < p.size(); ++m) {
    const auto mi = static_cast<std::int64_t>(m);
    r.mean_floor += p[m] * static_cast<double>(floor_div(mi, n));
    r.mean_triangles += p[m] * static_cast<double>(mi);
    r.mean_frac += p[m] * static_cast<double>(mi % n) / n;
  }
  for (std::size_t m = 0; m < p.size(); ++m) {
    const auto mi = static_cast<std::int64_t>(m);
    const double dk = static_cast<double>(floor_div(mi, n)) - r.mean_floor;
    const double dm = static_cast<double>(mi) - r.mean_triangles;
    r.var_floor += p[m] * dk * dk;
    r.var_triangles += p[m] * dm * dm;
  }
  return r;
}

/// Value and first two derivatives of the scaled cumulant generating function
/// c(t) = (6/n^2) ln E[exp(t floor(T/n))] of the floor statistic.
struct CumulantPoint {
  double t = 0.0;
  double c = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
};

/// c(t) equals (6/n^2)[ln Z-hat(alpha+t) - ln Z-hat(alpha)]; it is evaluated as a
/// log-moment under the alpha-measure so small t keeps full relative accuracy.
/// c1 and c2 are the exact mean and variance of floor(T/n) at alpha+t.
inline CumulantPoint cumulant_gen(const CoefficientTable& table, const TwoParam& params, double t) {
  const int n = table.n();
  const double scale = 6.0 / (static_cast<double>(n) * n);
  const auto p = floored_triangle_law(table, params);

  double log_mgf = 0.0;
  const double k_max = static_cast<double>(floor_div(table.max_triangles(), n));
  if (std::abs(t) * k_max <= 1.0) {
    double s = 0.0;
    for (std::size_t m = 0; m < p.size(); ++m) {
      s += p[m] * std::expm1(t * static_cast<double>(floor_div(static_cast<std::int64_t>(m), n)));
    }
    log_mgf = std::log1p(s);
  } else {
    LogSumExp acc;
    for (std::size_t m = 0; m < p.size(); ++m) {
      if (p[m] > 0.0) {
        acc.add(std::log(p[m]) +
                t * static_cast<double>(floor_div(static_cast<std::int64_t>(m), n)));
      }
    }
    log_mgf = acc.value();
  }

  const auto shifted = exact_floor_moments(table, TwoParam{params.alpha + t, params.h});
  return CumulantPoint{t, scale * log_mgf, scale * shifted.mean_floor, scale * shifted.var_floor};
}

}  // namespace ergm

#endif  // ERGM_EXACT_HPP
