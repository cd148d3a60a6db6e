#ifndef ERGM_POLYNOMIAL_HPP
#define ERGM_POLYNOMIAL_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <span>
#include <vector>

#include "ergm/enumeration.hpp"
#include "ergm/errors.hpp"
#include "ergm/exact.hpp"
#include "ergm/numerics.hpp"

namespace ergm {

using Complex = std::complex<double>;

/// Floored partition function as a polynomial in z = e^alpha. Coefficient k
/// aggregates every triangle count m with floor(m/n) = k; stored as logs.
struct PartitionPolynomial {
  int n = 0;
  double h = 0.0;
  int degree = 0;
  std::vector<double> log_coeffs;

  double max_log_coeff() const {
    return *std::max_element(log_coeffs.begin(), log_coeffs.end());
  }

  /// ln Z-hat at real alpha.
  double log_value(double alpha) const {
    LogSumExp acc;
    for (int k = 0; k <= degree; ++k) acc.add(log_coeffs[static_cast<std::size_t>(k)] + alpha * k);
    return acc.value();
  }

  /// Z-hat(z) * exp(-log_scale), by Horner's rule.
  Complex evaluate_scaled(Complex z, double log_scale) const {
    Complex acc = 0.0;
    for (int k = degree; k >= 0; --k) {
      acc = acc * z + std::exp(log_coeffs[static_cast<std::size_t>(k)] - log_scale);
    }
    return acc;
  }
};

/// Degree of the floored polynomial, floor((n-1)(n-2)/6).
constexpr int polynomial_degree(int n) { return (n - 1) * (n - 2) / 6; }

inline PartitionPolynomial build_polynomial(const CoefficientTable& table, double h) {
  const int n = table.n();
  if (n < 3) throw DomainError("partition polynomial needs n >= 3");
  const auto log_k = log_triangle_weights(table, h);
  PartitionPolynomial poly;
  poly.n = n;
  poly.h = h;
  poly.degree = polynomial_degree(n);
  std::vector<LogSumExp> acc(static_cast<std::size_t>(poly.degree + 1));
  for (std::size_t m = 0; m < log_k.size(); ++m) {
    acc[static_cast<std::size_t>(floor_div(static_cast<long long>(m), n))].add(log_k[m]);
  }
  poly.log_coeffs.reserve(acc.size());
  for (const auto& a : acc) poly.log_coeffs.push_back(a.value());
  return poly;
}

struct RootSet {
  std::vector<Complex> roots;
  /// max_j |P(z_j)| / sum_k |a_k| |z_j|^k
  double residual = 0.0;
  int iterations = 0;
};

struct RootFinderOptions {
  double tolerance = 1e-12;
  int max_iterations = 500;
};

namespace detail {

template <typename T>
void horner_with_derivative(std::span<const double> c, std::complex<T> z, std::complex<T>& p,
                            std::complex<T>& dp) {
  p = 0;
  dp = 0;
  for (std::size_t k = c.size(); k-- > 0;) {
    dp = dp * z + p;
    p = p * z + static_cast<T>(c[k]);
  }
}

inline double relative_residual(std::span<const double> c, Complex z) {
  Complex p = 0.0;
  double scale = 0.0;
  const double r = std::abs(z);
  for (std::size_t k = c.size(); k-- > 0;) {
    p = p * z + c[k];
    scale = scale * r + std::abs(c[k]);
  }
  return scale > 0.0 ? std::abs(p) / scale : std::abs(p);
}

// Aberth-Ehrlich iteration on coefficients already scaled so that the roots
// sit near the unit circle. c[k] multiplies w^k.
inline RootSet aberth(std::span<const double> c, const RootFinderOptions& opts) {
  const int d = static_cast<int>(c.size()) - 1;
  RootSet out;
  out.roots.resize(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j) {
    const double angle = 2.0 * std::numbers::pi * j / d + 0.4;
    const double radius = 1.0 + 0.01 * j / d;
    out.roots[static_cast<std::size_t>(j)] = std::polar(radius, angle);
  }

  bool converged = false;
  int it = 0;
  for (; it < opts.max_iterations && !converged; ++it) {
    converged = true;
    for (int j = 0; j < d; ++j) {
      auto& w = out.roots[static_cast<std::size_t>(j)];
      Complex p, dp;
      horner_with_derivative<double>(c, w, p, dp);
      if (p == 0.0) continue;
      const Complex ratio = p / dp;
      Complex repulsion = 0.0;
      for (int k = 0; k < d; ++k) {
        if (k != j) repulsion += 1.0 / (w - out.roots[static_cast<std::size_t>(k)]);
      }
      const Complex step = ratio / (1.0 - ratio * repulsion);
      w -= step;
      if (!(std::abs(step) <= opts.tolerance * std::max(1.0, std::abs(w)))) converged = false;
    }
  }
  out.iterations = it;

  // Newton polish in extended precision.
  for (auto& w : out.roots) {
    std::complex<long double> z(w.real(), w.imag());
    for (int s = 0; s < 3; ++s) {
      std::complex<long double> p, dp;
      horner_with_derivative<long double>(c, z, p, dp);
      if (p == 0.0L || dp == 0.0L) break;
      const auto next = z - p / dp;
      if (detail::relative_residual(c, Complex(static_cast<double>(next.real()),
                                                static_cast<double>(next.imag()))) >
          detail::relative_residual(c, Complex(static_cast<double>(z.real()),
                                                static_cast<double>(z.imag())))) {
        break;
      }
      z = next;
    }
    w = Complex(static_cast<double>(z.real()), static_cast<double>(z.imag()));
  }

  for (const auto& w : out.roots) out.residual = std::max(out.residual, relative_residual(c, w));
  if (!converged && out.residual > 1e-10) {
    throw NumericalError("root finder did not converge after " + std::to_string(it) +
                             " iterations (best residual " + std::to_string(out.residual) + ")",
                         out.residual);
  }
  return out;
}

}  // namespace detail

/// All complex roots of sum_k coeffs[k] z^k (real coefficients, top one nonzero).
inline RootSet polynomial_roots(std::span<const double> coeffs, const RootFinderOptions& opts = {}) {
  if (coeffs.size() < 2) throw DomainError("root finding needs degree >= 1");
  if (coeffs.back() == 0.0) throw DomainError("leading coefficient is zero");
  const int d = static_cast<int>(coeffs.size()) - 1;
  const double rho =
      coeffs.front() != 0.0 ? std::pow(std::abs(coeffs.front() / coeffs.back()), 1.0 / d) : 1.0;
  std::vector<double> scaled(coeffs.size());
  double big = 0.0;
  for (int k = 0; k <= d; ++k) {
    scaled[static_cast<std::size_t>(k)] = coeffs[static_cast<std::size_t>(k)] * std::pow(rho, k);
    big = std::max(big, std::abs(scaled[static_cast<std::size_t>(k)]));
  }
  for (auto& s : scaled) s /= big;
  auto out = detail::aberth(scaled, opts);
  for (auto& w : out.roots) w *= rho;
  return out;
}

/// Roots of the partition polynomial. The variable is rescaled by
/// (K_0/K_d)^(1/d) in log space before exponentiating, so coefficients that span
/// many decades never overflow.
inline RootSet find_roots(const PartitionPolynomial& poly, const RootFinderOptions& opts = {}) {
  const int d = poly.degree;
  if (d < 1) throw DomainError("root finding needs degree >= 1");
  const double log_rho = (poly.log_coeffs.front() - poly.log_coeffs.back()) / d;
  std::vector<double> shifted(static_cast<std::size_t>(d + 1));
  for (int k = 0; k <= d; ++k) {
    shifted[static_cast<std::size_t>(k)] = poly.log_coeffs[static_cast<std::size_t>(k)] + k * log_rho;
  }
  const double top = *std::max_element(shifted.begin(), shifted.end());
  std::vector<double> c(shifted.size());
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = std::exp(shifted[k] - top);
  auto out = detail::aberth(c, opts);
  const double rho = std::exp(log_rho);
  for (auto& w : out.roots) w *= rho;
  return out;
}

/// max over points of |K_0 prod(1 - z/z_j) - Z-hat(z)| / |Z-hat(z)|.
inline double verify_factored_form(const PartitionPolynomial& poly, const RootSet& roots,
                                   std::span<const Complex> points) {
  const double scale = poly.max_log_coeff();
  const double k0 = std::exp(poly.log_coeffs.front() - scale);
  double worst = 0.0;
  for (const auto& z : points) {
    Complex product = k0;
    for (const auto& r : roots.roots) product *= 1.0 - z / r;
    const Complex direct = poly.evaluate_scaled(z, scale);
    worst = std::max(worst, std::abs(product - direct) / std::abs(direct));
  }
  return worst;
}

/// Smallest distance from any root to the real segment [e^alpha_lo, e^alpha_hi].
inline double positive_axis_clearance(const RootSet& roots, double alpha_lo, double alpha_hi) {
  if (!(alpha_lo < alpha_hi)) throw DomainError("clearance needs alpha_lo < alpha_hi");
  const double a = std::exp(alpha_lo);
  const double b = std::exp(alpha_hi);
  double best = std::numeric_limits<double>::infinity();
  for (const auto& z : roots.roots) {
    const double x = std::clamp(z.real(), a, b);
    best = std::min(best, std::abs(z - Complex(x, 0.0)));
  }
  return best;
}

/// Largest distance from conj(z_j) to its nearest root.
inline double conjugate_symmetry_error(const RootSet& roots) {
  double worst = 0.0;
  for (const auto& z : roots.roots) {
    double nearest = std::numeric_limits<double>::infinity();
    for (const auto& w : roots.roots) nearest = std::min(nearest, std::abs(std::conj(z) - w));
    worst = std::max(worst, nearest);
  }
  return worst;
}

}  // namespace ergm

#endif  // ERGM_POLYNOMIAL_HPP
