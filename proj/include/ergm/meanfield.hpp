#ifndef ERGM_MEANFIELD_HPP
#define ERGM_MEANFIELD_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "ergm/errors.hpp"
#include "ergm/numerics.hpp"
#include "ergm/params.hpp"

namespace ergm {

struct FixedPoint {
  double u = 0.0;
  double residual = 0.0;   ///< |sigmoid(E(u)) - u|
  double objective = 0.0;  ///< variational objective at u
  bool local_max = false;
};

struct MeanFieldSolution {
  std::vector<FixedPoint> fixed_points;  ///< sorted by u
  double u_star = 0.0;
  double free_energy = 0.0;
  /// du*/dalpha (two-parameter) or du*/dbeta2 (three-parameter).
  double du_dparam = 0.0;
  /// 1 - u(1-u) E'(u) at u*; zero at a critical point.
  double curvature = 0.0;
  /// NaN when the variance is undefined (degenerate or critical).
  double clt_variance = std::numeric_limits<double>::quiet_NaN();
  bool degenerate = false;
};

/// Free-energy ties closer than this are reported as degenerate.
inline constexpr double kDegeneracyTolerance = 1e-10;
/// Below this curvature the maximizer is treated as critical.
inline constexpr double kCriticalCurvature = 1e-9;

/// Scalar mean-field problem u = sigmoid(E(u)) with objective Phi, where
/// Phi'(u) = (E(u) - logit(u)) / 2.
struct MeanFieldProblem {
  std::function<double(double)> exponent;        ///< E(u)
  std::function<double(double)> exponent_slope;  ///< E'(u)
  std::function<double(double)> exponent_param;  ///< dE/dparam at fixed u
  std::function<double(double)> objective;       ///< Phi(u), continuous on [0,1]
};

inline MeanFieldProblem two_param_problem(const TwoParam& p) {
  const double a = p.alpha;
  const double h = p.h;
  return {
      [a, h](double u) { return a * u * u + h; },
      [a](double u) { return 2.0 * a * u; },
      [](double u) { return u * u; },
      [a, h](double u) { return a / 6.0 * u * u * u + h / 2.0 * u - 0.5 * binary_entropy_term(u); },
  };
}

inline MeanFieldProblem three_param_problem(const ThreeParam& p) {
  const double b1 = p.beta1, b2 = p.beta2, b3 = p.beta3;
  const int pe = p.p, qe = p.q;
  return {
      [=](double u) {
        return 2.0 * b3 * qe * std::pow(u, qe - 1) + 2.0 * b2 * pe * std::pow(u, pe - 1) + 2.0 * b1;
      },
      [=](double u) {
        return 2.0 * b3 * qe * (qe - 1) * std::pow(u, qe - 2) +
               2.0 * b2 * pe * (pe - 1) * std::pow(u, pe - 2);
      },
      [=](double u) { return 2.0 * pe * std::pow(u, pe - 1); },
      [=](double u) {
        return b3 * std::pow(u, qe) + b2 * std::pow(u, pe) + b1 * u - 0.5 * binary_entropy_term(u);
      },
  };
}

namespace detail {

inline constexpr int kBracketGrid = 10000;
inline constexpr double kBracketMargin = 1e-9;

// Bisection on a monotone piece; f(lo) and f(hi) have opposite signs, with
// lo == 0 / hi == 1 standing for -inf / +inf.
inline double bisect(const std::function<double(double)>& f, double lo, double hi, bool rising) {
  for (int i = 0; i < 2000; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (hi - lo <= 1e-13 * std::max(hi, 1e-300)) break;
    const double v = f(mid);
    if ((v < 0.0) == rising) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace detail

/// Every root of sigmoid(E(u)) = u in (0,1). The function F = logit(u) - E(u)
/// is split into monotone pieces at the sign changes of F' (bracketed on a
/// uniform grid), and each piece is searched by bisection plus a Newton polish.
inline std::vector<FixedPoint> solve_fixed_points(const MeanFieldProblem& prob) {
  const auto f = [&](double u) { return logit(u) - prob.exponent(u); };
  const auto df = [&](double u) { return 1.0 / (u * (1.0 - u)) - prob.exponent_slope(u); };

  std::vector<double> cuts{0.0};
  const double lo = detail::kBracketMargin;
  const double hi = 1.0 - detail::kBracketMargin;
  double prev_u = lo;
  double prev_d = df(lo);
  for (int i = 1; i <= detail::kBracketGrid; ++i) {
    const double u = lo + (hi - lo) * i / detail::kBracketGrid;
    const double d = df(u);
    if ((prev_d > 0.0) != (d > 0.0)) cuts.push_back(detail::bisect(df, prev_u, u, d > 0.0));
    prev_u = u;
    prev_d = d;
  }
  cuts.push_back(1.0);

  std::vector<FixedPoint> out;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i];
    const double b = cuts[i + 1];
    const double fa = a == 0.0 ? kNegInf : f(a);
    const double fb = b == 1.0 ? -kNegInf : f(b);
    if (fa == 0.0 || fb == 0.0 || (fa < 0.0) == (fb < 0.0)) {
      if (fa == 0.0 && a > 0.0) out.push_back({a});
      continue;
    }
    const bool rising = fb > fa;
    double u = detail::bisect(f, a, b, rising);
    for (int s = 0; s < 5; ++s) {
      const double slope = df(u);
      if (slope == 0.0) break;
      const double next = u - f(u) / slope;
      if (!(next > a && next < b) || std::abs(f(next)) >= std::abs(f(u))) break;
      u = next;
    }
    out.push_back({u});
  }

  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.u < y.u; });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const auto& x, const auto& y) { return std::abs(x.u - y.u) < 1e-12; }),
            out.end());
  for (auto& fp : out) {
    fp.residual = std::abs(sigmoid(prob.exponent(fp.u)) - fp.u);
    fp.objective = prob.objective(fp.u);
    fp.local_max = df(fp.u) > 0.0;
  }
  return out;
}

/// Maximizes the variational objective over the fixed points.
inline MeanFieldSolution solve_mean_field(const MeanFieldProblem& prob) {
  MeanFieldSolution sol;
  sol.fixed_points = solve_fixed_points(prob);
  if (sol.fixed_points.empty()) throw NumericalError("no fixed point found in (0,1)", 1.0);

  std::vector<double> values;
  const FixedPoint* best = nullptr;
  for (const auto& fp : sol.fixed_points) {
    if (!fp.local_max && sol.fixed_points.size() > 1) continue;
    values.push_back(fp.objective);
    if (best == nullptr || fp.objective > best->objective) best = &fp;
  }
  if (best == nullptr) best = &sol.fixed_points.front();
  std::sort(values.rbegin(), values.rend());
  sol.degenerate = values.size() > 1 && values[0] - values[1] < kDegeneracyTolerance;

  // Endpoints by continuity; the supremum is interior for finite parameters.
  const double edge = std::max(prob.objective(0.0), prob.objective(1.0));
  if (edge > best->objective + 1e-12) {
    throw NumericalError("objective maximized at the boundary", edge - best->objective);
  }

  const double u = best->u;
  sol.u_star = u;
  sol.free_energy = best->objective;
  const double s = u * (1.0 - u);
  sol.curvature = 1.0 - s * prob.exponent_slope(u);
  sol.du_dparam = s * prob.exponent_param(u) / sol.curvature;
  return sol;
}

inline std::vector<FixedPoint> fixed_points_2p(const TwoParam& p) {
  return solve_fixed_points(two_param_problem(p));
}

inline std::vector<FixedPoint> fixed_points_3p(const ThreeParam& p) {
  p.validate();
  return solve_fixed_points(three_param_problem(p));
}

namespace detail {

inline bool variance_defined(const MeanFieldSolution& s) {
  return !s.degenerate && s.curvature > kCriticalCurvature;
}

}  // namespace detail

inline MeanFieldSolution free_energy_2p(const TwoParam& p) {
  auto sol = solve_mean_field(two_param_problem(p));
  if (detail::variance_defined(sol)) sol.clt_variance = 3.0 * sol.u_star * sol.u_star * sol.du_dparam;
  return sol;
}

inline MeanFieldSolution free_energy_3p(const ThreeParam& p) {
  p.validate();
  auto sol = solve_mean_field(three_param_problem(p));
  if (detail::variance_defined(sol)) {
    sol.clt_variance = 18.0 * sol.u_star * sol.u_star * sol.du_dparam;
  }
  return sol;
}

/// v(alpha,h) = 3 u*^2 du*/dalpha, with du*/dalpha = u^3(1-u) / (1 - 2 alpha u^2 (1-u)).
inline double clt_variance_2p(const TwoParam& p) {
  const auto sol = free_energy_2p(p);
  if (std::isnan(sol.clt_variance)) {
    throw DomainError("on critical set, CLT variance undefined");
  }
  return sol.clt_variance;
}

/// v(beta1,beta2,beta3) = 18 u*^2 du*/dbeta2.
inline double clt_variance_3p(const ThreeParam& p) {
  const auto sol = free_energy_3p(p);
  if (std::isnan(sol.clt_variance)) {
    throw DomainError("on critical set, CLT variance undefined");
  }
  return sol.clt_variance;
}

struct ConjectureComparison {
  double u_star = 0.0;
  double v_theorem = 0.0;
  double v_conjecture = 0.0;
  double ratio = 0.0;  ///< v_conjecture / v_theorem
};

/// Compares v = 3u*^2 du*/dalpha with the alternative form 3u*^4 / (4 c0),
/// c0 = (1 - 2 alpha u*^2 (1-u*)) / (4 alpha u* (1-u*)).
inline ConjectureComparison conjecture_check(const TwoParam& p) {
  if (p.alpha == 0.0) throw DomainError("conjectured variance is undefined at alpha = 0");
  const auto sol = free_energy_2p(p);
  if (std::isnan(sol.clt_variance)) throw DomainError("on critical set, CLT variance undefined");
  const double u = sol.u_star;
  const double c0 = (1.0 - 2.0 * p.alpha * u * u * (1.0 - u)) / (4.0 * p.alpha * u * (1.0 - u));
  ConjectureComparison r;
  r.u_star = u;
  r.v_theorem = sol.clt_variance;
  r.v_conjecture = 3.0 * u * u * u * u / (4.0 * c0);
  r.ratio = r.v_conjecture / r.v_theorem;
  return r;
}

}  // namespace ergm

#endif  // ERGM_MEANFIELD_HPP
