#ifndef ERGM_PHASE_DIAGRAM_HPP
#define ERGM_PHASE_DIAGRAM_HPP

#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ergm/errors.hpp"
#include "ergm/meanfield.hpp"
#include "ergm/numerics.hpp"
#include "ergm/params.hpp"

namespace ergm {

struct CriticalPoint {
  double alpha;
  double h;
};

/// (alpha_c, h_c) = (27/8, ln 2 - 3/2), where the critical curve starts.
inline CriticalPoint critical_point_2p() { return {27.0 / 8.0, std::log(2.0) - 1.5}; }

struct CriticalCurvePoint {
  double alpha = 0.0;
  double h = 0.0;
  double u_low = 0.0;
  double u_high = 0.0;
  double gap = 0.0;  ///< |Phi(u_low) - Phi(u_high)|
};

namespace detail {

struct TiePoint {
  double shift = 0.0;
  double u_low = 0.0;
  double u_high = 0.0;
  double gap = 0.0;
};

// Problem with exponent E0(u) + s and objective Phi0(u) + s u / 2. Finds the s
// at which the two outer fixed points have equal objective. The bistable window
// is bounded by the values of F = logit - E0 at its two turning points; inside
// it the tie gap is increasing in s, so plain bisection applies.
inline TiePoint equal_height_shift(const std::function<double(double)>& e0,
                                   const std::function<double(double)>& e0_slope,
                                   const std::function<double(double)>& phi0) {
  const auto f = [&](double u) { return logit(u) - e0(u); };
  const auto df = [&](double u) { return 1.0 / (u * (1.0 - u)) - e0_slope(u); };

  std::vector<double> turns;
  const double lo = kBracketMargin;
  const double hi = 1.0 - kBracketMargin;
  double prev_u = lo;
  double prev_d = df(lo);
  for (int i = 1; i <= kBracketGrid; ++i) {
    const double u = lo + (hi - lo) * i / kBracketGrid;
    const double d = df(u);
    if ((prev_d > 0.0) != (d > 0.0)) turns.push_back(bisect(df, prev_u, u, d > 0.0));
    prev_u = u;
    prev_d = d;
  }
  if (turns.size() != 2) throw DomainError("no bistable window: no first-order transition here");
  const double s_top = turns[0];  // local max of F
  const double s_bot = turns[1];  // local min of F

  auto branch = [&](double shift, double a, double b) {
    return bisect([&](double u) { return f(u) - shift; }, a, b, true);
  };
  auto gap_at = [&](double shift, double& ul, double& uh) {
    ul = branch(shift, 0.0, s_top);
    uh = branch(shift, s_bot, 1.0);
    return (phi0(uh) + 0.5 * shift * uh) - (phi0(ul) + 0.5 * shift * ul);
  };

  double a = f(s_bot);
  double b = f(s_top);
  TiePoint tp;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (a + b);
    const double g = gap_at(mid, tp.u_low, tp.u_high);
    tp.shift = mid;
    tp.gap = std::abs(g);
    if (g == 0.0 || mid <= a || mid >= b) break;
    if (g < 0.0) {
      a = mid;
    } else {
      b = mid;
    }
  }
  return tp;
}

}  // namespace detail

/// Point h = q(alpha) on the first-order transition curve.
inline CriticalCurvePoint critical_h(double alpha) {
  if (!(alpha > critical_point_2p().alpha)) {
    throw DomainError("no first-order transition below alpha_c");
  }
  const auto tp = detail::equal_height_shift(
      [alpha](double u) { return alpha * u * u; }, [alpha](double u) { return 2.0 * alpha * u; },
      [alpha](double u) { return alpha / 6.0 * u * u * u - 0.5 * binary_entropy_term(u); });
  return {alpha, tp.shift, tp.u_low, tp.u_high, tp.gap};
}

/// Point of the three-parameter model's first-order surface reached by moving
/// beta1 at fixed (beta2, beta3). With beta3 = 0 or beta2 = 0 this traces the
/// coordinate-plane curves. Numerical, not certified.
struct SurfacePoint {
  double beta1 = 0.0;
  double beta2 = 0.0;
  double beta3 = 0.0;
  double u_low = 0.0;
  double u_high = 0.0;
  double gap = 0.0;
  bool certified = false;
};

inline SurfacePoint critical_beta1(double beta2, double beta3, int p, int q) {
  ThreeParam{0.0, beta2, beta3, p, q}.validate();
  const auto tp = detail::equal_height_shift(
      [=](double u) {
        return 2.0 * beta3 * q * std::pow(u, q - 1) + 2.0 * beta2 * p * std::pow(u, p - 1);
      },
      [=](double u) {
        return 2.0 * beta3 * q * (q - 1) * std::pow(u, q - 2) +
               2.0 * beta2 * p * (p - 1) * std::pow(u, p - 2);
      },
      [=](double u) {
        return beta3 * std::pow(u, q) + beta2 * std::pow(u, p) - 0.5 * binary_entropy_term(u);
      });
  return {tp.shift / 2.0, beta2, beta3, tp.u_low, tp.u_high, tp.gap, false};
}

struct C3Point {
  double u = 0.0;
  double beta1 = 0.0;
  double beta2 = 0.0;
  double beta3 = 0.0;
};

/// Parametric critical curve of the three-parameter model, for
/// (p-1)/p <= u <= (q-1)/q.
inline C3Point c3_point(double u, int p, int q) {
  if (p < 2 || q <= p) throw DomainError("C3 needs 2 <= p < q");
  const double lo = (p - 1.0) / p;
  const double hi = (q - 1.0) / q;
  if (!(u >= lo && u <= hi)) {
    throw DomainError("u = " + std::to_string(u) + " outside [(p-1)/p, (q-1)/q]: beta2 and beta3 "
                      "must satisfy the non-negativity constraints");
  }
  const double w = 1.0 - u;
  C3Point c;
  c.u = u;
  c.beta1 = 0.5 * std::log(u / w) - 1.0 / (2.0 * (p - 1) * w) +
            (p * u - (p - 1)) / (2.0 * (p - 1) * (q - 1) * w * w);
  // "+ 0.0" turns the endpoint -0 into +0.
  c.beta2 = (q * u - (q - 1)) / (2.0 * p * (p - 1) * (p - q) * std::pow(u, p - 1) * w * w) + 0.0;
  c.beta3 = (p * u - (p - 1)) / (2.0 * q * (q - 1) * (q - p) * std::pow(u, q - 1) * w * w) + 0.0;
  return c;
}

enum class Proximity { near, far, unknown };

struct NearCritical {
  Proximity status = Proximity::unknown;
  double distance = std::numeric_limits<double>::infinity();
  bool flag() const { return status == Proximity::near; }
};

inline NearCritical is_near_critical(const TwoParam& p, double tolerance) {
  const auto cp = critical_point_2p();
  double d = 0.0;
  if (p.alpha > cp.alpha) {
    d = std::abs(p.h - critical_h(p.alpha).h);
  } else {
    d = std::hypot(p.alpha - cp.alpha, p.h - cp.h);
  }
  return {d < tolerance ? Proximity::near : Proximity::far, d};
}

/// Three-parameter proximity. The p = 3, beta3 = 0 slice reduces to the
/// two-parameter curve; elsewhere only distance to C3 is known, so a point far
/// from C3 is reported as unknown.
inline NearCritical is_near_critical(const ThreeParam& p, double tolerance) {
  if (p.p == 3 && p.beta3 == 0.0) {
    return is_near_critical(TwoParam{6.0 * p.beta2, 2.0 * p.beta1}, tolerance);
  }
  if (p.q <= p.p) return {};
  const double lo = (p.p - 1.0) / p.p;
  const double hi = (p.q - 1.0) / p.q;
  constexpr int kSamples = 2000;
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= kSamples; ++i) {
    const auto c = c3_point(lo + (hi - lo) * i / kSamples, p.p, p.q);
    best = std::min(best, std::sqrt((c.beta1 - p.beta1) * (c.beta1 - p.beta1) +
                                    (c.beta2 - p.beta2) * (c.beta2 - p.beta2) +
                                    (c.beta3 - p.beta3) * (c.beta3 - p.beta3)));
  }
  return {best < tolerance ? Proximity::near : Proximity::unknown, best};
}

inline NearCritical is_near_critical(const ModelParams& p, double tolerance) {
  return std::visit([&](const auto& x) { return is_near_critical(x, tolerance); }, p);
}

}  // namespace ergm

#endif  // ERGM_PHASE_DIAGRAM_HPP
