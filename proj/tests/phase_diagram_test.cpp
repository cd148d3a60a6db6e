#include <gtest/gtest.h>

#include <array>
#include <cmath>

#include "ergm/meanfield.hpp"
#include "ergm/phase_diagram.hpp"
#include "oracles.hpp"

namespace ergm {
namespace {

constexpr double kAlphaC = 27.0 / 8;

double phi2(double a, double h, double u) {
  return a / 6 * u * u * u + h / 2 * u - 0.5 * (u * std::log(u) + (1 - u) * std::log(1 - u));
}

TEST(CriticalPoint, ExactValues) {
  const auto c = critical_point_2p();
  EXPECT_EQ(c.alpha, 3.375);
  EXPECT_EQ(c.h, std::log(2.0) - 1.5);
  EXPECT_NEAR(c.h, -0.80685281944, 1e-11);
}

TEST(CriticalH, RejectsSubcritical) {
  EXPECT_THROW(critical_h(kAlphaC), DomainError);
  EXPECT_THROW(critical_h(1.0), DomainError);
  try {
    critical_h(2.0);
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("no first-order transition below alpha_c"),
              std::string::npos);
  }
}

TEST(CriticalH, TiedFixedPoints) {
  for (int i = 1; i <= 20; ++i) {
    const double a = kAlphaC + 5.0 * i / 20;
    const auto c = critical_h(a);
    EXPECT_LT(c.gap, 1e-10) << a;
    EXPECT_LT(c.u_low, c.u_high);
    EXPECT_LT(c.h, critical_point_2p().h);
    // Independent recomputation of the tie and the fixed-point residuals.
    EXPECT_LT(std::abs(phi2(a, c.h, c.u_low) - phi2(a, c.h, c.u_high)), 1e-10);
    EXPECT_LT(std::abs(oracle::logistic(a * c.u_low * c.u_low + c.h) - c.u_low), 1e-12);
    EXPECT_LT(std::abs(oracle::logistic(a * c.u_high * c.u_high + c.h) - c.u_high), 1e-12);
  }
}

TEST(CriticalH, StrictlyDecreasing) {
  double prev = critical_point_2p().h;
  for (double a = kAlphaC + 0.1; a <= kAlphaC + 5.0 + 1e-12; a += 0.1) {
    const double h = critical_h(a).h;
    EXPECT_LT(h, prev) << a;
    prev = h;
  }
  EXPECT_GT(critical_h(4.0).h, critical_h(5.0).h);
}

TEST(CriticalH, ApproachesCriticalPoint) {
  const double hc = critical_point_2p().h;
  double prev = 1e300;
  for (int k = 2; k <= 5; ++k) {
    const double d = std::abs(critical_h(kAlphaC + std::pow(10.0, -k)).h - hc);
    EXPECT_LT(d, prev);
    prev = d;
  }
  EXPECT_LT(prev, 1e-4);
}

TEST(CriticalH, MaximizerJumpsAcrossCurve) {
  for (double a : {4.0, 6.0}) {
    const auto c = critical_h(a);
    const double lo = free_energy_2p({a, c.h - 1e-3}).u_star;
    const double hi = free_energy_2p({a, c.h + 1e-3}).u_star;
    EXPECT_LT(lo, 0.5 * (c.u_low + c.u_high));
    EXPECT_GT(hi, 0.5 * (c.u_low + c.u_high));
  }
}

TEST(CriticalBeta1, TriangleSliceMatchesTwoParamCurve) {
  for (double a : {4.0, 5.5}) {
    const auto s = critical_beta1(a / 6, 0.0, 3, 4);
    EXPECT_NEAR(s.beta1, critical_h(a).h / 2, 1e-10);
    EXPECT_FALSE(s.certified);
    EXPECT_LT(s.gap, 1e-10);
  }
}

TEST(C3, EndpointZeros) {
  for (auto [p, q] : {std::pair{2, 3}, {3, 5}, {3, 14}}) {
    EXPECT_LT(std::abs(c3_point((p - 1.0) / p, p, q).beta3), 1e-14);
    EXPECT_LT(std::abs(c3_point((q - 1.0) / q, p, q).beta2), 1e-14);
  }
}

TEST(C3, NonNegativeOnRange) {
  for (auto [p, q] : {std::pair{2, 3}, {3, 5}, {3, 14}, {2, 9}}) {
    const double lo = (p - 1.0) / p, hi = (q - 1.0) / q;
    for (int i = 0; i <= 50; ++i) {
      const auto c = c3_point(lo + (hi - lo) * i / 50, p, q);
      EXPECT_GE(c.beta2, -1e-14);
      EXPECT_GE(c.beta3, -1e-14);
    }
  }
}

TEST(C3, RejectsOutOfRange) {
  EXPECT_THROW(c3_point(0.4, 2, 3), DomainError);
  EXPECT_THROW(c3_point(0.7, 2, 3), DomainError);
  EXPECT_THROW(c3_point(0.6, 3, 3), DomainError);
  try {
    c3_point(0.9, 2, 3);
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("non-negativity"), std::string::npos);
  }
}

TEST(C3, RetypedFormulas) {
  const double u = 0.55;
  const double p = 2, q = 3, w = 1 - u;
  const double b1 = 0.5 * std::log(u / w) - 1 / (2 * (p - 1) * w) +
                    (p * u - (p - 1)) / (2 * (p - 1) * (q - 1) * w * w);
  const double b2 = (q * u - (q - 1)) / (2 * p * (p - 1) * (p - q) * std::pow(u, p - 1) * w * w);
  const double b3 = (p * u - (p - 1)) / (2 * q * (q - 1) * (q - p) * std::pow(u, q - 1) * w * w);
  const auto c = c3_point(u, 2, 3);
  EXPECT_DOUBLE_EQ(c.beta1, b1);
  EXPECT_DOUBLE_EQ(c.beta2, b2);
  EXPECT_DOUBLE_EQ(c.beta3, b3);
}

// Triple-root conditions g = g' = g'' = 0 for g(u) = E(u) - logit(u), with E
// linear in (beta1, beta2, beta3); solved by Cramer's rule.
std::array<double, 3> triple_root_betas(double u, int p, int q) {
  const double w = 1 - u;
  const double a[3][3] = {
      {2.0, 2.0 * p * std::pow(u, p - 1), 2.0 * q * std::pow(u, q - 1)},
      {0.0, 2.0 * p * (p - 1) * std::pow(u, p - 2), 2.0 * q * (q - 1) * std::pow(u, q - 2)},
      {0.0, 2.0 * p * (p - 1) * (p - 2) * std::pow(u, std::max(p - 3, 0)) * (p >= 3 ? 1 : 0),
       2.0 * q * (q - 1) * (q - 2) * std::pow(u, q - 3)}};
  const double rhs[3] = {std::log(u / w), 1.0 / (u * w), (2 * u - 1) / (u * u * w * w)};
  auto det = [](const double m[3][3]) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  };
  const double d = det(a);
  std::array<double, 3> x{};
  for (int c = 0; c < 3; ++c) {
    double m[3][3];
    for (int r = 0; r < 3; ++r)
      for (int k = 0; k < 3; ++k) m[r][k] = k == c ? rhs[r] : a[r][k];
    x[static_cast<std::size_t>(c)] = det(m) / d;
  }
  return x;
}

TEST(C3, MatchesTripleRootSystem) {
  for (auto [p, q] : {std::pair{2, 3}, {3, 5}, {2, 6}}) {
    const double lo = (p - 1.0) / p, hi = (q - 1.0) / q;
    for (int i = 0; i <= 10; ++i) {
      const double u = lo + (hi - lo) * i / 10;
      const auto c = c3_point(u, p, q);
      const auto x = triple_root_betas(u, p, q);
      EXPECT_NEAR(c.beta1, x[0], 1e-9 * std::max(1.0, std::abs(x[0])));
      EXPECT_NEAR(c.beta2, x[1], 1e-9 * std::max(1.0, std::abs(x[1])));
      EXPECT_NEAR(c.beta3, x[2], 1e-9 * std::max(1.0, std::abs(x[2])));
    }
  }
}

TEST(C3, MeanFieldIsCriticalAlongCurve) {
  for (auto [p, q] : {std::pair{2, 3}, {3, 5}}) {
    const double lo = (p - 1.0) / p, hi = (q - 1.0) / q;
    for (int i = 1; i <= 10; ++i) {
      const double u = lo + (hi - lo) * i / 11;
      const auto c = c3_point(u, p, q);
      const auto s = free_energy_3p({c.beta1, c.beta2, c.beta3, p, q});
      EXPECT_NEAR(s.u_star, u, 1e-4);
      EXPECT_LT(std::abs(s.curvature), 1e-6) << p << " " << q << " " << u;
      EXPECT_TRUE(std::isnan(s.clt_variance));
    }
  }
}

TEST(NearCritical, TwoParamExamples) {
  const auto cp = critical_point_2p();
  const auto at = is_near_critical(TwoParam{cp.alpha, cp.h}, 0.1);
  EXPECT_TRUE(at.flag());
  EXPECT_EQ(at.distance, 0.0);
  const auto on_curve = is_near_critical(TwoParam{kAlphaC + 1, critical_h(kAlphaC + 1).h}, 0.1);
  EXPECT_TRUE(on_curve.flag());
  EXPECT_LT(on_curve.distance, 1e-12);
  const auto origin = is_near_critical(TwoParam{0, 0}, 0.1);
  EXPECT_FALSE(origin.flag());
  EXPECT_GT(origin.distance, 3.0);
  const auto nudge = critical_h(kAlphaC + 1e-3);
  EXPECT_TRUE(is_near_critical(TwoParam{nudge.alpha, nudge.h}, 0.1).flag());
  EXPECT_FALSE(is_near_critical(ModelParams{TwoParam{1.0, -0.5}}, 0.1).flag());
}

TEST(NearCritical, ThreeParam) {
  const auto c = c3_point(0.6, 2, 3);
  const auto on = is_near_critical(ThreeParam{c.beta1, c.beta2, c.beta3, 2, 3}, 0.01);
  EXPECT_TRUE(on.flag());
  EXPECT_LT(on.distance, 1e-3);
  const auto far = is_near_critical(ThreeParam{5.0, 0.0, 3.0, 2, 3}, 0.01);
  EXPECT_EQ(far.status, Proximity::unknown);
  const auto slice = is_near_critical(ThreeParam{-1.0, 1.0, 0.0, 3, 4}, 0.1);
  EXPECT_EQ(slice.status, is_near_critical(TwoParam{6.0, -2.0}, 0.1).status);
}

}  // namespace
}  // namespace ergm
