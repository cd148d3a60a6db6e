#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "ergm/enumeration.hpp"
#include "ergm/exact.hpp"
#include "ergm/polynomial.hpp"

namespace ergm {
namespace {

std::vector<Complex> disc_points(int count, double radius, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> r01(0.0, 1.0);
  std::vector<Complex> pts;
  for (int i = 0; i < count; ++i) {
    pts.push_back(std::polar(radius * std::sqrt(r01(rng)), 2 * std::numbers::pi * r01(rng)));
  }
  return pts;
}

TEST(BuildPolynomial, ThreeVerticesIsConstant) {
  const auto t = enumerate_coefficients(3);
  for (double h : {-1.0, 0.0, 0.7}) {
    const auto p = build_polynomial(t, h);
    EXPECT_EQ(p.degree, 0);
    ASSERT_EQ(p.log_coeffs.size(), 1U);
    EXPECT_NEAR(p.log_coeffs[0], 3 * std::log1p(std::exp(h)), 1e-14);
  }
}

TEST(BuildPolynomial, Degrees) {
  EXPECT_EQ(polynomial_degree(4), 1);
  EXPECT_EQ(polynomial_degree(5), 2);
  EXPECT_EQ(polynomial_degree(7), 5);
  EXPECT_EQ(polynomial_degree(8), 7);
  EXPECT_EQ(build_polynomial(enumerate_coefficients(7), 0).degree, 5);
}

TEST(BuildPolynomial, ReproducesFlooredPartition) {
  for (int n = 4; n <= 7; ++n) {
    const auto t = enumerate_coefficients(n);
    for (double h : {-1.0, 0.0, 1.0}) {
      const auto p = build_polynomial(t, h);
      for (double a : {-1.5, 0.0, 2.0, 6.0}) {
        const double z = exact_log_partition(t, {a, h}, Hamiltonian::floored);
        EXPECT_NEAR(p.log_value(a), z, 1e-12 * std::abs(z)) << n << " " << h << " " << a;
      }
      for (double lc : p.log_coeffs) EXPECT_TRUE(std::isfinite(lc));
    }
  }
}

TEST(BuildPolynomial, RejectsTwoVertices) {
  EXPECT_THROW(build_polynomial(enumerate_coefficients(2), 0.0), DomainError);
}

TEST(FindRoots, KnownQuadratic) {
  const std::vector<double> c{2.0, -3.0, 1.0};
  auto r = polynomial_roots(c).roots;
  std::sort(r.begin(), r.end(), [](auto a, auto b) { return a.real() < b.real(); });
  ASSERT_EQ(r.size(), 2U);
  EXPECT_NEAR(r[0].real(), 1.0, 1e-13);
  EXPECT_NEAR(r[1].real(), 2.0, 1e-13);
  EXPECT_NEAR(r[0].imag(), 0.0, 1e-13);
  EXPECT_NEAR(r[1].imag(), 0.0, 1e-13);
}

TEST(FindRoots, LinearPartitionPolynomial) {
  const auto p = build_polynomial(enumerate_coefficients(4), 0.3);
  const auto r = find_roots(p);
  ASSERT_EQ(r.roots.size(), 1U);
  const double expect = -std::exp(p.log_coeffs[0] - p.log_coeffs[1]);
  EXPECT_NEAR(r.roots[0].real(), expect, 1e-12 * std::abs(expect));
  EXPECT_EQ(r.roots[0].imag(), 0.0);
}

TEST(FindRoots, DegreeZeroRejected) {
  EXPECT_THROW(find_roots(build_polynomial(enumerate_coefficients(3), 0.0)), DomainError);
}

TEST(FindRoots, Deterministic) {
  const auto p = build_polynomial(enumerate_coefficients(7), -0.4);
  const auto a = find_roots(p);
  const auto b = find_roots(p);
  EXPECT_EQ(a.roots, b.roots);
}

TEST(FindRoots, ScaleInvariant) {
  auto p = build_polynomial(enumerate_coefficients(7), 0.0);
  const auto base = find_roots(p);
  for (auto& c : p.log_coeffs) c += 250.0;
  const auto shifted = find_roots(p);
  for (std::size_t i = 0; i < base.roots.size(); ++i) {
    EXPECT_LT(std::abs(base.roots[i] - shifted.roots[i]), 1e-12 * std::abs(base.roots[i]));
  }
}

TEST(FindRoots, NonConvergenceReportsResidual) {
  const std::vector<double> c{1.0, 0.0, 0.0, 0.0, 1.0};
  try {
    polynomial_roots(c, {.tolerance = 0.0, .max_iterations = 1});
    FAIL() << "expected NumericalError";
  } catch (const NumericalError& e) {
    EXPECT_GT(e.best_residual(), 0.0);
  }
}

TEST(FactoredForm, DegreeZeroAndOrigin) {
  const auto p3 = build_polynomial(enumerate_coefficients(3), 0.2);
  const std::vector<Complex> pts{{0.5, 0.5}, {-2.0, 1.0}};
  EXPECT_EQ(verify_factored_form(p3, RootSet{}, pts), 0.0);

  const auto p6 = build_polynomial(enumerate_coefficients(6), 0.2);
  const std::vector<Complex> origin{{0.0, 0.0}};
  EXPECT_EQ(verify_factored_form(p6, find_roots(p6), origin), 0.0);
}

TEST(FactoredForm, SixVerticesRandomDisc) {
  const auto p = build_polynomial(enumerate_coefficients(6), -0.5);
  const auto r = find_roots(p);
  EXPECT_LT(verify_factored_form(p, r, disc_points(20, std::exp(2.0), 11)), 1e-8);
}

TEST(FactoredForm, SevenVerticesProductMatchesSum) {
  const auto p = build_polynomial(enumerate_coefficients(7), 0.0);
  const auto r = find_roots(p);
  EXPECT_EQ(r.roots.size(), 5U);
  EXPECT_LT(r.residual, 1e-12);
  EXPECT_LT(verify_factored_form(p, r, disc_points(20, std::exp(2.0), 5)), 1e-8);
}

TEST(Roots, ConjugateSymmetricAndOffPositiveAxis) {
  for (int n = 4; n <= 7; ++n) {
    const auto t = enumerate_coefficients(n);
    for (double h : {-1.0, -0.5, 0.0, 1.0}) {
      const auto r = find_roots(build_polynomial(t, h));
      EXPECT_LT(conjugate_symmetry_error(r), 1e-9);
      EXPECT_GT(positive_axis_clearance(r, -1.0, 1.0), 0.0);
      for (const auto& z : r.roots) {
        EXPECT_FALSE(z.real() >= 0.0 && std::abs(z.imag()) < 1e-12);
      }
    }
  }
}

TEST(Clearance, Geometry) {
  RootSet neg{{Complex(-1.0, 0.0)}};
  EXPECT_DOUBLE_EQ(positive_axis_clearance(neg, 0.0, std::log(2.0)), 2.0);
  RootSet imag{{Complex(0.0, 1.0)}};
  EXPECT_NEAR(positive_axis_clearance(imag, std::log(0.5), std::log(2.0)), std::sqrt(1.25), 1e-15);
  RootSet above{{Complex(1.0, 1.0)}};
  EXPECT_DOUBLE_EQ(positive_axis_clearance(above, std::log(0.5), std::log(2.0)), 1.0);
  EXPECT_THROW(positive_axis_clearance(neg, 1.0, 1.0), DomainError);
}

TEST(Clearance, SevenVerticesStrictlyPositive) {
  const auto r = find_roots(build_polynomial(enumerate_coefficients(7), 0.0));
  EXPECT_GT(positive_axis_clearance(r, -1.0, 1.0), 0.1);
}

}  // namespace
}  // namespace ergm
