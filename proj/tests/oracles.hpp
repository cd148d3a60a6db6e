// Independent brute-force references used by the tests. Nothing here calls
// into the library.
#ifndef ERGM_TESTS_ORACLES_HPP
#define ERGM_TESTS_ORACLES_HPP

#include <cmath>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

namespace oracle {

/// Adjacency matrix for the graph whose pair (i<j), taken in the order
/// j-major (0,1),(0,2),(1,2),(0,3),... has bit k of `code` set. The ordering
/// deliberately differs from the library's.
inline std::vector<std::vector<int>> adjacency(int n, std::uint64_t code) {
  std::vector<std::vector<int>> a(n, std::vector<int>(n, 0));
  int k = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i, ++k) {
      if ((code >> k) & 1U) a[i][j] = a[j][i] = 1;
    }
  }
  return a;
}

struct Counts {
  long long triangles = 0;
  long long edges = 0;
};

inline Counts count(const std::vector<std::vector<int>>& a) {
  const int n = static_cast<int>(a.size());
  Counts c;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      c.edges += a[i][j];
      for (int k = j + 1; k < n; ++k) c.triangles += a[i][j] * a[j][k] * a[i][k];
    }
  }
  return c;
}

/// Map (m, l) -> count over all 2^(n(n-1)/2) graphs by plain recounting.
inline std::map<std::pair<long long, long long>, unsigned long long> naive_table(int n) {
  std::map<std::pair<long long, long long>, unsigned long long> t;
  const int pairs = n * (n - 1) / 2;
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << pairs); ++code) {
    const auto c = count(adjacency(n, code));
    ++t[{c.triangles, c.edges}];
  }
  return t;
}

inline long long floor_div(long long a, long long b) {
  long long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

/// Direct sums over all graphs of the floored (or original) Gibbs weights.
struct NaiveSums {
  double z_floored = 0.0;
  double z_original = 0.0;
  double mean_floor = 0.0;
  double var_floor = 0.0;
  double mean_t = 0.0;
  double var_t = 0.0;
  double mean_frac = 0.0;
};

inline NaiveSums naive_sums(int n, double alpha, double h) {
  const int pairs = n * (n - 1) / 2;
  std::vector<Counts> all;
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << pairs); ++code) {
    all.push_back(count(adjacency(n, code)));
  }
  // Two passes in long double: weights and means first, then centered sums.
  using LD = long double;
  std::vector<LD> w;
  LD z = 0, zo = 0, e1 = 0, t1 = 0, f1 = 0;
  for (const auto& c : all) {
    const LD k = static_cast<LD>(floor_div(c.triangles, n));
    w.push_back(std::exp(static_cast<LD>(alpha) * k + static_cast<LD>(h) * c.edges));
    z += w.back();
    zo += std::exp(static_cast<LD>(alpha) * c.triangles / n + static_cast<LD>(h) * c.edges);
    e1 += w.back() * k;
    t1 += w.back() * c.triangles;
    f1 += w.back() * static_cast<LD>(c.triangles % n) / n;
  }
  const LD mk = e1 / z, mt = t1 / z;
  LD vk = 0, vt = 0;
  for (std::size_t i = 0; i < all.size(); ++i) {
    const LD dk = static_cast<LD>(floor_div(all[i].triangles, n)) - mk;
    const LD dt = static_cast<LD>(all[i].triangles) - mt;
    vk += w[i] * dk * dk;
    vt += w[i] * dt * dt;
  }
  NaiveSums s;
  s.z_floored = static_cast<double>(z);
  s.z_original = static_cast<double>(zo);
  s.mean_floor = static_cast<double>(mk);
  s.var_floor = static_cast<double>(vk / z);
  s.mean_t = static_cast<double>(mt);
  s.var_t = static_cast<double>(vt / z);
  s.mean_frac = static_cast<double>(f1 / z);
  return s;
}

inline double logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }

/// Dense-grid maximizer of phi on (0,1), refined by bisection on the sign of
/// dphi inside the best grid cell's neighbourhood.
template <typename Phi, typename DPhi>
std::pair<double, double> grid_maximize(Phi phi, DPhi dphi, int points = 1'000'000) {
  double best_u = 0.5, best = -1e300;
  for (int i = 1; i < points; ++i) {
    const double u = static_cast<double>(i) / points;
    const double v = phi(u);
    if (v > best) {
      best = v;
      best_u = u;
    }
  }
  double lo = std::max(best_u - 1.0 / points, 1e-300);
  double hi = std::min(best_u + 1.0 / points, 1.0 - 1e-16);
  if (dphi(lo) > 0 && dphi(hi) < 0) {
    for (int i = 0; i < 200; ++i) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      (dphi(mid) > 0 ? lo : hi) = mid;
    }
    best_u = 0.5 * (lo + hi);
    best = phi(best_u);
  }
  return {best_u, best};
}

/// Number of sign changes of f on a uniform grid of `points` in (1e-9, 1-1e-9).
template <typename F>
int sign_changes(F f, int points = 10000) {
  int changes = 0;
  const double lo = 1e-9, hi = 1.0 - 1e-9;
  double prev = f(lo);
  for (int i = 1; i <= points; ++i) {
    const double v = f(lo + (hi - lo) * i / points);
    if ((prev > 0) != (v > 0)) ++changes;
    prev = v;
  }
  return changes;
}

}  // namespace oracle

#endif  // ERGM_TESTS_ORACLES_HPP
