#ifndef ERGM_NUMERICS_HPP
#define ERGM_NUMERICS_HPP

#include <cmath>
#include <limits>
#include <span>

namespace ergm {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// Streaming log(sum(exp(x_i))) with a running maximum.
class LogSumExp {
 public:
  void add(double x) {
    if (x == kNegInf) return;
    if (x <= max_) {
      sum_ += std::exp(x - max_);
    } else {
      sum_ = sum_ * std::exp(max_ - x) + 1.0;
      max_ = x;
    }
  }
  double value() const { return max_ == kNegInf ? kNegInf : max_ + std::log(sum_); }

 private:
  double max_ = kNegInf;
  double sum_ = 0.0;
};

inline double log_sum_exp(std::span<const double> xs) {
  LogSumExp acc;
  for (double x : xs) acc.add(x);
  return acc.value();
}

inline double sigmoid(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

inline double logit(double u) { return std::log(u) - std::log1p(-u); }

/// u ln u + (1-u) ln(1-u), extended by continuity to I(0) = I(1) = 0.
inline double binary_entropy_term(double u) {
  double s = 0.0;
  if (u > 0.0) s += u * std::log(u);
  if (u < 1.0) s += (1.0 - u) * std::log1p(-u);
  return s;
}

/// Floor division for integers (rounds toward negative infinity).
constexpr long long floor_div(long long a, long long b) {
  const long long q = a / b;
  return (a % b != 0 && ((a < 0) != (b < 0))) ? q - 1 : q;
}

}  // namespace ergm

#endif  // ERGM_NUMERICS_HPP
