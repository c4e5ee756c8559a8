#pragma once

#include <cmath>
#include <limits>

namespace hermiquad::detail {

inline constexpr double kEps = std::numeric_limits<double>::epsilon();

// n! as a double; exact through 22!, correctly rounded beyond. n must be in
// [0, 170] (171! overflows double).
double factorial(int n) noexcept;

// x^k by repeated multiplication with the convention 0^0 == 1.
inline double pow_int(double x, int k) noexcept {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

// Falling factorial n (n-1) ... (n-k+1); zero when k > n.
inline double falling(int n, int k) noexcept {
  if (k > n) return 0.0;
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= static_cast<double>(n - i);
  return r;
}

inline double binomial(int n, int k) noexcept {
  if (k < 0 || k > n) return 0.0;
  if (k > n - k) k = n - k;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / i;
  return r;
}

// Compensated accumulator (Neumaier variant). magnitude() returns the sum of
// |terms|, which the error models use as a conditioning scale.
class KahanSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
    mag_ += std::abs(x);
  }

  double value() const noexcept { return sum_ + comp_; }
  double magnitude() const noexcept { return mag_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
  double mag_ = 0.0;
};

}  // namespace hermiquad::detail
