#pragma once

#include <cmath>

// Single-point integrand kernels. The scalar batch backend loops over these;
// the AVX2 backend replicates the arithmetic operation-for-operation so that
// lanes stay bit-identical with the scalar path (exp excepted). Keep the
// evaluation order here in sync with src/batch_avx2.cpp.

namespace hermiquad::detail {

// exp(e) underflows to a denormal near e = -708.4; below this floor the
// integrand is flushed to zero before any polynomial factor is touched,
// which avoids inf * 0 in the far tails.
inline constexpr double kExpFloor = -708.0;

struct GaussNodeParams {
  int xpow = 0;
  bool first = false;
  int m = 0;
  double a = 0.0, b = 0.0, y = 0.0;
  bool second = false;
  int n = 0;
  double c = 0.0, d = 0.0, z = 0.0;
  double f = 0.0, alpha = 0.0;
};

struct RationalNodeParams {
  int n = 0;
  double a = 0.0, b = 0.0, c = 0.0, nu = 0.0;
};

// Value-only three-term recurrence for the two-variable polynomial.
inline double hermite_node_value(int n, double u, double y) noexcept {
  if (n == 0) return 1.0;
  double hprev = 1.0;
  double h = u;
  for (int k = 1; k < n; ++k) {
    const double ck = (2.0 * k) * y;
    const double t = u * h + ck * hprev;
    hprev = h;
    h = t;
  }
  return h;
}

inline double gauss_node(const GaussNodeParams& p, double x) noexcept {
  const double e = (-p.f * x) * x + p.alpha * x;
  if (e < kExpFloor) return 0.0;
  double v = std::exp(e);
  for (int i = 0; i < p.xpow; ++i) v *= x;
  if (p.first) v *= hermite_node_value(p.m, p.a * x + p.b, p.y);
  if (p.second) v *= hermite_node_value(p.n, p.c * x + p.d, p.z);
  return v;
}

// (a x + b)^n / (1 + c x^2)^nu evaluated through logs so that the slowly
// decaying tails neither overflow nor hit 0 * inf.
inline double rational_node(const RationalNodeParams& p, double x) noexcept {
  const double q = 1.0 + (p.c * x) * x;
  const double logq = std::log(q);
  if (p.n == 0) {
    const double lv = -p.nu * logq;
    return lv < kExpFloor ? 0.0 : std::exp(lv);
  }
  const double base = p.a * x + p.b;
  if (base == 0.0) return 0.0;
  const double lv = p.n * std::log(std::abs(base)) - p.nu * logq;
  if (lv < kExpFloor) return 0.0;
  double v = std::exp(lv);
  if ((p.n & 1) && base < 0.0) v = -v;
  return v;
}

}  // namespace hermiquad::detail
