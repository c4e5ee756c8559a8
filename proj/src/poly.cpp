#include "hermiquad/poly.hpp"

#include <cmath>

#include "hermiquad/detail/arith.hpp"
#include "hermiquad/detail/checks.hpp"
#include "hermiquad/detail/node_kernel.hpp"

namespace hermiquad {
namespace {

using detail::binomial;
using detail::factorial;
using detail::falling;
using detail::KahanSum;
using detail::kEps;
using detail::pow_int;

void check_poly_finite(double v) {
  if (!std::isfinite(v))
    throw EvalError(errc::overflow, "polynomial value exceeded double range");
}

// Recurrence pass with a first-order rounding bound carried alongside.
void sequence_with_err(int n, double x, double y, std::vector<double>& h,
                       std::vector<double>& e) {
  h.assign(static_cast<std::size_t>(n) + 1, 0.0);
  e.assign(static_cast<std::size_t>(n) + 1, 0.0);
  h[0] = 1.0;
  if (n >= 1) h[1] = x;
  for (int k = 1; k < n; ++k) {
    const double ck = (2.0 * k) * y;
    const double t1 = x * h[k];
    const double t2 = ck * h[k - 1];
    const double next = t1 + t2;
    h[k + 1] = next;
    e[k + 1] = std::abs(x) * e[k] + std::abs(ck) * e[k - 1] +
               kEps * (std::abs(t1) + std::abs(t2) + std::abs(next));
  }
}

bool is_gamma_pole(double arg) { return arg <= 0.0 && arg == std::floor(arg); }

}  // namespace

PolyValue hermite2(int n, double x, double y) {
  detail::check_index(n, "n");
  detail::check_finite(x, "x");
  detail::check_finite(y, "y");
  if (n == 0) return {1.0, 0.0};
  double hprev = 1.0, h = x;
  double eprev = 0.0, ecur = 0.0;
  for (int k = 1; k < n; ++k) {
    const double ck = (2.0 * k) * y;
    const double t1 = x * h;
    const double t2 = ck * hprev;
    const double next = t1 + t2;
    const double enext = std::abs(x) * ecur + std::abs(ck) * eprev +
                         kEps * (std::abs(t1) + std::abs(t2) + std::abs(next));
    hprev = h;
    h = next;
    eprev = ecur;
    ecur = enext;
  }
  check_poly_finite(h);
  return {h, ecur};
}

double hermite2_value(int n, double x, double y) {
  detail::check_index(n, "n");
  return detail::hermite_node_value(n, x, y);
}

std::vector<double> hermite2_sequence(int n, double x, double y) {
  detail::check_index(n, "n");
  std::vector<double> h, e;
  sequence_with_err(n, x, y, h, e);
  return h;
}

PolyValue hermite2_direct_sum(int n, double x, double y) {
  detail::check_index(n, "n");
  detail::check_finite(x, "x");
  detail::check_finite(y, "y");
  KahanSum s;
  double err = 0.0;
  for (int k = 0; k <= n / 2; ++k) {
    const int j = n - 2 * k;
    const double coef = factorial(n) / (factorial(j) * factorial(k));
    const double term = coef * pow_int(x, j) * pow_int(y, k);
    s.add(term);
    err += kEps * (n + 6) * std::abs(term);
  }
  const double v = s.value();
  check_poly_finite(v);
  return {v, err + 2.0 * kEps * std::abs(v)};
}

PolyValue hermite2_deriv(int n, int k, double x, double y) {
  detail::check_index(n, "n");
  detail::check_index(k, "k");
  if (k > n) return {0.0, 0.0};
  const double coef = falling(n, k);
  const PolyValue base = hermite2(n - k, x, y);
  const double v = coef * base.value;
  check_poly_finite(v);
  return {v, coef * base.abs_err_est + kEps * std::abs(v)};
}

PolyValue gauss_deriv_factor(int k, double beta, double x) {
  detail::check_index(k, "k");
  return hermite2(k, 2.0 * beta * x, beta);
}

PolyValue hermite_two_index(int m, int n, double x, double y, double w,
                            double z, double tau) {
  detail::check_index(m, "m");
  detail::check_index(n, "n");
  detail::check_finite(tau, "tau");
  std::vector<double> h1, e1, h2, e2;
  sequence_with_err(m, x, y, h1, e1);
  sequence_with_err(n, w, z, h2, e2);
  KahanSum s;
  double err = 0.0;
  double coef = 1.0;  // m! n! / ((m-k)! (n-k)! k!)
  double tk = 1.0;
  const int kmax = m < n ? m : n;
  for (int k = 0; k <= kmax; ++k) {
    if (k > 0) {
      coef *= static_cast<double>(m - k + 1) * (n - k + 1) / k;
      tk *= tau;
    }
    const double ct = coef * tk;
    const double term = ct * h1[m - k] * h2[n - k];
    s.add(term);
    err += std::abs(ct) * (std::abs(h1[m - k]) * e2[n - k] +
                           std::abs(h2[n - k]) * e1[m - k]) +
           kEps * (k + 6) * std::abs(term);
  }
  const double v = s.value();
  check_poly_finite(v);
  return {v, err + 2.0 * kEps * std::abs(v)};
}

PolyValue hermite_two_index_deriv(int m, int n, int kx, int kw, double x,
                                  double y, double w, double z, double tau) {
  detail::check_index(m, "m");
  detail::check_index(n, "n");
  detail::check_index(kx, "kx");
  detail::check_index(kw, "kw");
  if (kx > m || kw > n) return {0.0, 0.0};
  const double coef = falling(m, kx) * falling(n, kw);
  const PolyValue base = hermite_two_index(m - kx, n - kw, x, y, w, z, tau);
  const double v = coef * base.value;
  check_poly_finite(v);
  return {v, coef * base.abs_err_est + kEps * std::abs(v)};
}

PolyValue hermite_two_index_direct_sum(int m, int n, double x, double y,
                                       double w, double z, double tau) {
  detail::check_index(m, "m");
  detail::check_index(n, "n");
  KahanSum s;
  double err = 0.0;
  double coef = 1.0;
  double tk = 1.0;
  const int kmax = m < n ? m : n;
  for (int k = 0; k <= kmax; ++k) {
    if (k > 0) {
      coef *= static_cast<double>(m - k + 1) * (n - k + 1) / k;
      tk *= tau;
    }
    const PolyValue p1 = hermite2_direct_sum(m - k, x, y);
    const PolyValue p2 = hermite2_direct_sum(n - k, w, z);
    const double ct = coef * tk;
    const double term = ct * p1.value * p2.value;
    s.add(term);
    err += std::abs(ct) * (std::abs(p1.value) * p2.abs_err_est +
                           std::abs(p2.value) * p1.abs_err_est) +
           kEps * (k + 6) * std::abs(term);
  }
  const double v = s.value();
  check_poly_finite(v);
  return {v, err + 2.0 * kEps * std::abs(v)};
}

PolyValue hermite_nu(int n, double nu, double x, double y) {
  detail::check_index(n, "n");
  detail::check_finite(nu, "nu");
  detail::check_finite(x, "x");
  detail::check_finite(y, "y");
  KahanSum s;
  double err = 0.0;
  for (int k = 0; k <= n / 2; ++k) {
    const double garg = nu - k - 0.5;
    if (is_gamma_pole(garg))
      throw EvalError(errc::gamma_pole,
                      "Gamma(nu - k - 1/2) hits a pole at k = " +
                          std::to_string(k));
    const double g = std::tgamma(garg);
    const int j = n - 2 * k;
    const double coef = factorial(n) / (factorial(k) * factorial(j));
    const double term = coef * g * pow_int(x, j) * pow_int(y, k);
    s.add(term);
    err += kEps * (n + 10) * std::abs(term);
  }
  const double v = s.value();
  check_poly_finite(v);
  return {v, err + 2.0 * kEps * std::abs(v)};
}

PolyValue evaluate(const PolyQuery& q) {
  switch (q.family) {
    case PolyFamily::TwoVariable:
      return hermite2(q.n, q.x, q.y);
    case PolyFamily::TwoIndex:
      return hermite_two_index(q.m, q.n, q.x, q.y, q.w, q.z, q.tau);
    case PolyFamily::GammaWeighted:
      return hermite_nu(q.n, q.nu, q.x, q.y);
  }
  throw EvalError(errc::invalid_argument, "unknown polynomial family");
}

double genfn_truncation_residual(int N, double t, double x, double y) {
  detail::check_index(N, "N");
  const std::vector<double> h = hermite2_sequence(N, x, y);
  KahanSum s;
  double tk = 1.0;  // t^k / k!
  for (int k = 0; k <= N; ++k) {
    s.add(tk * h[k]);
    tk *= t / (k + 1);
  }
  return std::abs(s.value() - std::exp(x * t + y * t * t));
}

double genfn_truncation_residual_two_index(int N, double u, double v, double x,
                                           double y, double w, double z,
                                           double tau) {
  detail::check_index(N, "N");
  KahanSum s;
  double um = 1.0;  // u^m / m!
  for (int m = 0; m <= N; ++m) {
    double vn = 1.0;  // v^n / n!
    for (int n = 0; n <= N; ++n) {
      s.add(um * vn * hermite_two_index(m, n, x, y, w, z, tau).value);
      vn *= v / (n + 1);
    }
    um *= u / (m + 1);
  }
  const double closed =
      std::exp(x * u + y * u * u + w * v + z * v * v + tau * u * v);
  return std::abs(s.value() - closed);
}

}  // namespace hermiquad
