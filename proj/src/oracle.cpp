#include "hermiquad/oracle.hpp"

#include <cmath>
#include <limits>
#include <memory>
#include <mutex>
#include <vector>

#include "hermiquad/batch.hpp"
#include "hermiquad/detail/arith.hpp"
#include "hermiquad/detail/spec_checks.hpp"

namespace hermiquad {
namespace {

using detail::binomial;
using detail::factorial;
using detail::GaussNodeParams;
using detail::KahanSum;
using detail::kEps;
using detail::pow_int;
using detail::RationalNodeParams;

constexpr double kPi = 3.14159265358979323846;
constexpr double kHalfPi = 1.57079632679489661923;
constexpr double kLogOverflow = 708.0;

// ---------------------------------------------------------------------------
// integrand plumbing

GaussNodeParams make_params(const GaussIntegralSpec& s) {
  GaussNodeParams p;
  p.f = s.f;
  p.alpha = s.alpha;
  switch (s.kind) {
    case GaussKind::In:
      p.first = true;
      p.m = s.n, p.a = s.a, p.b = s.b, p.y = s.y;
      break;
    case GaussKind::mIn:
      p.xpow = s.m;
      p.first = true;
      p.m = s.n, p.a = s.a, p.b = s.b, p.y = s.y;
      break;
    case GaussKind::Imn:
      p.first = true;
      p.m = s.m, p.a = s.a, p.b = s.b, p.y = s.y;
      p.second = true;
      p.n = s.n, p.c = s.c, p.d = s.d, p.z = s.z;
      break;
    case GaussKind::ScriptImn:
      p.first = true;
      p.m = s.m, p.a = s.a, p.b = s.b, p.y = 0.0;
      p.second = true;
      p.n = s.n, p.c = s.c, p.d = s.d, p.z = 0.0;
      break;
    case GaussKind::pImn:
      p.xpow = s.p;
      p.first = true;
      p.m = s.m, p.a = s.a, p.b = s.b, p.y = s.y;
      p.second = true;
      p.n = s.n, p.c = s.c, p.d = s.d, p.z = s.z;
      break;
  }
  return p;
}

RationalNodeParams make_params(const RationalIntegralSpec& s) {
  return {s.n, s.a, s.b, s.c, s.nu};
}

// ---------------------------------------------------------------------------
// moment oracle: coefficient expansion, independent of the kernel recurrences

// H_n(a x + b, y) written out as a polynomial in x.
std::vector<double> expand_hermite_linear(int n, double a, double b,
                                          double y) {
  std::vector<double> out(static_cast<std::size_t>(n) + 1, 0.0);
  for (int k = 0; k <= n / 2; ++k) {
    const int j = n - 2 * k;
    const double cj =
        factorial(n) / (factorial(j) * factorial(k)) * pow_int(y, k);
    for (int i = 0; i <= j; ++i)
      out[i] += cj * binomial(j, i) * pow_int(a, i) * pow_int(b, j - i);
  }
  return out;
}

std::vector<double> convolve(const std::vector<double>& p,
                             const std::vector<double>& q) {
  std::vector<double> out(p.size() + q.size() - 1, 0.0);
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < q.size(); ++j) out[i + j] += p[i] * q[j];
  return out;
}

std::vector<double> shift_up(std::vector<double> p, int by) {
  p.insert(p.begin(), static_cast<std::size_t>(by), 0.0);
  return p;
}

std::vector<double> expand_poly(const GaussIntegralSpec& s) {
  switch (s.kind) {
    case GaussKind::In:
      return expand_hermite_linear(s.n, s.a, s.b, s.y);
    case GaussKind::mIn:
      return shift_up(expand_hermite_linear(s.n, s.a, s.b, s.y), s.m);
    case GaussKind::Imn:
      return convolve(expand_hermite_linear(s.m, s.a, s.b, s.y),
                      expand_hermite_linear(s.n, s.c, s.d, s.z));
    case GaussKind::ScriptImn:
      return convolve(expand_hermite_linear(s.m, s.a, s.b, 0.0),
                      expand_hermite_linear(s.n, s.c, s.d, 0.0));
    case GaussKind::pImn:
      return shift_up(convolve(expand_hermite_linear(s.m, s.a, s.b, s.y),
                               expand_hermite_linear(s.n, s.c, s.d, s.z)),
                      s.p);
  }
  throw EvalError(errc::invalid_argument, "unknown Gaussian integral kind");
}

// ---------------------------------------------------------------------------
// quadrature: trapezoid refinement under a variable substitution
//
//   DoubleExponential     x = sinh(g),        dx/dtau = (pi/2) cosh(tau) cosh(g)
//   RationalSubstitution  x = sinh(2 g) / 2,  dx/dtau = (pi/2) cosh(tau) cosh(2 g)
//
// with g = (pi/2) sinh(tau), truncated at |tau| = 6 (the nodes there already
// sit at |x| ~ 1e137 resp. ~ 1e274).

constexpr double kTauMax = 6.0;
constexpr int kMaxLevels = 15;

struct NodeTable {
  std::vector<double> x, w;
};

void push_node(QuadTransform t, double tau, NodeTable& nt) {
  const double g = kHalfPi * std::sinh(tau);
  double x, w;
  if (t == QuadTransform::DoubleExponential) {
    x = std::sinh(g);
    w = kHalfPi * std::cosh(tau) * std::cosh(g);
  } else {
    x = 0.5 * std::sinh(2.0 * g);
    w = kHalfPi * std::cosh(tau) * std::cosh(2.0 * g);
  }
  nt.x.push_back(x);
  nt.w.push_back(w);
}

// Level 0: tau = -6..6 step 1. Level l: the odd multiples of 2^-l inside
// (-6, 6), i.e. the nodes newly added when the step is halved.
const NodeTable& nodes_for(QuadTransform t, int level) {
  static std::mutex mu;
  static std::unique_ptr<NodeTable> cache[2][kMaxLevels + 1];
  std::scoped_lock lock(mu);
  auto& slot = cache[static_cast<int>(t)][level];
  if (!slot) {
    auto nt = std::make_unique<NodeTable>();
    if (level == 0) {
      for (int k = -6; k <= 6; ++k)
        push_node(t, static_cast<double>(k), *nt);
    } else {
      const double h = std::ldexp(1.0, -level);
      const int jmax = 3 << level;  // largest j with (2j-1) h < 6
      for (int j = 1; j <= jmax; ++j) {
        const double tau = (2.0 * j - 1.0) * h;
        push_node(t, tau, *nt);
        push_node(t, -tau, *nt);
      }
    }
    slot = std::move(nt);
  }
  return *slot;
}

template <typename Fill>
OracleReport integrate(const QuadratureConfig& raw, const Fill& fill) {
  QuadratureConfig cfg = raw;
  if (!(cfg.abs_tol > 0.0) || !std::isfinite(cfg.abs_tol) ||
      !(cfg.rel_tol > 0.0) || !std::isfinite(cfg.rel_tol))
    throw EvalError(errc::invalid_argument,
                    "quadrature tolerances must be positive and finite");
  if (cfg.max_refinement_levels < 1) cfg.max_refinement_levels = 1;
  if (cfg.max_refinement_levels > kMaxLevels)
    cfg.max_refinement_levels = kMaxLevels;

  std::vector<double> vals;
  auto level_sum = [&](int level) {
    const NodeTable& nt = nodes_for(cfg.transform, level);
    vals.resize(nt.x.size());
    fill(nt.x.data(), vals.data(), nt.x.size());
    KahanSum s;
    for (std::size_t i = 0; i < nt.x.size(); ++i) s.add(nt.w[i] * vals[i]);
    return s;
  };

  double h = 1.0;
  KahanSum s0 = level_sum(0);
  double S = h * s0.value();
  double mag = h * s0.magnitude();
  long evals = 13;
  double err = std::numeric_limits<double>::infinity();
  bool converged = false;
  for (int l = 1; l <= cfg.max_refinement_levels; ++l) {
    h *= 0.5;
    KahanSum sl = level_sum(l);
    const double Snew = 0.5 * S + h * sl.value();
    mag = 0.5 * mag + h * sl.magnitude();
    evals += 6L << l;
    err = std::abs(Snew - S);
    S = Snew;
    // the first couple of refinements can agree by accident; require a few
    // levels before trusting the difference estimate
    if (l >= 3 && err <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(S))) {
      converged = true;
      break;
    }
  }
  if (!std::isfinite(S))
    throw EvalError(errc::overflow, "quadrature sum exceeded double range");

  OracleReport r;
  r.value = S;
  r.err_est = std::max(err, kEps * mag);
  r.evaluations = evals;
  r.converged = converged;
  return r;
}

}  // namespace

double integrand_eval(const GaussIntegralSpec& s, double x) {
  detail::validate_gauss_spec(s);
  detail::check_finite(x, "x");
  return detail::gauss_node(make_params(s), x);
}

double integrand_eval(const RationalIntegralSpec& s, double x) {
  detail::validate_rational_spec(s);
  detail::check_finite(x, "x");
  return detail::rational_node(make_params(s), x);
}

OracleReport moment_oracle(const GaussIntegralSpec& s) {
  detail::validate_gauss_spec(s);
  const std::vector<double> poly = expand_poly(s);
  const int degree = static_cast<int>(poly.size()) - 1;
  if (degree > 2 * max_index())
    throw EvalError(errc::index_too_large,
                    "combined polynomial degree exceeds twice the max index");

  const double expo = s.alpha * s.alpha / (4.0 * s.f);
  const double m0log = 0.5 * (std::log(kPi) - std::log(s.f)) + expo;
  if (m0log > kLogOverflow)
    throw EvalError(errc::overflow, "Gaussian mass exceeds double range");

  std::vector<double> M(static_cast<std::size_t>(degree) + 1);
  M[0] = std::exp(m0log);
  if (degree >= 1) M[1] = s.alpha / (2.0 * s.f) * M[0];
  for (int k = 1; k < degree; ++k)
    M[k + 1] = (k * M[k - 1] + s.alpha * M[k]) / (2.0 * s.f);

  KahanSum sum;
  long evals = 0;
  for (int k = 0; k <= degree; ++k) {
    if (poly[k] == 0.0) continue;
    sum.add(poly[k] * M[k]);
    ++evals;
  }
  const double v = sum.value();
  if (!std::isfinite(v))
    throw EvalError(errc::overflow, "moment sum exceeded double range");

  OracleReport r;
  r.value = v;
  r.err_est = kEps * (2.0 * degree + 10.0) * sum.magnitude() *
                  (1.0 + std::abs(expo)) +
              kEps * std::abs(v);
  r.evaluations = evals;
  r.converged = true;
  return r;
}

OracleReport quad_integral(const GaussIntegralSpec& s,
                           const QuadratureConfig& cfg) {
  detail::validate_gauss_spec(s);
  const GaussNodeParams p = make_params(s);
  return integrate(cfg, [&](const double* x, double* out, std::size_t n) {
    batch::eval_gauss_nodes(p, x, out, n);
  });
}

OracleReport quad_integral(const RationalIntegralSpec& s,
                           const QuadratureConfig& cfg) {
  detail::validate_rational_spec(s);
  const RationalNodeParams p = make_params(s);
  return integrate(cfg, [&](const double* x, double* out, std::size_t n) {
    batch::eval_rational_nodes(p, x, out, n);
  });
}

ComparisonRecord compare(double lhs, double lhs_err, double rhs,
                         double rhs_err, double rel_tol) {
  ComparisonRecord r;
  r.lhs = lhs;
  r.rhs = rhs;
  if (!std::isfinite(lhs) || !std::isfinite(rhs)) {
    r.discrepancy = std::numeric_limits<double>::infinity();
    r.tolerance = rel_tol;
    r.pass = false;
    return r;
  }
  const double scale = std::max(std::abs(lhs), std::abs(rhs));
  r.discrepancy = scale > 0.0 ? std::abs(lhs - rhs) / scale : 0.0;
  r.tolerance =
      scale > 0.0 ? std::max(rel_tol, (lhs_err + rhs_err) / scale) : rel_tol;
  r.pass = r.discrepancy <= r.tolerance;
  return r;
}

ComparisonRecord compare(const EvalReport& closed, const OracleReport& oracle,
                         double rel_tol) {
  return compare(closed.value, closed.abs_err_est, oracle.value,
                 oracle.err_est, rel_tol);
}

double richardson_derivative(const std::function<double(double)>& fn,
                             double at, int order, double h0, int levels) {
  if (!fn) throw EvalError(errc::invalid_argument, "null function");
  if (order != 1 && order != 2)
    throw EvalError(errc::invalid_argument,
                    "derivative order must be 1 or 2");
  if (!(h0 > 0.0) || !std::isfinite(h0))
    throw EvalError(errc::invalid_argument, "step h0 must be positive");
  if (levels < 1 || levels > 12)
    throw EvalError(errc::invalid_argument, "levels must lie in [1, 12]");

  std::vector<double> prev(static_cast<std::size_t>(levels)),
      cur(static_cast<std::size_t>(levels));
  const double f0 = order == 2 ? fn(at) : 0.0;
  double h = h0;
  double result = 0.0;
  for (int i = 0; i < levels; ++i) {
    const double fp = fn(at + h);
    const double fm = fn(at - h);
    cur[0] = order == 1 ? (fp - fm) / (2.0 * h) : (fp - 2.0 * f0 + fm) / (h * h);
    double p4 = 1.0;
    for (int j = 1; j <= i; ++j) {
      p4 *= 4.0;
      cur[j] = (p4 * cur[j - 1] - prev[j - 1]) / (p4 - 1.0);
    }
    result = cur[static_cast<std::size_t>(i)];
    std::swap(prev, cur);
    h *= 0.5;
  }
  return result;
}

}  // namespace hermiquad
