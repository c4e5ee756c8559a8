#include "hermiquad/integrals.hpp"

#include <cmath>
#include <limits>

#include "hermiquad/detail/arith.hpp"
#include "hermiquad/detail/spec_checks.hpp"

namespace hermiquad {
namespace {

using detail::binomial;
using detail::factorial;
using detail::falling;
using detail::KahanSum;
using detail::kEps;

constexpr double kPi = 3.14159265358979323846;

// exp(708) is still finite; anything past this is treated as overflow.
constexpr double kLogOverflow = 708.0;

ReducedParams reduce_unchecked(const GaussIntegralSpec& s) {
  ReducedParams r;
  r.xbar = s.b + s.a * s.alpha / (2.0 * s.f);
  r.ybar = s.y + s.a * s.a / (4.0 * s.f);
  r.wbar = s.d + s.c * s.alpha / (2.0 * s.f);
  r.zbar = s.z + s.c * s.c / (4.0 * s.f);
  r.tau = s.a * s.c / (2.0 * s.f);
  return r;
}

// Multiplies the polynomial kernel by sqrt(pi/f) exp(alpha^2/(4f)), working
// in the log domain when the prefactor alone would overflow.
EvalReport assemble(double f, double alpha, const PolyValue& h) {
  const double expo = alpha * alpha / (4.0 * f);
  const double pref_log = 0.5 * (std::log(kPi) - std::log(f)) + expo;
  EvalReport r;
  r.method = Method::ClosedForm;
  if (h.value == 0.0 && h.abs_err_est == 0.0) return r;

  const double habs = std::abs(h.value);
  double value = 0.0;
  if (habs > 0.0) {
    const double logv = pref_log + std::log(habs);
    if (logv > kLogOverflow)
      throw EvalError(errc::overflow, "integral value exceeds double range");
    value = pref_log <= kLogOverflow ? std::exp(pref_log) * h.value
                                     : std::copysign(std::exp(logv), h.value);
  }
  double scale_err = 0.0;
  if (h.abs_err_est > 0.0) {
    scale_err = std::exp(pref_log + std::log(h.abs_err_est));
    if (!std::isfinite(scale_err))
      scale_err = std::numeric_limits<double>::max();
  }
  r.value = value;
  r.abs_err_est =
      scale_err + std::abs(value) * kEps * (std::abs(expo) + 6.0);
  return r;
}

void require_valid_gauss(const GaussIntegralSpec& s) {
  detail::check_gauss_fields(s);
  detail::check_decay_conditioned(s.f);
}

}  // namespace

const char* method_name(Method m) noexcept {
  switch (m) {
    case Method::ClosedForm: return "ClosedForm";
    case Method::MomentOracle: return "MomentOracle";
    case Method::Quadrature: return "Quadrature";
  }
  return "Unknown";
}

ReducedParams reduce(const GaussIntegralSpec& s) {
  detail::check_gauss_fields(s);
  detail::check_decay_positive(s.f);
  return reduce_unchecked(s);
}

EvalReport eval_In(const GaussIntegralSpec& s) {
  require_valid_gauss(s);
  detail::check_index(s.n, "n");
  const ReducedParams r = reduce_unchecked(s);
  return assemble(s.f, s.alpha, hermite2(s.n, r.xbar, r.ybar));
}

EvalReport eval_mIn(const GaussIntegralSpec& s) {
  require_valid_gauss(s);
  detail::check_index(s.m, "m");
  detail::check_index(s.n, "n");
  const ReducedParams r = reduce_unchecked(s);
  const double u = s.alpha / (2.0 * s.f);
  const double uy = 1.0 / (4.0 * s.f);
  const PolyValue h = hermite_two_index(s.m, s.n, u, uy, r.xbar, r.ybar,
                                        s.a / (2.0 * s.f));
  return assemble(s.f, s.alpha, h);
}

EvalReport eval_Imn(const GaussIntegralSpec& s) {
  require_valid_gauss(s);
  detail::check_index(s.m, "m");
  detail::check_index(s.n, "n");
  const ReducedParams r = reduce_unchecked(s);
  const PolyValue h =
      hermite_two_index(s.m, s.n, r.xbar, r.ybar, r.wbar, r.zbar, r.tau);
  return assemble(s.f, s.alpha, h);
}

EvalReport eval_calligraphic_Imn(const GaussIntegralSpec& s) {
  GaussIntegralSpec plain = s;
  plain.y = 0.0;
  plain.z = 0.0;
  return eval_Imn(plain);
}

EvalReport eval_pImn(const GaussIntegralSpec& s) {
  require_valid_gauss(s);
  detail::check_index(s.p, "p");
  detail::check_index(s.m, "m");
  detail::check_index(s.n, "n");
  const ReducedParams r = reduce_unchecked(s);
  const double u = s.alpha / (2.0 * s.f);
  const double uy = 1.0 / (4.0 * s.f);
  const double ha = s.a / (2.0 * s.f);
  const double hc = s.c / (2.0 * s.f);
  const std::vector<double> hp = hermite2_sequence(s.p, u, uy);

  KahanSum total;
  double err = 0.0;
  for (int k = 0; k <= s.p; ++k) {
    // k-th alpha-derivative of the two-index kernel at the shifted arguments
    KahanSum rk;
    double rk_err = 0.0;
    const int lmin = k - s.n > 0 ? k - s.n : 0;
    const int lmax = k < s.m ? k : s.m;
    for (int l = lmin; l <= lmax; ++l) {
      const double coef = binomial(k, l) * detail::pow_int(ha, l) *
                          detail::pow_int(hc, k - l) * falling(s.m, l) *
                          falling(s.n, k - l);
      if (coef == 0.0) continue;
      const PolyValue h = hermite_two_index(s.m - l, s.n - (k - l), r.xbar,
                                            r.ybar, r.wbar, r.zbar, r.tau);
      const double term = coef * h.value;
      rk.add(term);
      rk_err += std::abs(coef) * h.abs_err_est + kEps * (k + 8) * std::abs(term);
    }
    const double bin = binomial(s.p, k);
    const double term = bin * hp[s.p - k] * rk.value();
    total.add(term);
    err += bin * std::abs(hp[s.p - k]) * rk_err + kEps * (s.p + 6) * std::abs(term);
  }
  return assemble(s.f, s.alpha, PolyValue{total.value(), err});
}

EvalReport eval_closed(const GaussIntegralSpec& s) {
  switch (s.kind) {
    case GaussKind::In: return eval_In(s);
    case GaussKind::mIn: return eval_mIn(s);
    case GaussKind::Imn: return eval_Imn(s);
    case GaussKind::ScriptImn: return eval_calligraphic_Imn(s);
    case GaussKind::pImn: return eval_pImn(s);
  }
  throw EvalError(errc::invalid_argument, "unknown Gaussian integral kind");
}

EvalReport eval_rational_In(const RationalIntegralSpec& s) {
  detail::validate_rational_spec(s);
  const PolyValue h = hermite_nu(s.n, s.nu, s.b, s.a * s.a / (4.0 * s.c));
  const double pref = std::sqrt(kPi / s.c) / std::tgamma(s.nu);
  const double v = pref * h.value;
  if (!std::isfinite(v))
    throw EvalError(errc::overflow, "integral value exceeds double range");
  EvalReport r;
  r.value = v;
  r.method = Method::ClosedForm;
  r.abs_err_est = pref * h.abs_err_est + 8.0 * kEps * std::abs(v);
  return r;
}

}  // namespace hermiquad
