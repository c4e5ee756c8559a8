#pragma once

#include "hermiquad/detail/checks.hpp"
#include "hermiquad/integrals.hpp"

namespace hermiquad::detail {

// Decay coefficients below this make the shifted arguments blow up faster
// than the error models can track.
inline constexpr double kMinDecay = 1e-12;

inline void check_gauss_fields(const GaussIntegralSpec& s) {
  check_finite(s.a, "a");
  check_finite(s.b, "b");
  check_finite(s.c, "c");
  check_finite(s.d, "d");
  check_finite(s.f, "f");
  check_finite(s.alpha, "alpha");
  check_finite(s.y, "y");
  check_finite(s.z, "z");
}

inline void check_decay_positive(double f) {
  if (!(f > 0.0))
    throw EvalError(errc::non_positive_decay,
                    "Gaussian decay coefficient f must be positive");
}

inline void check_decay_conditioned(double f) {
  check_decay_positive(f);
  if (f < kMinDecay)
    throw EvalError(errc::ill_conditioned,
                    "Gaussian decay coefficient f below 1e-12");
}

inline void check_gauss_indices(const GaussIntegralSpec& s) {
  switch (s.kind) {
    case GaussKind::In:
      check_index(s.n, "n");
      break;
    case GaussKind::mIn:
    case GaussKind::Imn:
    case GaussKind::ScriptImn:
      check_index(s.m, "m");
      check_index(s.n, "n");
      break;
    case GaussKind::pImn:
      check_index(s.p, "p");
      check_index(s.m, "m");
      check_index(s.n, "n");
      break;
  }
}

inline void validate_gauss_spec(const GaussIntegralSpec& s) {
  check_gauss_fields(s);
  check_decay_conditioned(s.f);
  check_gauss_indices(s);
}

inline void validate_rational_spec(const RationalIntegralSpec& s) {
  check_finite(s.a, "a");
  check_finite(s.b, "b");
  check_finite(s.c, "c");
  check_finite(s.nu, "nu");
  if (!(s.c > 0.0))
    throw EvalError(errc::non_positive_decay,
                    "rational decay coefficient c must be positive");
  check_index(s.n, "n");
  if (!(2.0 * s.nu - s.n > 1.0))
    throw EvalError(errc::divergent, "integral diverges unless 2 nu - n > 1");
}

}  // namespace hermiquad::detail
