#pragma once

#include <string>

#include "hermiquad/poly.hpp"

// Closed forms for integrals over the whole real line:
//
//   In         int H_n(a x + b, y) exp(-f x^2 + alpha x) dx
//   mIn        int x^m H_n(a x + b, y) exp(-f x^2 + alpha x) dx
//   Imn        int H_m(a x + b, y) H_n(c x + d, z) exp(-f x^2 + alpha x) dx
//   ScriptImn  Imn with y = z = 0, i.e. plain powers (a x + b)^m (c x + d)^n
//   pImn       int x^p H_m(a x + b, y) H_n(c x + d, z) exp(-f x^2 + alpha x) dx
//   rational   int (a x + b)^n / (1 + c x^2)^nu dx
//
// Every Gaussian closed form reduces to sqrt(pi/f) exp(alpha^2 / (4 f)) times
// a polynomial kernel evaluated at the shifted arguments produced by reduce().

namespace hermiquad {

enum class GaussKind { In, mIn, Imn, ScriptImn, pImn };

struct GaussIntegralSpec {
  GaussKind kind = GaussKind::In;
  double a = 0.0, b = 0.0;  // first linear argument a x + b
  double c = 0.0, d = 0.0;  // second linear argument c x + d
  double f = 1.0;           // Gaussian decay, must be positive
  double alpha = 0.0;       // linear exponent coefficient
  double y = 0.0, z = 0.0;  // second arguments of the polynomial factors
  int m = 0, n = 0, p = 0;  // indices; the kind decides which are read
};

struct RationalIntegralSpec {
  double a = 0.0, b = 0.0;
  double c = 1.0;    // must be positive
  double nu = 1.0;   // convergence requires 2 nu - n > 1
  int n = 0;
};

// Shifted arguments shared by all Gaussian closed forms.
struct ReducedParams {
  double xbar = 0.0;  // b + a alpha / (2 f)
  double ybar = 0.0;  // y + a^2 / (4 f)
  double wbar = 0.0;  // d + c alpha / (2 f)
  double zbar = 0.0;  // z + c^2 / (4 f)
  double tau = 0.0;   // a c / (2 f)
};

enum class Method { ClosedForm, MomentOracle, Quadrature };

struct EvalReport {
  double value = 0.0;
  Method method = Method::ClosedForm;
  double abs_err_est = 0.0;
  bool valid = true;
  std::string notes;
};

const char* method_name(Method m) noexcept;

ReducedParams reduce(const GaussIntegralSpec& s);

EvalReport eval_In(const GaussIntegralSpec& s);
EvalReport eval_mIn(const GaussIntegralSpec& s);
EvalReport eval_Imn(const GaussIntegralSpec& s);
EvalReport eval_calligraphic_Imn(const GaussIntegralSpec& s);
EvalReport eval_pImn(const GaussIntegralSpec& s);

// Dispatches on s.kind. The eval_* functions themselves read only the fields
// their formula uses, so a spec built for one kind can be re-evaluated as a
// degenerate case of another (handy for consistency checks).
EvalReport eval_closed(const GaussIntegralSpec& s);

EvalReport eval_rational_In(const RationalIntegralSpec& s);

}  // namespace hermiquad
