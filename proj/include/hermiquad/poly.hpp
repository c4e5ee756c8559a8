#pragma once

#include <vector>

#include "hermiquad/config.hpp"
#include "hermiquad/errors.hpp"

// Kernels for three multivariable Hermite families:
//
//   two-variable   H_n(x, y)                 sum_k n! x^(n-2k) y^k / ((n-2k)! k!)
//   two-index      H_{m,n}(x, y; w, z | tau) coupled product expansion in tau
//   gamma-weighted H_n^(nu)(x, y)            two-variable sum reweighted by
//                                            Gamma(nu - k - 1/2)
//
// The ordinary Hermite polynomials are H_n(2x, -1); H_n(x, y) also solves the
// heat-type relation d/dy H_n = d2/dx2 H_n.

namespace hermiquad {

struct PolyValue {
  double value = 0.0;
  // Running rounding-error bound for the returned value. Reported, not
  // guaranteed tight.
  double abs_err_est = 0.0;
};

enum class PolyFamily { TwoVariable, TwoIndex, GammaWeighted };

struct PolyQuery {
  PolyFamily family = PolyFamily::TwoVariable;
  int n = 0;
  int m = 0;        // TwoIndex only
  double nu = 0.0;  // GammaWeighted only
  double x = 0.0;
  double y = 0.0;
  double w = 0.0;   // TwoIndex only
  double z = 0.0;   // TwoIndex only
  double tau = 0.0; // TwoIndex only
};

// Three-term recurrence H_{k+1} = x H_k + 2 k y H_{k-1}; the primary
// evaluation path.
PolyValue hermite2(int n, double x, double y);

// Value-only variant of hermite2 (identical arithmetic, no error tracking).
double hermite2_value(int n, double x, double y);

// H_0 .. H_n at fixed (x, y) in one recurrence pass.
std::vector<double> hermite2_sequence(int n, double x, double y);

// Explicit finite sum, kept free of any recurrence so it can cross-check
// hermite2 independently.
PolyValue hermite2_direct_sum(int n, double x, double y);

// k-th x-derivative: n!/(n-k)! H_{n-k}(x, y); zero when k > n.
PolyValue hermite2_deriv(int n, int k, double x, double y);

// d^k/dx^k exp(beta x^2) = H_k(2 beta x, beta) exp(beta x^2), returned as
// the polynomial factor only.
PolyValue gauss_deriv_factor(int k, double beta, double x);

PolyValue hermite_two_index(int m, int n, double x, double y, double w,
                            double z, double tau);

// Partial derivatives of the two-index family; kx acts on the (x, y) slot,
// kw on the (w, z) slot.
PolyValue hermite_two_index_deriv(int m, int n, int kx, int kw, double x,
                                  double y, double w, double z, double tau);

// Two-index value with every two-variable factor taken from the direct sum;
// serves as an in-family cross-check.
PolyValue hermite_two_index_direct_sum(int m, int n, double x, double y,
                                       double w, double z, double tau);

// Gamma-weighted sum; throws errc::gamma_pole when any Gamma argument
// nu - k - 1/2 lands on a pole.
PolyValue hermite_nu(int n, double nu, double x, double y);

PolyValue evaluate(const PolyQuery& q);

// |sum_{k<=N} t^k/k! H_k(x,y) - exp(x t + y t^2)|: how far the truncated
// generating function is from its closed form.
double genfn_truncation_residual(int N, double t, double x, double y);

// Same residual for the two-index generating function
// exp(x u + y u^2 + w v + z v^2 + tau u v) truncated at order N in both
// indices.
double genfn_truncation_residual_two_index(int N, double u, double v, double x,
                                           double y, double w, double z,
                                           double tau);

}  // namespace hermiquad
