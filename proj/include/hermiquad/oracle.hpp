#pragma once

#include <functional>

#include "hermiquad/integrals.hpp"

// Two independent ways to evaluate the same integrals, used to certify the
// closed forms:
//
//   moment_oracle  expands the integrand into powers of x (no recurrences
//                  shared with the kernels) and sums exact Gaussian moments
//                  obtained from M_{k+1} = (k M_{k-1} + alpha M_k) / (2 f).
//
//   quad_integral  adaptive trapezoid quadrature under a double-exponential
//                  substitution, nodes evaluated through the batch lane.

namespace hermiquad {

enum class QuadTransform { DoubleExponential, RationalSubstitution };

struct QuadratureConfig {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  int max_refinement_levels = 12;  // clamped to [1, 15]
  QuadTransform transform = QuadTransform::DoubleExponential;
};

struct OracleReport {
  double value = 0.0;
  double err_est = 0.0;
  long evaluations = 0;
  bool converged = false;
};

struct ComparisonRecord {
  double lhs = 0.0;
  double rhs = 0.0;
  double discrepancy = 0.0;  // |lhs - rhs| / max(|lhs|, |rhs|), 0 if both 0
  double tolerance = 0.0;    // effective: max(rel_tol, combined err / scale)
  bool pass = false;
};

double integrand_eval(const GaussIntegralSpec& s, double x);
double integrand_eval(const RationalIntegralSpec& s, double x);

OracleReport moment_oracle(const GaussIntegralSpec& s);

OracleReport quad_integral(const GaussIntegralSpec& s,
                           const QuadratureConfig& cfg = {});
OracleReport quad_integral(const RationalIntegralSpec& s,
                           const QuadratureConfig& cfg = {});

ComparisonRecord compare(double lhs, double lhs_err, double rhs,
                         double rhs_err, double rel_tol);
ComparisonRecord compare(const EvalReport& closed, const OracleReport& oracle,
                         double rel_tol);

// Central difference of order 1 or 2 with Richardson extrapolation.
double richardson_derivative(const std::function<double(double)>& fn,
                             double at, int order, double h0 = 0.05,
                             int levels = 4);

}  // namespace hermiquad
