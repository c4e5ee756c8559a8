#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "hermiquad/detail/arith.hpp"
#include "hermiquad/oracle.hpp"
#include "hermiquad/poly.hpp"

using namespace hermiquad;

namespace {

void check_rel(double got, double want, double tol) {
  const double scale = std::max({std::abs(got), std::abs(want), 1e-300});
  CAPTURE(got);
  CAPTURE(want);
  CHECK(std::abs(got - want) / scale <= tol);
}

constexpr double kSqrtPi = 1.7724538509055160273;

// physicists' polynomials H_0..H_10, highest power first
const std::vector<std::vector<double>> kClassical = {
    {1},
    {2, 0},
    {4, 0, -2},
    {8, 0, -12, 0},
    {16, 0, -48, 0, 12},
    {32, 0, -160, 0, 120, 0},
    {64, 0, -480, 0, 720, 0, -120},
    {128, 0, -1344, 0, 3360, 0, -1680, 0},
    {256, 0, -3584, 0, 13440, 0, -13440, 0, 1680},
    {512, 0, -9216, 0, 48384, 0, -80640, 0, 30240, 0},
    {1024, 0, -23040, 0, 161280, 0, -403200, 0, 302400, 0, -30240}};

double horner(const std::vector<double>& c, double x) {
  double r = 0.0;
  for (double ci : c) r = r * x + ci;
  return r;
}

}  // namespace

TEST_CASE("two-variable low orders are exact") {
  CHECK(hermite2(0, 5.0, -3.0).value == 1.0);
  CHECK(hermite2(1, 5.0, -3.0).value == 5.0);
  CHECK(hermite2(2, 3.0, 1.0).value == 11.0);   // x^2 + 2y
  CHECK(hermite2(3, 2.0, -1.0).value == -4.0);  // x^3 + 6xy
  CHECK(hermite2(4, 1.0, 0.5).value == 10.0);
  CHECK(hermite2_direct_sum(2, 3.0, 1.0).value == 11.0);
  CHECK(hermite2_direct_sum(3, 2.0, -1.0).value == -4.0);
}

TEST_CASE("degenerate second argument reduces to plain powers") {
  for (int n : {0, 1, 2, 5, 11}) {
    check_rel(hermite2(n, 1.7, 0.0).value, std::pow(1.7, n), 1e-14);
    CHECK(hermite2(n, 0.0, 0.0).value == (n == 0 ? 1.0 : 0.0));
  }
}

TEST_CASE("recurrence matches the explicit sum across the box") {
  using hermiquad::detail::factorial;
  using hermiquad::detail::pow_int;
  for (int n = 0; n <= 25; ++n)
    for (double x : {-5.0, -1.7, 0.0, 0.3, 2.0, 5.0})
      for (double y : {-5.0, -0.4, 0.0, 1.2, 5.0}) {
        CAPTURE(n);
        CAPTURE(x);
        CAPTURE(y);
        const PolyValue a = hermite2(n, x, y);
        const PolyValue b = hermite2_direct_sum(n, x, y);
        // relative to the conditioning scale: oscillatory (x, y < 0) corners
        // cancel heavily, so plain value-relative error is not meaningful
        double magsum = 0.0;
        for (int k = 0; k <= n / 2; ++k)
          magsum += factorial(n) / (factorial(n - 2 * k) * factorial(k)) *
                    std::abs(pow_int(x, n - 2 * k) * pow_int(y, k));
        const double scale = std::max(magsum, 1.0);
        CHECK(std::abs(a.value - b.value) / scale <= 1e-11);
      }
}

TEST_CASE("three-term recurrence holds for the direct sum") {
  for (int k = 1; k <= 20; ++k)
    for (double x : {-2.3, 0.8})
      for (double y : {-1.1, 1.4}) {
        const double lhs = hermite2_direct_sum(k + 1, x, y).value;
        const double rhs = x * hermite2_direct_sum(k, x, y).value +
                           2.0 * k * y * hermite2_direct_sum(k - 1, x, y).value;
        const double scale = std::max({std::abs(lhs), std::abs(rhs), 1.0});
        CHECK(std::abs(lhs - rhs) / scale <= 1e-11);
      }
}

TEST_CASE("classical table via x -> 2x, y = -1") {
  for (int n = 0; n <= 10; ++n)
    for (double x : {-1.3, -0.25, 0.7, 2.1}) {
      CAPTURE(n);
      CAPTURE(x);
      const double got = hermite2(n, 2.0 * x, -1.0).value;
      const double want = horner(kClassical[static_cast<std::size_t>(n)], x);
      const double scale = std::max({std::abs(want), 1.0});
      CHECK(std::abs(got - want) / scale <= 1e-12);
    }
}

TEST_CASE("heat-type identity: d/dy H_n = n (n-1) H_{n-2}") {
  // differentiate the explicit sum in y term by term and compare
  using hermiquad::detail::factorial;
  using hermiquad::detail::pow_int;
  for (int n = 2; n <= 14; ++n)
    for (double x : {-1.9, 0.4, 2.2})
      for (double y : {-1.5, 0.7}) {
        double dy = 0.0;
        for (int k = 1; k <= n / 2; ++k)
          dy += factorial(n) / (factorial(n - 2 * k) * factorial(k - 1)) *
                pow_int(x, n - 2 * k) * pow_int(y, k - 1);
        const double want = n * (n - 1.0) * hermite2(n - 2, x, y).value;
        CAPTURE(n);
        check_rel(dy, want, 1e-13);
      }
}

TEST_CASE("x-derivative lowers the index with a falling-factorial weight") {
  CHECK(hermite2_deriv(3, 4, 1.0, 1.0).value == 0.0);
  CHECK(hermite2_deriv(5, 0, 1.1, -0.3).value ==
        hermite2(5, 1.1, -0.3).value);
  // against Richardson finite differences
  for (int n : {3, 6}) {
    for (int k : {1, 2}) {
      const double x = 0.8, y = -0.6;
      const double fd = richardson_derivative(
          [&](double t) { return hermite2(n, t, y).value; }, x, k, 0.05, 5);
      check_rel(hermite2_deriv(n, k, x, y).value, fd, 1e-8);
    }
  }
}

TEST_CASE("Gaussian derivative factor") {
  const double beta = 0.7, x = 1.2;
  const auto g = [&](double t) { return std::exp(beta * t * t); };
  for (int k : {1, 2}) {
    const double fd = richardson_derivative(g, x, k, 0.02, 5);
    const double got = gauss_deriv_factor(k, beta, x).value * g(x);
    check_rel(got, fd, 1e-8);
  }
  CHECK(gauss_deriv_factor(0, 2.0, 3.0).value == 1.0);
  CHECK(gauss_deriv_factor(1, 0.5, 2.0).value == 2.0);  // 2 beta x
}

TEST_CASE("two-index kernel: pinned values and structure") {
  CHECK(hermite_two_index(1, 1, 2.0, 0.0, 3.0, 0.0, 5.0).value == 11.0);
  CHECK(hermite_two_index(0, 0, 1.0, 2.0, 3.0, 4.0, 5.0).value == 1.0);

  SUBCASE("tau = 0 factorizes") {
    const double tuples[][6] = {{3, 2, 1.1, -0.4, 0.7, 0.9},
                                {5, 5, -2.0, 1.5, 0.3, -1.0},
                                {7, 4, 0.5, 0.5, -1.2, 2.0}};
    for (const double* t : tuples) {
      const int m = static_cast<int>(t[0]), n = static_cast<int>(t[1]);
      check_rel(hermite_two_index(m, n, t[2], t[3], t[4], t[5], 0.0).value,
                hermite2(m, t[2], t[3]).value * hermite2(n, t[4], t[5]).value,
                1e-12);
    }
  }

  SUBCASE("index swap symmetry") {
    for (double tau : {-1.3, 0.8, 2.0})
      for (int m : {0, 2, 6})
        for (int n : {1, 5}) {
          check_rel(
              hermite_two_index(m, n, 1.1, -0.4, 0.7, 0.9, tau).value,
              hermite_two_index(n, m, 0.7, 0.9, 1.1, -0.4, tau).value, 1e-12);
        }
  }

  SUBCASE("direct sum route agrees with the recurrence route") {
    for (int m : {0, 3, 7})
      for (int n : {2, 5}) {
        const PolyValue a =
            hermite_two_index(m, n, 0.9, -1.2, -0.5, 0.8, 1.7);
        const PolyValue b =
            hermite_two_index_direct_sum(m, n, 0.9, -1.2, -0.5, 0.8, 1.7);
        check_rel(a.value, b.value, 1e-11);
      }
  }
}

TEST_CASE("two-index derivatives lower one index each") {
  const double x = 0.6, y = -0.8, w = 1.4, z = 0.5, tau = -0.9;
  CHECK(hermite_two_index_deriv(2, 3, 3, 0, x, y, w, z, tau).value == 0.0);
  const double fd = richardson_derivative(
      [&](double t) { return hermite_two_index(4, 3, t, y, w, z, tau).value; },
      x, 1, 0.05, 5);
  check_rel(hermite_two_index_deriv(4, 3, 1, 0, x, y, w, z, tau).value, fd,
            1e-8);
  const double fdw = richardson_derivative(
      [&](double t) { return hermite_two_index(4, 3, x, y, t, z, tau).value; },
      w, 2, 0.05, 5);
  check_rel(hermite_two_index_deriv(4, 3, 0, 2, x, y, w, z, tau).value, fdw,
            1e-8);
}

TEST_CASE("gamma-weighted family") {
  check_rel(hermite_nu(0, 1.0, 0.0, 0.0).value, kSqrtPi, 1e-15);
  check_rel(hermite_nu(2, 2.0, 1.0, 1.0).value, 4.4311346272637901, 1e-14);

  SUBCASE("y = 0 reduces to Gamma(nu - 1/2) x^n") {
    for (int n : {0, 1, 3, 6})
      check_rel(hermite_nu(n, 2.25, 1.3, 0.0).value,
                std::tgamma(1.75) * std::pow(1.3, n), 1e-13);
  }

  SUBCASE("poles of the Gamma weight are rejected") {
    CHECK_THROWS_AS(hermite_nu(0, 0.5, 1.0, 1.0), EvalError);
    CHECK_THROWS_AS(hermite_nu(2, -0.5, 1.0, 1.0), EvalError);
    try {
      hermite_nu(0, 0.5, 1.0, 1.0);
    } catch (const EvalError& e) {
      CHECK(e.code() == errc::gamma_pole);
    }
    // non-integer negative arguments are fine
    CHECK(std::isfinite(hermite_nu(0, 0.25, 1.0, 1.0).value));
  }
}

TEST_CASE("generating function truncation residuals") {
  const double r40 = genfn_truncation_residual(40, 0.9, 1.3, -0.7);
  CHECK(r40 <= 1e-10);
  const double r10 = genfn_truncation_residual(10, 0.9, 1.3, -0.7);
  CHECK(r40 <= r10 + 1e-12);

  const double r2 =
      genfn_truncation_residual_two_index(12, 0.4, -0.3, 0.8, -0.2, 1.1, 0.5,
                                          0.6);
  CHECK(r2 <= 1e-10);
}

TEST_CASE("index limits and argument validation") {
  CHECK_THROWS_AS(hermite2(-1, 1.0, 1.0), EvalError);
  CHECK_THROWS_AS(hermite2(max_index() + 1, 1.0, 1.0), EvalError);
  try {
    hermite2(max_index() + 1, 1.0, 1.0);
  } catch (const EvalError& e) {
    CHECK(e.code() == errc::index_too_large);
  }
  CHECK_THROWS_AS(hermite2(2, std::nan(""), 0.0), EvalError);

  set_max_index(10);
  CHECK_THROWS_AS(hermite2(11, 1.0, 1.0), EvalError);
  CHECK(hermite2(10, 1.0, 1.0).value != 0.0);
  set_max_index(kDefaultMaxIndex);

  CHECK_THROWS_AS(set_max_index(0), EvalError);
  CHECK_THROWS_AS(set_max_index(kHardMaxIndex + 1), EvalError);
}

TEST_CASE("value-only path is bit-identical to the tracked path") {
  for (int n = 0; n <= 30; ++n)
    for (double x : {-3.1, 0.9, 4.0})
      for (double y : {-2.0, 0.5}) {
        CHECK(hermite2(n, x, y).value == hermite2_value(n, x, y));
      }
  const std::vector<double> seq = hermite2_sequence(12, 1.7, -0.6);
  for (int k = 0; k <= 12; ++k)
    CHECK(seq[static_cast<std::size_t>(k)] == hermite2(k, 1.7, -0.6).value);
}

TEST_CASE("error estimates are sane") {
  for (int n : {2, 10, 25}) {
    const PolyValue v = hermite2(n, 1.9, -1.1);
    CHECK(v.abs_err_est >= 0.0);
    CHECK(v.abs_err_est <= 1e-10 * std::abs(v.value));
  }
}

TEST_CASE("query dispatch") {
  PolyQuery q;
  q.family = PolyFamily::TwoVariable;
  q.n = 2, q.x = 3.0, q.y = 1.0;
  CHECK(evaluate(q).value == 11.0);
  q.family = PolyFamily::TwoIndex;
  q.m = 1, q.n = 1, q.x = 2.0, q.y = 0.0, q.w = 3.0, q.z = 0.0, q.tau = 5.0;
  CHECK(evaluate(q).value == 11.0);
  q.family = PolyFamily::GammaWeighted;
  q.n = 0, q.nu = 1.0, q.x = 0.0, q.y = 0.0;
  check_rel(evaluate(q).value, kSqrtPi, 1e-15);
}
