#include "hermiquad/verify.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <random>
#include <vector>

#include "hermiquad/batch.hpp"
#include "hermiquad/detail/arith.hpp"
#include "hermiquad/detail/json_writer.hpp"
#include "hermiquad/oracle.hpp"
#include "hermiquad/spec_io.hpp"

namespace hermiquad {
namespace {

using detail::JsonWriter;

constexpr double kSqrtPi = 1.7724538509055160273;

// Uniform draws built directly on the raw engine output so the stream is
// reproducible regardless of library distribution internals.
double unit_double(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * unit_double(rng);
}

int uniform_index(std::mt19937_64& rng, int hi_inclusive) {
  return static_cast<int>(unit_double(rng) * (hi_inclusive + 1));
}

// Sampling box: linear coefficients in [-3, 3], second arguments in [-2, 2],
// decay f in [0.5, 4], indices in {0..8}. Draw order is fixed per kind; do
// not reorder, it would silently change every seeded grid.
GaussIntegralSpec sample_gauss(GaussKind kind, std::mt19937_64& rng) {
  GaussIntegralSpec s;
  s.kind = kind;
  switch (kind) {
    case GaussKind::In:
      s.n = uniform_index(rng, 8);
      s.a = uniform(rng, -3.0, 3.0);
      s.b = uniform(rng, -3.0, 3.0);
      s.y = uniform(rng, -2.0, 2.0);
      break;
    case GaussKind::mIn:
      s.m = uniform_index(rng, 8);
      s.n = uniform_index(rng, 8);
      s.a = uniform(rng, -3.0, 3.0);
      s.b = uniform(rng, -3.0, 3.0);
      s.y = uniform(rng, -2.0, 2.0);
      break;
    case GaussKind::Imn:
    case GaussKind::pImn:
      if (kind == GaussKind::pImn) s.p = uniform_index(rng, 8);
      s.m = uniform_index(rng, 8);
      s.n = uniform_index(rng, 8);
      s.a = uniform(rng, -3.0, 3.0);
      s.b = uniform(rng, -3.0, 3.0);
      s.y = uniform(rng, -2.0, 2.0);
      s.c = uniform(rng, -3.0, 3.0);
      s.d = uniform(rng, -3.0, 3.0);
      s.z = uniform(rng, -2.0, 2.0);
      break;
    case GaussKind::ScriptImn:
      s.m = uniform_index(rng, 8);
      s.n = uniform_index(rng, 8);
      s.a = uniform(rng, -3.0, 3.0);
      s.b = uniform(rng, -3.0, 3.0);
      s.c = uniform(rng, -3.0, 3.0);
      s.d = uniform(rng, -3.0, 3.0);
      break;
  }
  s.f = uniform(rng, 0.5, 4.0);
  s.alpha = uniform(rng, -3.0, 3.0);
  return s;
}

RationalIntegralSpec sample_rational(std::mt19937_64& rng) {
  RationalIntegralSpec s;
  s.n = uniform_index(rng, 8);
  // keep 2 nu - n - 1 >= 0.2 so the integral converges with margin
  s.nu = 0.5 * (s.n + 1) + uniform(rng, 0.1, 3.0);
  s.a = uniform(rng, -3.0, 3.0);
  s.b = uniform(rng, -3.0, 3.0);
  s.c = uniform(rng, 0.2, 4.0);
  return s;
}

struct CaseOutcome {
  SpecEntry entry;
  bool errored = false;
  std::string error_code, error_message;
  bool pass = false;
  EvalReport closed;
  bool has_moment = false;
  OracleReport moment;
  ComparisonRecord cm;
  bool has_quad = false;
  OracleReport quad;
  ComparisonRecord cq;
};

CaseOutcome run_gauss_case(const GaussIntegralSpec& s, double rel_tol,
                           long idx) {
  CaseOutcome o;
  o.entry.id = "case-" + std::to_string(idx);
  o.entry.payload = s;
  try {
    o.closed = eval_closed(s);
    o.moment = moment_oracle(s);
    o.has_moment = true;
    o.cm = compare(o.closed, o.moment, rel_tol);
    o.quad = quad_integral(s, QuadratureConfig{});
    o.has_quad = true;
    o.cq = compare(o.closed, o.quad, rel_tol * 100.0);
    o.pass = o.cm.pass && o.cq.pass && o.quad.converged;
  } catch (const EvalError& e) {
    o.errored = true;
    o.error_code = errc_name(e.code());
    o.error_message = e.what();
  }
  return o;
}

CaseOutcome run_rational_case(const RationalIntegralSpec& s, double rel_tol,
                              long idx) {
  CaseOutcome o;
  o.entry.id = "case-" + std::to_string(idx);
  o.entry.payload = s;
  try {
    o.closed = eval_rational_In(s);
    QuadratureConfig qc;
    qc.transform = QuadTransform::RationalSubstitution;
    o.quad = quad_integral(s, qc);
    o.has_quad = true;
    o.cq = compare(o.closed, o.quad, rel_tol * 100.0);
    o.pass = o.cq.pass && o.quad.converged;
  } catch (const EvalError& e) {
    o.errored = true;
    o.error_code = errc_name(e.code());
    o.error_message = e.what();
  }
  return o;
}

struct StructCheck {
  std::string id;
  bool pass = false;
  double discrepancy = 0.0;
  std::string notes;
};

StructCheck rel_check(const std::string& id, double a, double b, double tol,
                      const std::string& notes) {
  StructCheck c;
  c.id = id;
  c.notes = notes;
  const double scale = std::max(std::abs(a), std::abs(b));
  c.discrepancy = scale > 0.0 ? std::abs(a - b) / scale : 0.0;
  c.pass = std::isfinite(a) && std::isfinite(b) && c.discrepancy <= tol;
  return c;
}

std::vector<StructCheck> structural_checks() {
  std::vector<StructCheck> out;

  {  // tau = 0 splits the two-index kernel into a plain product
    const double args[][6] = {{3, 2, 1.1, -0.4, 0.7, 0.9},
                              {5, 5, -2.0, 1.5, 0.3, -1.0},
                              {4, 1, 0.5, 0.5, -1.2, 2.0}};
    double worst = 0.0;
    bool ok = true;
    for (const double* t : args) {
      const int m = static_cast<int>(t[0]), n = static_cast<int>(t[1]);
      const double lhs = hermite_two_index(m, n, t[2], t[3], t[4], t[5], 0.0).value;
      const double rhs = hermite2(m, t[2], t[3]).value * hermite2(n, t[4], t[5]).value;
      const StructCheck c = rel_check("", lhs, rhs, 1e-12, "");
      worst = std::max(worst, c.discrepancy);
      ok = ok && c.pass;
    }
    out.push_back({"two-index-tau0-factorization", ok, worst,
                   "H_{m,n}(..|0) = H_m H_n"});
  }

  {  // index-swap symmetry of the two-index kernel
    const double args[][7] = {{3, 2, 1.1, -0.4, 0.7, 0.9, 0.8},
                              {6, 4, -1.5, 0.6, 2.0, -0.3, -1.2}};
    double worst = 0.0;
    bool ok = true;
    for (const double* t : args) {
      const int m = static_cast<int>(t[0]), n = static_cast<int>(t[1]);
      const double lhs =
          hermite_two_index(m, n, t[2], t[3], t[4], t[5], t[6]).value;
      const double rhs =
          hermite_two_index(n, m, t[4], t[5], t[2], t[3], t[6]).value;
      const StructCheck c = rel_check("", lhs, rhs, 1e-12, "");
      worst = std::max(worst, c.discrepancy);
      ok = ok && c.pass;
    }
    out.push_back({"two-index-symmetry", ok, worst,
                   "H_{m,n}(x,y;w,z|tau) = H_{n,m}(w,z;x,y|tau)"});
  }

  GaussIntegralSpec base;
  base.kind = GaussKind::Imn;
  base.m = 3, base.n = 2;
  base.a = 1.2, base.b = 0.3, base.y = -0.5;
  base.c = 0.8, base.d = -1.1, base.z = 0.7;
  base.f = 1.3, base.alpha = 0.4;

  {  // the integrand is symmetric under swapping its two linear factors
    GaussIntegralSpec sw = base;
    std::swap(sw.m, sw.n);
    std::swap(sw.a, sw.c);
    std::swap(sw.b, sw.d);
    std::swap(sw.y, sw.z);
    out.push_back(rel_check("integral-factor-swap", eval_Imn(base).value,
                            eval_Imn(sw).value, 1e-12,
                            "swapping (m,a,b,y) with (n,c,d,z)"));
  }

  {  // y = z = 0 reduces the coupled form to the plain-power form
    GaussIntegralSpec plain = base;
    plain.y = 0.0;
    plain.z = 0.0;
    GaussIntegralSpec script = plain;
    script.kind = GaussKind::ScriptImn;
    out.push_back(rel_check("kind-consistency-script",
                            eval_Imn(plain).value,
                            eval_calligraphic_Imn(script).value, 1e-12,
                            "Imn at y=z=0 vs ScriptImn"));
  }

  {  // n = 0 second factor collapses Imn onto In
    GaussIntegralSpec one = base;
    one.n = 0;
    GaussIntegralSpec in;
    in.kind = GaussKind::In;
    in.n = one.m;
    in.a = one.a, in.b = one.b, in.y = one.y;
    in.f = one.f, in.alpha = one.alpha;
    out.push_back(rel_check("kind-consistency-in", eval_Imn(one).value,
                            eval_In(in).value, 1e-12, "Imn with n=0 vs In"));
  }

  {  // m = 0 moment factor collapses mIn onto In
    GaussIntegralSpec mo;
    mo.kind = GaussKind::mIn;
    mo.m = 0, mo.n = 4;
    mo.a = 1.5, mo.b = -0.2, mo.y = 0.6;
    mo.f = 0.9, mo.alpha = -1.1;
    GaussIntegralSpec in = mo;
    in.kind = GaussKind::In;
    out.push_back(rel_check("kind-consistency-min", eval_mIn(mo).value,
                            eval_In(in).value, 1e-12, "mIn with m=0 vs In"));
  }

  {  // p = 0 collapses pImn onto Imn
    GaussIntegralSpec pz = base;
    pz.kind = GaussKind::pImn;
    pz.p = 0;
    out.push_back(rel_check("kind-consistency-pimn", eval_pImn(pz).value,
                            eval_Imn(base).value, 1e-12,
                            "pImn with p=0 vs Imn"));
  }

  {  // physicists' orthogonality: a=c=2, y=z=-1, f=1 gives
     // sqrt(pi) 2^n n! delta_{mn}
    double worst = 0.0;
    bool ok = true;
    for (int m = 0; m <= 8; ++m) {
      for (int n = 0; n <= 8; ++n) {
        GaussIntegralSpec s;
        s.kind = GaussKind::Imn;
        s.m = m, s.n = n;
        s.a = 2.0, s.b = 0.0, s.y = -1.0;
        s.c = 2.0, s.d = 0.0, s.z = -1.0;
        s.f = 1.0, s.alpha = 0.0;
        const double v = eval_Imn(s).value;
        const double diag_m = kSqrtPi * detail::pow_int(2.0, m) * detail::factorial(m);
        const double diag_n = kSqrtPi * detail::pow_int(2.0, n) * detail::factorial(n);
        const double target = m == n ? diag_n : 0.0;
        const double scale = std::sqrt(diag_m * diag_n);
        const double disc = std::abs(v - target) / scale;
        worst = std::max(worst, disc);
        ok = ok && std::isfinite(v) && disc <= 1e-9;
      }
    }
    out.push_back({"orthogonality-grid", ok, worst,
                   "Hermite orthogonality for m,n <= 8"});
  }

  return out;
}

void write_case_failure(JsonWriter& w, const CaseOutcome& o) {
  w.begin_object();
  w.kv("id", o.entry.id);
  w.key("spec");
  w.begin_object();
  write_entry_payload(w, o.entry);
  w.end_object();
  if (o.errored) {
    w.key("error");
    w.begin_object();
    w.kv("code", o.error_code);
    w.kv("message", o.error_message);
    w.end_object();
  } else {
    w.kv("closed_value", o.closed.value);
    w.kv("closed_err_est", o.closed.abs_err_est);
    if (o.has_moment) {
      w.kv("moment_value", o.moment.value);
      w.kv("discrepancy_moment", o.cm.discrepancy);
      w.kv("tolerance_moment", o.cm.tolerance);
      w.kv("moment_pass", o.cm.pass);
    }
    if (o.has_quad) {
      w.kv("quad_value", o.quad.value);
      w.kv("quad_converged", o.quad.converged);
      w.kv("discrepancy_quad", o.cq.discrepancy);
      w.kv("tolerance_quad", o.cq.tolerance);
      w.kv("quad_pass", o.cq.pass);
    }
  }
  w.end_object();
}

std::string utc_timestamp() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

VerifyOutcome run_verify(const VerifyOptions& opt) {
  if (opt.cases < 1)
    throw EvalError(errc::invalid_argument, "cases must be >= 1");
  if (!(opt.rel_tol > 0.0) || !std::isfinite(opt.rel_tol))
    throw EvalError(errc::invalid_argument, "rel_tol must be positive");

  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(opt.seed);

  VerifyOutcome out;
  std::vector<CaseOutcome> failures;
  for (long i = 0; i < opt.cases; ++i) {
    CaseOutcome o;
    switch (i % 6) {
      case 0: o = run_gauss_case(sample_gauss(GaussKind::In, rng), opt.rel_tol, i); break;
      case 1: o = run_gauss_case(sample_gauss(GaussKind::mIn, rng), opt.rel_tol, i); break;
      case 2: o = run_gauss_case(sample_gauss(GaussKind::Imn, rng), opt.rel_tol, i); break;
      case 3: o = run_gauss_case(sample_gauss(GaussKind::ScriptImn, rng), opt.rel_tol, i); break;
      case 4: o = run_gauss_case(sample_gauss(GaussKind::pImn, rng), opt.rel_tol, i); break;
      default: o = run_rational_case(sample_rational(rng), opt.rel_tol, i); break;
    }
    ++out.cases_run;
    if (o.errored) {
      ++out.errored;
      ++out.case_failures;
      failures.push_back(std::move(o));
      continue;
    }
    if (o.has_moment)
      out.max_discrepancy_moment =
          std::max(out.max_discrepancy_moment, o.cm.discrepancy);
    if (o.has_quad)
      out.max_discrepancy_quad =
          std::max(out.max_discrepancy_quad, o.cq.discrepancy);
    if (!o.pass) {
      ++out.case_failures;
      failures.push_back(std::move(o));
    }
  }

  const std::vector<StructCheck> checks = structural_checks();
  for (const StructCheck& c : checks)
    if (!c.pass) ++out.structural_failures;

  out.all_pass = out.case_failures == 0 && out.structural_failures == 0;
  out.wall_seconds = std::chrono::duration<double>(
                         std::chrono::steady_clock::now() - t0)
                         .count();

  JsonWriter w;
  w.begin_object();
  w.kv("schema_version", 1);
  w.kv("command", "verify");
  if (!opt.deterministic) w.kv("timestamp", utc_timestamp());
  w.key("options");
  w.begin_object();
  w.kv("seed", static_cast<std::uint64_t>(opt.seed));
  w.kv("cases", static_cast<long long>(opt.cases));
  w.kv("rel_tol", opt.rel_tol);
  w.kv("deterministic", opt.deterministic);
  w.end_object();
  w.kv("backend", batch::backend_name(batch::active_backend()));
  w.key("summary");
  w.begin_object();
  w.kv("cases", static_cast<long long>(out.cases_run));
  w.kv("case_failures", static_cast<long long>(out.case_failures));
  w.kv("errors", static_cast<long long>(out.errored));
  w.kv("structural_checks", static_cast<long long>(checks.size()));
  w.kv("structural_failures", static_cast<long long>(out.structural_failures));
  w.kv("max_discrepancy_moment", out.max_discrepancy_moment);
  w.kv("max_discrepancy_quad", out.max_discrepancy_quad);
  w.kv("all_pass", out.all_pass);
  if (!opt.deterministic) w.kv("wall_ms", out.wall_seconds * 1e3);
  w.end_object();
  w.key("structural");
  w.begin_array();
  for (const StructCheck& c : checks) {
    w.begin_object();
    w.kv("id", c.id);
    w.kv("pass", c.pass);
    w.kv("discrepancy", c.discrepancy);
    w.kv("notes", c.notes);
    w.end_object();
  }
  w.end_array();
  w.key("failures");
  w.begin_array();
  for (const CaseOutcome& o : failures) write_case_failure(w, o);
  w.end_array();
  w.end_object();

  out.report_json = w.take();
  return out;
}

}  // namespace hermiquad
