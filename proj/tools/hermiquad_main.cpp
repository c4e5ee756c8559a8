#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hermiquad/batch.hpp"
#include "hermiquad/config.hpp"
#include "hermiquad/detail/json_writer.hpp"
#include "hermiquad/oracle.hpp"
#include "hermiquad/spec_io.hpp"
#include "hermiquad/verify.hpp"

namespace hq = hermiquad;
using hq::detail::JsonWriter;

namespace {

// Comparison tolerances for `integral --method both`; verify has its own
// --rel-tol flag.
constexpr double kMomentRelTol = 1e-9;
constexpr double kQuadRelTol = 1e-7;
constexpr double kPolyRelTol = 1e-10;

int apply_nmax_env() {
  const char* env = std::getenv("HERMIQUAD_NMAX");
  if (env == nullptr) return 0;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || v < 1 || v > hq::kHardMaxIndex) {
    std::cerr << "error: HERMIQUAD_NMAX must be an integer in [1, "
              << hq::kHardMaxIndex << "], got \"" << env << "\"\n";
    return 2;
  }
  hq::set_max_index(static_cast<int>(v));
  return 0;
}

// ---------------------------------------------------------------------------
// integral subcommand

struct EntryRun {
  const hq::SpecEntry* entry = nullptr;
  bool valid = true;
  std::string error_code, error_message;
  std::vector<std::string> notes;

  bool has_closed = false;
  hq::EvalReport closed;
  bool has_moment = false;
  hq::OracleReport moment;
  bool has_quad = false;
  hq::OracleReport quad;
  bool has_direct = false;
  hq::PolyValue direct;

  bool cm_done = false, cq_done = false, cd_done = false;
  hq::ComparisonRecord cm, cq, cd;
};

hq::PolyValue poly_direct_route(const hq::PolyQuery& q) {
  if (q.family == hq::PolyFamily::TwoVariable)
    return hq::hermite2_direct_sum(q.n, q.x, q.y);
  return hq::hermite_two_index_direct_sum(q.m, q.n, q.x, q.y, q.w, q.z, q.tau);
}

EntryRun run_entry(const hq::SpecEntry& entry, const std::string& method) {
  EntryRun r;
  r.entry = &entry;
  const bool want_closed = method != "oracle";
  const bool want_oracle = method != "closed";
  try {
    if (const auto* g = std::get_if<hq::GaussIntegralSpec>(&entry.payload)) {
      if (want_closed) {
        r.closed = hq::eval_closed(*g);
        r.has_closed = true;
      }
      if (want_oracle) {
        r.moment = hq::moment_oracle(*g);
        r.has_moment = true;
        r.quad = hq::quad_integral(*g, hq::QuadratureConfig{});
        r.has_quad = true;
        if (!r.quad.converged) r.notes.push_back("quadrature did not converge");
      }
      if (r.has_closed && r.has_moment) {
        r.cm = hq::compare(r.closed, r.moment, kMomentRelTol);
        r.cm_done = true;
      }
      if (r.has_closed && r.has_quad) {
        r.cq = hq::compare(r.closed, r.quad, kQuadRelTol);
        r.cq_done = true;
      }
    } else if (const auto* rat =
                   std::get_if<hq::RationalIntegralSpec>(&entry.payload)) {
      if (want_closed) {
        r.closed = hq::eval_rational_In(*rat);
        r.has_closed = true;
      }
      if (want_oracle) {
        hq::QuadratureConfig qc;
        qc.transform = hq::QuadTransform::RationalSubstitution;
        r.quad = hq::quad_integral(*rat, qc);
        r.has_quad = true;
        if (!r.quad.converged) r.notes.push_back("quadrature did not converge");
      }
      if (r.has_closed && r.has_quad) {
        r.cq = hq::compare(r.closed, r.quad, kQuadRelTol);
        r.cq_done = true;
      }
    } else {
      const auto& q = std::get<hq::PolyQuery>(entry.payload);
      if (want_closed) {
        const hq::PolyValue v = hq::evaluate(q);
        r.closed = {v.value, hq::Method::ClosedForm, v.abs_err_est, true, ""};
        r.has_closed = true;
      }
      if (want_oracle) {
        if (q.family == hq::PolyFamily::GammaWeighted) {
          r.notes.push_back(
              "no independent oracle for the gamma-weighted family");
        } else {
          r.direct = poly_direct_route(q);
          r.has_direct = true;
        }
      }
      if (r.has_closed && r.has_direct) {
        r.cd = hq::compare(r.closed.value, r.closed.abs_err_est,
                           r.direct.value, r.direct.abs_err_est, kPolyRelTol);
        r.cd_done = true;
      }
    }
  } catch (const hq::EvalError& e) {
    r.valid = false;
    r.error_code = hq::errc_name(e.code());
    r.error_message = e.what();
  }
  return r;
}

bool entry_pass(const EntryRun& r) {
  if (!r.valid) return true;  // errors are counted separately
  if (r.cm_done && !r.cm.pass) return false;
  if (r.cq_done && (!r.cq.pass || !r.quad.converged)) return false;
  if (r.cd_done && !r.cd.pass) return false;
  return true;
}

void write_oracle_object(JsonWriter& w, const hq::OracleReport& o) {
  w.begin_object();
  w.kv("value", o.value);
  w.kv("err_est", o.err_est);
  w.kv("evaluations", static_cast<long long>(o.evaluations));
  w.kv("converged", o.converged);
  w.end_object();
}

void write_entry_result(JsonWriter& w, const EntryRun& r,
                        const std::string& method) {
  w.begin_object();
  w.kv("id", r.entry->id);
  w.key("spec");
  w.begin_object();
  hq::write_entry_payload(w, *r.entry);
  w.end_object();
  w.kv("valid", r.valid);
  if (!r.valid) {
    w.key("error");
    w.begin_object();
    w.kv("code", r.error_code);
    w.kv("message", r.error_message);
    w.end_object();
    w.end_object();
    return;
  }

  // headline value: closed form when computed, otherwise the oracle route
  if (r.has_closed) {
    w.kv("value", r.closed.value);
    w.kv("method", hq::method_name(r.closed.method));
    w.kv("abs_err_est", r.closed.abs_err_est);
  } else if (r.has_moment) {
    w.kv("value", r.moment.value);
    w.kv("method", hq::method_name(hq::Method::MomentOracle));
    w.kv("abs_err_est", r.moment.err_est);
  } else if (r.has_quad) {
    w.kv("value", r.quad.value);
    w.kv("method", hq::method_name(hq::Method::Quadrature));
    w.kv("abs_err_est", r.quad.err_est);
  } else if (r.has_direct) {
    w.kv("value", r.direct.value);
    w.kv("method", "DirectSum");
    w.kv("abs_err_est", r.direct.abs_err_est);
  } else {
    w.key("value");
    w.value_null();
    w.key("method");
    w.value_null();
  }

  if (r.has_moment) {
    w.key("moment");
    write_oracle_object(w, r.moment);
  }
  if (r.has_quad) {
    w.key("quad");
    write_oracle_object(w, r.quad);
  }
  if (r.has_direct) {
    w.key("direct");
    w.begin_object();
    w.kv("value", r.direct.value);
    w.kv("err_est", r.direct.abs_err_est);
    w.end_object();
  }
  if (r.cm_done) w.kv("discrepancy_moment", r.cm.discrepancy);
  if (r.cq_done) w.kv("discrepancy_quad", r.cq.discrepancy);
  if (r.cd_done) w.kv("discrepancy_direct", r.cd.discrepancy);
  if (method == "both" && (r.cm_done || r.cq_done || r.cd_done))
    w.kv("pass", entry_pass(r));
  std::string notes;
  for (const std::string& n : r.notes) {
    if (!notes.empty()) notes += "; ";
    notes += n;
  }
  w.kv("notes", notes);
  w.end_object();
}

int cmd_integral(const std::string& path, const std::string& method) {
  hq::SpecFile file;
  try {
    file = hq::load_spec_file(path);
  } catch (const hq::SpecParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  const auto t0 = std::chrono::steady_clock::now();
  std::vector<EntryRun> runs;
  runs.reserve(file.entries.size());
  for (const hq::SpecEntry& entry : file.entries)
    runs.push_back(run_entry(entry, method));

  // report assembly is ordered by entry id, independent of evaluation order
  std::sort(runs.begin(), runs.end(),
            [](const EntryRun& a, const EntryRun& b) {
              return a.entry->id < b.entry->id;
            });

  long errors = 0, comparisons = 0, comparisons_failed = 0;
  double max_disc = 0.0;
  for (const EntryRun& r : runs) {
    if (!r.valid) {
      ++errors;
      continue;
    }
    for (const auto* c : {r.cm_done ? &r.cm : nullptr,
                          r.cq_done ? &r.cq : nullptr,
                          r.cd_done ? &r.cd : nullptr}) {
      if (c == nullptr) continue;
      ++comparisons;
      max_disc = std::max(max_disc, c->discrepancy);
    }
    if (!entry_pass(r)) ++comparisons_failed;
  }
  const double wall_ms = std::chrono::duration<double, std::milli>(
                             std::chrono::steady_clock::now() - t0)
                             .count();

  JsonWriter w;
  w.begin_object();
  w.kv("schema_version", 1);
  w.kv("command", "integral");
  w.kv("spec_path", path);
  w.kv("method", method);
  w.key("results");
  w.begin_array();
  for (const EntryRun& r : runs) write_entry_result(w, r, method);
  w.end_array();
  w.key("summary");
  w.begin_object();
  w.kv("entries", static_cast<long long>(runs.size()));
  w.kv("valid", static_cast<long long>(runs.size()) - errors);
  w.kv("errors", errors);
  w.kv("comparisons", comparisons);
  w.kv("comparisons_failed", comparisons_failed);
  w.kv("max_discrepancy", max_disc);
  w.kv("wall_ms", wall_ms);
  w.end_object();
  w.end_object();
  std::cout << w.take() << "\n";

  if (comparisons_failed > 0) return 4;
  if (errors > 0) return 3;
  return 0;
}

int print_poly(const hq::PolyQuery& q) {
  try {
    const hq::PolyValue v = hq::evaluate(q);
    JsonWriter w;
    w.begin_object();
    w.kv("value", v.value);
    w.kv("abs_err_est", v.abs_err_est);
    w.end_object();
    std::cout << w.take() << "\n";
    return 0;
  } catch (const hq::EvalError& e) {
    std::cerr << "error: " << hq::errc_name(e.code()) << ": " << e.what()
              << "\n";
    return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  if (const int rc = apply_nmax_env(); rc != 0) return rc;

  CLI::App app{
      "hermiquad: multivariable Hermite polynomials, closed-form Gaussian "
      "integrals and their verification oracles"};
  app.require_subcommand(1);

  // poly
  auto* poly = app.add_subcommand("poly", "evaluate a polynomial kernel");
  poly->require_subcommand(1);
  hq::PolyQuery q;

  auto* h2 = poly->add_subcommand("h2", "two-variable H_n(x, y)");
  h2->add_option("--n", q.n, "index")->required();
  h2->add_option("--x", q.x, "first argument");
  h2->add_option("--y", q.y, "second argument");

  auto* hmn = poly->add_subcommand(
      "hmn", "two-index H_{m,n}(x, y; w, z | tau)");
  hmn->add_option("--m", q.m, "first index")->required();
  hmn->add_option("--n", q.n, "second index")->required();
  hmn->add_option("--x", q.x, "x");
  hmn->add_option("--y", q.y, "y");
  hmn->add_option("--w", q.w, "w");
  hmn->add_option("--z", q.z, "z");
  hmn->add_option("--tau", q.tau, "coupling");

  auto* hnu = poly->add_subcommand("hnu", "gamma-weighted H_n^(nu)(x, y)");
  hnu->add_option("--n", q.n, "index")->required();
  hnu->add_option("--nu", q.nu, "weight parameter")->required();
  hnu->add_option("--x", q.x, "first argument");
  hnu->add_option("--y", q.y, "second argument");

  // integral
  auto* integral =
      app.add_subcommand("integral", "evaluate integral specs from a file");
  std::string spec_path, method = "closed";
  integral->add_option("--spec", spec_path, "path to a JSON spec file")
      ->required();
  integral->add_option("--method", method, "closed, oracle or both")
      ->check(CLI::IsMember({"closed", "oracle", "both"}));

  // verify
  auto* verify =
      app.add_subcommand("verify", "seeded closed-form vs oracle grid");
  hq::VerifyOptions vopt;
  std::uint64_t seed = 0;
  long cases = 0;
  verify->add_option("--seed", seed, "RNG seed")->required();
  verify->add_option("--cases", cases, "number of sampled cases")->required();
  verify->add_option("--rel-tol", vopt.rel_tol,
                     "relative tolerance vs the moment oracle");
  verify->add_flag("--deterministic", vopt.deterministic,
                   "suppress timestamp and wall time in the report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  if (h2->parsed()) {
    q.family = hq::PolyFamily::TwoVariable;
    return print_poly(q);
  }
  if (hmn->parsed()) {
    q.family = hq::PolyFamily::TwoIndex;
    return print_poly(q);
  }
  if (hnu->parsed()) {
    q.family = hq::PolyFamily::GammaWeighted;
    return print_poly(q);
  }
  if (integral->parsed()) return cmd_integral(spec_path, method);
  if (verify->parsed()) {
    vopt.seed = seed;
    vopt.cases = cases;
    try {
      const hq::VerifyOutcome out = hq::run_verify(vopt);
      std::cout << out.report_json << "\n";
      if (!out.all_pass) {
        std::cerr << "verify: " << out.case_failures << " case failure(s), "
                  << out.structural_failures << " structural failure(s)\n";
        return 4;
      }
      return 0;
    } catch (const hq::EvalError& e) {
      std::cerr << "error: " << hq::errc_name(e.code()) << ": " << e.what()
                << "\n";
      return 2;
    }
  }
  return 2;
}
