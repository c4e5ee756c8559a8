#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

#include "hermiquad/detail/json_writer.hpp"
#include "hermiquad/spec_io.hpp"

using nlohmann::json;

namespace {

constexpr double kSqrtPi = 1.7724538509055160273;
constexpr double kPi = 3.14159265358979323846;

struct RunResult {
  int status = -1;
  std::string out;
};

// Runs the installed binary through the shell with a scrubbed environment so
// a stray HERMIQUAD_* variable cannot skew the expectations.
RunResult run_cmd(const std::string& cmd) {
  RunResult r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, got);
  const int rc = pclose(p);
  REQUIRE(rc != -1);
  r.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  return r;
}

RunResult run_cli(const std::string& args, const std::string& env = "") {
  return run_cmd("env -u HERMIQUAD_NMAX -u HERMIQUAD_SIMD " + env + " " +
                 HERMIQUAD_CLI_PATH + " " + args + " 2>/dev/null");
}

RunResult run_cli_stderr(const std::string& args) {
  return run_cmd(std::string("env -u HERMIQUAD_NMAX -u HERMIQUAD_SIMD ") +
                 HERMIQUAD_CLI_PATH + " " + args + " 2>&1 1>/dev/null");
}

std::string data(const std::string& name) {
  return std::string(HERMIQUAD_DATA_DIR) + "/" + name;
}

json parse_out(const RunResult& r) {
  json j = json::parse(r.out, nullptr, false);
  REQUIRE(!j.is_discarded());
  return j;
}

const json& result_by_id(const json& report, const std::string& id) {
  for (const json& e : report.at("results"))
    if (e.at("id") == id) return e;
  static json missing;
  FAIL("no result with id " << id);
  return missing;
}

void check_value(const json& report, const std::string& id, double want,
                 double tol) {
  const json& e = result_by_id(report, id);
  REQUIRE(e.at("valid") == true);
  const double got = e.at("value").get<double>();
  CAPTURE(id);
  CAPTURE(got);
  CHECK(std::abs(got - want) <=
        tol * std::max({std::abs(got), std::abs(want), 1.0}));
}

}  // namespace

TEST_CASE("poly subcommand prints a value object") {
  RunResult r = run_cli("poly h2 --n 2 --x 3 --y 1");
  CHECK(r.status == 0);
  json j = parse_out(r);
  CHECK(j.at("value").get<double>() == 11.0);
  CHECK(j.at("abs_err_est").get<double>() >= 0.0);

  r = run_cli("poly hmn --m 1 --n 1 --x 1 --y 0.5 --w 1 --z 0.5 --tau 2");
  CHECK(r.status == 0);
  CHECK(parse_out(r).at("value").get<double>() == 3.0);

  r = run_cli("poly hnu --n 0 --nu 1");
  CHECK(r.status == 0);
  CHECK(parse_out(r).at("value").get<double>() ==
        doctest::Approx(kSqrtPi).epsilon(1e-14));
}

TEST_CASE("poly subcommand failures exit 2") {
  CHECK(run_cli("poly h2 --n -1 --x 0 --y 0").status == 2);
  CHECK(run_cli("poly h2 --x 1").status == 2);  // missing required --n
  const RunResult r = run_cli_stderr("poly hnu --n 1 --nu 0.5 --x 1 --y 1");
  CHECK(r.status == 2);
  CHECK(r.out.find("GammaPole") != std::string::npos);
}

TEST_CASE("top-level usage errors exit 0 or 2") {
  CHECK(run_cli("--help").status == 0);
  CHECK(run_cli("").status == 2);             // a subcommand is required
  CHECK(run_cli("frobnicate").status == 2);   // unknown subcommand
  CHECK(run_cli("integral --spec x --method bogus").status == 2);
}

TEST_CASE("integral closed run reports known values in id order") {
  const RunResult r =
      run_cli("integral --spec " + data("values.json") + " --method closed");
  CHECK(r.status == 0);
  const json j = parse_out(r);
  CHECK(j.at("schema_version") == 1);
  CHECK(j.at("method") == "closed");

  const json& res = j.at("results");
  REQUIRE(res.size() == 10);
  for (std::size_t i = 1; i < res.size(); ++i)
    CHECK(res[i - 1].at("id").get<std::string>() <
          res[i].at("id").get<std::string>());

  check_value(j, "a-in-sqrtpi", kSqrtPi, 1e-14);
  check_value(j, "b-rational-two", 2.0, 1e-14);
  check_value(j, "c-poly-hnu", kSqrtPi, 1e-14);
  check_value(j, "d-min-zero", 0.0, 1e-15);
  check_value(j, "e-pimn-half", kSqrtPi / 2.0, 1e-14);
  check_value(j, "f-script", kSqrtPi / 2.0, 1e-14);
  check_value(j, "k-rational-pi", kPi, 1e-14);
  check_value(j, "m-ortho", 2.0 * kSqrtPi, 1e-14);
  check_value(j, "q-poly-hmn", 3.0, 1e-15);
  check_value(j, "z-poly-h2", 11.0, 1e-15);

  const json& in = result_by_id(j, "a-in-sqrtpi");
  CHECK(in.at("method") == "ClosedForm");
  CHECK(!in.contains("moment"));
  CHECK(!in.contains("quad"));
  CHECK(in.at("spec").at("kind") == "In");

  const json& sum = j.at("summary");
  CHECK(sum.at("entries") == 10);
  CHECK(sum.at("errors") == 0);
  CHECK(sum.at("comparisons") == 0);
}

TEST_CASE("integral oracle run routes around the closed forms") {
  const RunResult r =
      run_cli("integral --spec " + data("values.json") + " --method oracle");
  CHECK(r.status == 0);
  const json j = parse_out(r);
  CHECK(result_by_id(j, "a-in-sqrtpi").at("method") == "MomentOracle");
  CHECK(result_by_id(j, "k-rational-pi").at("method") == "Quadrature");
  CHECK(result_by_id(j, "z-poly-h2").at("method") == "DirectSum");
  // the gamma-weighted family has no oracle route at all
  const json& hnu = result_by_id(j, "c-poly-hnu");
  CHECK(hnu.at("value").is_null());
  CHECK(hnu.at("notes").get<std::string>().find("no independent oracle") !=
        std::string::npos);
  check_value(j, "a-in-sqrtpi", kSqrtPi, 1e-12);
  check_value(j, "k-rational-pi", kPi, 1e-9);
}

TEST_CASE("integral both run cross-checks every route") {
  const RunResult r =
      run_cli("integral --spec " + data("values.json") + " --method both");
  CHECK(r.status == 0);
  const json j = parse_out(r);
  const json& in = result_by_id(j, "a-in-sqrtpi");
  CHECK(in.at("pass") == true);
  CHECK(in.at("moment").at("converged") == true);
  CHECK(in.at("quad").at("converged") == true);
  CHECK(in.at("discrepancy_moment").get<double>() <= 1e-9);
  CHECK(in.at("discrepancy_quad").get<double>() <= 1e-7);
  CHECK(result_by_id(j, "d-min-zero").at("pass") == true);
  CHECK(result_by_id(j, "k-rational-pi").at("pass") == true);
  CHECK(result_by_id(j, "z-poly-h2").at("pass") == true);
  const json& sum = j.at("summary");
  CHECK(sum.at("comparisons").get<long>() > 0);
  CHECK(sum.at("comparisons_failed") == 0);
}

TEST_CASE("entry evaluation errors mark the entry and exit 3") {
  const RunResult r =
      run_cli("integral --spec " + data("errors.json") + " --method closed");
  CHECK(r.status == 3);
  const json j = parse_out(r);
  CHECK(j.at("summary").at("entries") == 6);
  CHECK(j.at("summary").at("valid") == 1);
  CHECK(j.at("summary").at("errors") == 5);
  CHECK(result_by_id(j, "ok-anchor").at("valid") == true);

  auto code = [&](const std::string& id) {
    const json& e = result_by_id(j, id);
    REQUIRE(e.at("valid") == false);
    return e.at("error").at("code").get<std::string>();
  };
  CHECK(code("err-decay") == "NonPositiveDecay");
  CHECK(code("err-divergent") == "Divergent");
  CHECK(code("err-pole") == "GammaPole");
  CHECK(code("err-index") == "IndexTooLarge");
  CHECK(code("err-conditioning") == "IllConditioned");
}

TEST_CASE("unreadable or invalid spec files exit 2") {
  CHECK(run_cli("integral --spec " + data("no_such_file.json")).status == 2);
  CHECK(run_cli("integral --spec " + data("malformed.json")).status == 2);
  CHECK(run_cli("integral --spec " + data("bad_schema.json")).status == 2);
  CHECK(run_cli("integral --spec " + data("dup_ids.json")).status == 2);
  CHECK(run_cli("integral --spec " + data("unknown_field.json")).status == 2);
  const RunResult r =
      run_cli_stderr("integral --spec " + data("unknown_field.json"));
  CHECK(r.out.find("unknown field") != std::string::npos);
}

TEST_CASE("a comparison failure exits 4") {
  // heavy rational tail: the truncated quadrature misses real mass, so the
  // closed form and the oracle legitimately disagree beyond tolerance
  const RunResult r =
      run_cli("integral --spec " + data("slow_tail.json") + " --method both");
  CHECK(r.status == 4);
  const json j = parse_out(r);
  const json& e = result_by_id(j, "tail");
  CHECK(e.at("valid") == true);
  CHECK(e.at("pass") == false);
  CHECK(e.at("discrepancy_quad").get<double>() > 1e-7);
  CHECK(j.at("summary").at("comparisons_failed") == 1);
}

TEST_CASE("HERMIQUAD_NMAX lowers and raises the index cap") {
  const std::string probe =
      "integral --spec " + data("nmax_probe.json") + " --method closed";
  CHECK(run_cli(probe).status == 0);  // n = 12 under the default cap
  RunResult r = run_cli(probe, "HERMIQUAD_NMAX=10");
  CHECK(r.status == 3);
  CHECK(parse_out(r).at("results")[0].at("error").at("code") ==
        "IndexTooLarge");
  CHECK(run_cli(probe, "HERMIQUAD_NMAX=20").status == 0);

  CHECK(run_cli("poly h2 --n 6 --x 1 --y 1", "HERMIQUAD_NMAX=5").status == 2);
  CHECK(run_cli("poly h2 --n 6 --x 1 --y 1", "HERMIQUAD_NMAX=6").status == 0);

  CHECK(run_cli(probe, "HERMIQUAD_NMAX=0").status == 2);
  CHECK(run_cli(probe, "HERMIQUAD_NMAX=100").status == 2);
  CHECK(run_cli(probe, "HERMIQUAD_NMAX=abc").status == 2);
}

TEST_CASE("verify is deterministic under --deterministic") {
  const std::string args = "verify --seed 7 --cases 12 --deterministic";
  const RunResult a = run_cli(args);
  const RunResult b = run_cli(args);
  CHECK(a.status == 0);
  CHECK(b.status == 0);
  CHECK(a.out == b.out);

  const json j = parse_out(a);
  CHECK(!j.contains("timestamp"));
  CHECK(j.at("options").at("seed") == 7);
  CHECK(j.at("summary").at("cases") == 12);
  CHECK(j.at("summary").at("case_failures") == 0);
  CHECK(j.at("summary").at("all_pass") == true);
  CHECK(!j.at("summary").contains("wall_ms"));
  CHECK(j.at("structural").size() >= 8);
  for (const json& c : j.at("structural")) CHECK(c.at("pass") == true);
  CHECK(j.at("failures").empty());

  const json live = parse_out(run_cli("verify --seed 7 --cases 6"));
  CHECK(live.contains("timestamp"));
  CHECK(live.at("summary").contains("wall_ms"));
}

TEST_CASE("verify rejects a non-positive case count") {
  CHECK(run_cli("verify --seed 1 --cases 0").status == 2);
  const RunResult r = run_cli_stderr("verify --seed 1 --cases 0");
  CHECK(r.out.find("InvalidArgument") != std::string::npos);
}

TEST_CASE("spec parsing rejects structural mistakes") {
  using hermiquad::parse_spec_json;
  using hermiquad::SpecParseError;

  auto rejects = [](const std::string& text, const std::string& needle) {
    try {
      parse_spec_json(text);
      FAIL("expected SpecParseError for " << text);
    } catch (const SpecParseError& e) {
      CAPTURE(e.what());
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };

  rejects("[]", "top level");
  rejects("{\"entries\": []}", "schema_version");
  rejects("{\"schema_version\": \"1\", \"entries\": []}", "schema_version");
  rejects("{\"schema_version\": 1}", "entries");
  rejects("{\"schema_version\": 1, \"entries\": [], \"extra\": 0}",
          "unknown top-level field");
  rejects("{\"schema_version\": 1, \"entries\": [{}]}", "id");
  rejects("{\"schema_version\": 1, \"entries\": [{\"id\": \"\"}]}", "id");
  rejects("{\"schema_version\": 1, \"entries\": [{\"id\": \"a\"}]}", "kind");
  rejects(
      "{\"schema_version\": 1, \"entries\": "
      "[{\"id\": \"a\", \"kind\": \"nope\"}]}",
      "unknown kind");
  rejects(
      "{\"schema_version\": 1, \"entries\": "
      "[{\"id\": \"a\", \"kind\": \"In\", \"n\": -1}]}",
      "non-negative");
  rejects(
      "{\"schema_version\": 1, \"entries\": "
      "[{\"id\": \"a\", \"kind\": \"In\", \"n\": 2000000}]}",
      "implausibly large");
  rejects(
      "{\"schema_version\": 1, \"entries\": "
      "[{\"id\": \"a\", \"kind\": \"In\", \"a\": \"x\"}]}",
      "expected a number");
  rejects(
      "{\"schema_version\": 1, \"entries\": "
      "[{\"id\": \"a\", \"kind\": \"poly\"}]}",
      "family");
  rejects(
      "{\"schema_version\": 1, \"entries\": "
      "[{\"id\": \"a\", \"kind\": \"poly\", \"family\": \"h9\"}]}",
      "unknown poly family");
}

TEST_CASE("serialized entries parse back to the same spec") {
  const std::string text = R"({
    "schema_version": 1,
    "entries": [
      {"id": "g", "kind": "pImn", "p": 2, "m": 3, "n": 1, "a": 1.25,
       "b": -0.5, "c": 0.75, "d": 2.0, "f": 1.5, "alpha": -0.25,
       "y": 0.125, "z": -1.0},
      {"id": "r", "kind": "rational", "n": 2, "nu": 2.5, "a": 0.5,
       "b": 1.5, "c": 2.0},
      {"id": "p", "kind": "poly", "family": "hmn", "m": 2, "n": 2,
       "x": 0.5, "y": 1.0, "w": -0.5, "z": 2.0, "tau": 0.25}
    ]
  })";
  const hermiquad::SpecFile file = hermiquad::parse_spec_json(text);
  REQUIRE(file.entries.size() == 3);

  hermiquad::detail::JsonWriter w;
  w.begin_object();
  w.kv("schema_version", 1);
  w.key("entries");
  w.begin_array();
  for (const hermiquad::SpecEntry& e : file.entries) {
    w.begin_object();
    w.kv("id", e.id);
    hermiquad::write_entry_payload(w, e);
    w.end_object();
  }
  w.end_array();
  w.end_object();

  const hermiquad::SpecFile again = hermiquad::parse_spec_json(w.take());
  REQUIRE(again.entries.size() == 3);
  const auto& g0 = std::get<hermiquad::GaussIntegralSpec>(file.entries[0].payload);
  const auto& g1 = std::get<hermiquad::GaussIntegralSpec>(again.entries[0].payload);
  CHECK(g0.kind == g1.kind);
  CHECK(g0.p == g1.p);
  CHECK(g0.m == g1.m);
  CHECK(g0.n == g1.n);
  CHECK(g0.a == g1.a);
  CHECK(g0.b == g1.b);
  CHECK(g0.c == g1.c);
  CHECK(g0.d == g1.d);
  CHECK(g0.f == g1.f);
  CHECK(g0.alpha == g1.alpha);
  CHECK(g0.y == g1.y);
  CHECK(g0.z == g1.z);
  const auto& r0 = std::get<hermiquad::RationalIntegralSpec>(file.entries[1].payload);
  const auto& r1 = std::get<hermiquad::RationalIntegralSpec>(again.entries[1].payload);
  CHECK(r0.n == r1.n);
  CHECK(r0.nu == r1.nu);
  CHECK(r0.a == r1.a);
  CHECK(r0.b == r1.b);
  CHECK(r0.c == r1.c);
  const auto& p0 = std::get<hermiquad::PolyQuery>(file.entries[2].payload);
  const auto& p1 = std::get<hermiquad::PolyQuery>(again.entries[2].payload);
  CHECK(p0.family == p1.family);
  CHECK(p0.m == p1.m);
  CHECK(p0.n == p1.n);
  CHECK(p0.x == p1.x);
  CHECK(p0.y == p1.y);
  CHECK(p0.w == p1.w);
  CHECK(p0.z == p1.z);
  CHECK(p0.tau == p1.tau);
}
