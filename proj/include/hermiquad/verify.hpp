#pragma once

#include <cstdint>
#include <string>

namespace hermiquad {

// Seeded self-verification: samples integral specs of every kind inside a
// fixed parameter box, runs the closed forms against both oracles, then adds
// a fixed battery of structural checks (symmetry, tau = 0 factorization,
// kind-consistency identities, the orthogonality grid).

struct VerifyOptions {
  std::uint64_t seed = 1;
  long cases = 100;
  // Tolerance against the moment oracle; the quadrature comparison uses
  // 100 x this (discretized integration is the looser reference).
  double rel_tol = 1e-9;
  // Suppresses timestamp and wall time so reports are byte-identical.
  bool deterministic = false;
};

struct VerifyOutcome {
  std::string report_json;
  bool all_pass = false;
  long cases_run = 0;
  long case_failures = 0;
  long structural_failures = 0;
  long errored = 0;
  double max_discrepancy_moment = 0.0;
  double max_discrepancy_quad = 0.0;
  double wall_seconds = 0.0;
};

// Throws EvalError(errc::invalid_argument) when cases < 1 or the tolerance
// is not positive.
VerifyOutcome run_verify(const VerifyOptions& opt);

}  // namespace hermiquad
