#pragma once

#include <stdexcept>
#include <string>

namespace hermiquad {

// Error taxonomy shared by the polynomial kernels, the integral engine and
// the oracles. The CLI maps these onto exit codes (see README).
enum class errc {
  invalid_argument,
  index_too_large,
  overflow,
  gamma_pole,
  non_positive_decay,
  ill_conditioned,
  divergent,
  not_converged,
};

const char* errc_name(errc c) noexcept;

class EvalError : public std::runtime_error {
 public:
  EvalError(errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

}  // namespace hermiquad
