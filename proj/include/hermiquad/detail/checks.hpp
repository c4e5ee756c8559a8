#pragma once

#include <cmath>
#include <string>

#include "hermiquad/config.hpp"
#include "hermiquad/errors.hpp"

namespace hermiquad::detail {

inline void check_index(int n, const char* label) {
  if (n < 0)
    throw EvalError(errc::invalid_argument,
                    std::string(label) + " must be non-negative, got " +
                        std::to_string(n));
  if (n > max_index())
    throw EvalError(errc::index_too_large,
                    std::string(label) + "=" + std::to_string(n) +
                        " exceeds the configured max index " +
                        std::to_string(max_index()));
}

inline void check_finite(double v, const char* label) {
  if (!std::isfinite(v))
    throw EvalError(errc::invalid_argument,
                    std::string(label) + " must be finite");
}

}  // namespace hermiquad::detail
