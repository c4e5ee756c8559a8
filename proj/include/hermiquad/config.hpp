#pragma once

namespace hermiquad {

// Highest polynomial index the kernels accept. Queries above the limit fail
// with errc::index_too_large instead of silently producing huge magnitudes.
inline constexpr int kDefaultMaxIndex = 40;

// Hard cap: keeps factorial-scale coefficients and the moment tables used by
// the oracles comfortably inside double range.
inline constexpr int kHardMaxIndex = 60;

int max_index() noexcept;

// Accepts 1..kHardMaxIndex, throws EvalError(errc::invalid_argument) outside.
void set_max_index(int n);

}  // namespace hermiquad
