#pragma once

#include <cstddef>

#include "hermiquad/detail/node_kernel.hpp"

// Batched integrand evaluation over arrays of quadrature nodes. A scalar
// reference backend always exists; on x86 with AVX2 a 4-lane vector backend
// is selected at startup. The two are equivalence-tested: polynomial factors
// are evaluated with identical operation order (bit-equal lanes), only the
// vector exp differs from libm by a few ulp.

namespace hermiquad::batch {

enum class Backend { Scalar, Avx2 };

const char* backend_name(Backend b) noexcept;
bool backend_supported(Backend b) noexcept;

// Startup pick: CPU detection, overridden by HERMIQUAD_SIMD=scalar|avx2|auto.
Backend active_backend() noexcept;

// Programmatic override; throws EvalError(invalid_argument) if unsupported.
void force_backend(Backend b);

// Back to detection + environment.
void reset_backend() noexcept;

void eval_gauss_nodes(const detail::GaussNodeParams& p, const double* x,
                      double* out, std::size_t count);
void eval_gauss_nodes(Backend b, const detail::GaussNodeParams& p,
                      const double* x, double* out, std::size_t count);

// The rational integrand needs log as well as exp; it always runs on the
// scalar kernel.
void eval_rational_nodes(const detail::RationalNodeParams& p, const double* x,
                         double* out, std::size_t count);

}  // namespace hermiquad::batch
