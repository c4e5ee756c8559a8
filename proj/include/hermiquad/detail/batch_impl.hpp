#pragma once

#include <cstddef>

#include "hermiquad/detail/node_kernel.hpp"

namespace hermiquad::batch::impl {

void eval_gauss_scalar(const hermiquad::detail::GaussNodeParams& p,
                       const double* x, double* out, std::size_t count);

#if defined(__x86_64__) || defined(__i386__)
void eval_gauss_avx2(const hermiquad::detail::GaussNodeParams& p,
                     const double* x, double* out, std::size_t count);
#endif

}  // namespace hermiquad::batch::impl
