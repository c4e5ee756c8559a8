#include "hermiquad/detail/batch_impl.hpp"

namespace hermiquad::batch::impl {

void eval_gauss_scalar(const hermiquad::detail::GaussNodeParams& p,
                       const double* x, double* out, std::size_t count) {
  for (std::size_t i = 0; i < count; ++i)
    out[i] = hermiquad::detail::gauss_node(p, x[i]);
}

}  // namespace hermiquad::batch::impl
