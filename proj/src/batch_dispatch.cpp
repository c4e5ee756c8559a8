#include "hermiquad/batch.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>
#include <string>

#include "hermiquad/detail/batch_impl.hpp"
#include "hermiquad/errors.hpp"

namespace hermiquad::batch {
namespace {

Backend detect() {
#if defined(__x86_64__) || defined(__i386__)
  if (__builtin_cpu_supports("avx2")) return Backend::Avx2;
#endif
  return Backend::Scalar;
}

Backend from_env_or_detect() {
  const char* env = std::getenv("HERMIQUAD_SIMD");
  if (env != nullptr) {
    if (std::strcmp(env, "scalar") == 0) return Backend::Scalar;
    if (std::strcmp(env, "avx2") == 0 && backend_supported(Backend::Avx2))
      return Backend::Avx2;
    // "auto", unsupported or unrecognized: fall through to detection
  }
  return detect();
}

std::atomic<Backend>& state() {
  static std::atomic<Backend> b{from_env_or_detect()};
  return b;
}

}  // namespace

const char* backend_name(Backend b) noexcept {
  switch (b) {
    case Backend::Scalar: return "scalar";
    case Backend::Avx2: return "avx2";
  }
  return "unknown";
}

bool backend_supported(Backend b) noexcept {
  if (b == Backend::Scalar) return true;
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Backend active_backend() noexcept { return state().load(); }

void force_backend(Backend b) {
  if (!backend_supported(b))
    throw EvalError(errc::invalid_argument,
                    std::string("backend not supported on this machine: ") +
                        backend_name(b));
  state().store(b);
}

void reset_backend() noexcept { state().store(from_env_or_detect()); }

void eval_gauss_nodes(Backend b, const detail::GaussNodeParams& p,
                      const double* x, double* out, std::size_t count) {
#if defined(__x86_64__) || defined(__i386__)
  if (b == Backend::Avx2) {
    impl::eval_gauss_avx2(p, x, out, count);
    return;
  }
#endif
  (void)b;
  impl::eval_gauss_scalar(p, x, out, count);
}

void eval_gauss_nodes(const detail::GaussNodeParams& p, const double* x,
                      double* out, std::size_t count) {
  eval_gauss_nodes(active_backend(), p, x, out, count);
}

void eval_rational_nodes(const detail::RationalNodeParams& p, const double* x,
                         double* out, std::size_t count) {
  for (std::size_t i = 0; i < count; ++i)
    out[i] = detail::rational_node(p, x[i]);
}

}  // namespace hermiquad::batch
