#include "hermiquad/detail/batch_impl.hpp"

#if defined(__x86_64__) || defined(__i386__)

#include <immintrin.h>

// Compiled with -mavx2 only (no FMA): every mul/add here maps to the same
// IEEE operation the scalar kernel performs, so polynomial factors come out
// bit-identical per lane. The one deliberate difference is exp4 below, a
// rational-approximation exponential accurate to ~1 ulp.

namespace hermiquad::batch::impl {
namespace {

inline __m256d pow2_4(__m128i n32) {
  __m256i n64 = _mm256_cvtepi32_epi64(n32);
  n64 = _mm256_add_epi64(n64, _mm256_set1_epi64x(1023));
  n64 = _mm256_slli_epi64(n64, 52);
  return _mm256_castsi256_pd(n64);
}

// exp on [-708.5, 709.7]: argument reduction x = g + n ln2 with |g| <= ln2/2,
// then e^g = 1 + 2 g P(g^2) / (Q(g^2) - g P(g^2)) and scaling by 2^n split
// into two factors so n = +-1024 stays representable. Inputs above the upper
// clamp saturate near DBL_MAX instead of returning inf; the quadrature
// driver treats such sums as overflow anyway.
inline __m256d exp4(__m256d x) {
  x = _mm256_min_pd(x, _mm256_set1_pd(709.7));
  x = _mm256_max_pd(x, _mm256_set1_pd(-708.5));

  const __m256d log2e = _mm256_set1_pd(1.4426950408889634073599);
  const __m256d px =
      _mm256_floor_pd(_mm256_add_pd(_mm256_mul_pd(log2e, x),
                                    _mm256_set1_pd(0.5)));
  const __m128i n32 = _mm256_cvttpd_epi32(px);

  x = _mm256_sub_pd(x, _mm256_mul_pd(px, _mm256_set1_pd(6.93145751953125e-1)));
  x = _mm256_sub_pd(
      x, _mm256_mul_pd(px, _mm256_set1_pd(1.42860682030941723212e-6)));

  const __m256d xx = _mm256_mul_pd(x, x);
  __m256d p = _mm256_set1_pd(1.26177193074810590878e-4);
  p = _mm256_add_pd(_mm256_mul_pd(p, xx),
                    _mm256_set1_pd(3.02994407707441961300e-2));
  p = _mm256_add_pd(_mm256_mul_pd(p, xx),
                    _mm256_set1_pd(9.99999999999999999910e-1));
  p = _mm256_mul_pd(p, x);
  __m256d q = _mm256_set1_pd(3.00198505138664455042e-6);
  q = _mm256_add_pd(_mm256_mul_pd(q, xx),
                    _mm256_set1_pd(2.52448340349684104192e-3));
  q = _mm256_add_pd(_mm256_mul_pd(q, xx),
                    _mm256_set1_pd(2.27265548208155028766e-1));
  q = _mm256_add_pd(_mm256_mul_pd(q, xx), _mm256_set1_pd(2.0));
  __m256d r = _mm256_div_pd(p, _mm256_sub_pd(q, p));
  r = _mm256_add_pd(_mm256_set1_pd(1.0), _mm256_add_pd(r, r));

  const __m128i n1 = _mm_srai_epi32(n32, 1);
  const __m128i n2 = _mm_sub_epi32(n32, n1);
  return _mm256_mul_pd(_mm256_mul_pd(r, pow2_4(n1)), pow2_4(n2));
}

// Mirrors detail::hermite_node_value: t = u * h + ((2k) y) * hprev.
inline __m256d hermite4(int n, __m256d u, double y) {
  if (n == 0) return _mm256_set1_pd(1.0);
  __m256d hprev = _mm256_set1_pd(1.0);
  __m256d h = u;
  for (int k = 1; k < n; ++k) {
    const double ck = (2.0 * k) * y;
    const __m256d t =
        _mm256_add_pd(_mm256_mul_pd(u, h),
                      _mm256_mul_pd(_mm256_set1_pd(ck), hprev));
    hprev = h;
    h = t;
  }
  return h;
}

}  // namespace

void eval_gauss_avx2(const hermiquad::detail::GaussNodeParams& p,
                     const double* x, double* out, std::size_t count) {
  using hermiquad::detail::kExpFloor;
  const __m256d vf = _mm256_set1_pd(-p.f);
  const __m256d valpha = _mm256_set1_pd(p.alpha);
  const __m256d floor = _mm256_set1_pd(kExpFloor);

  std::size_t i = 0;
  for (; i + 4 <= count; i += 4) {
    const __m256d vx = _mm256_loadu_pd(x + i);
    const __m256d e = _mm256_add_pd(
        _mm256_mul_pd(_mm256_mul_pd(vf, vx), vx), _mm256_mul_pd(valpha, vx));
    const __m256d under = _mm256_cmp_pd(e, floor, _CMP_LT_OQ);
    __m256d v = exp4(e);
    for (int j = 0; j < p.xpow; ++j) v = _mm256_mul_pd(v, vx);
    if (p.first) {
      const __m256d u = _mm256_add_pd(_mm256_mul_pd(_mm256_set1_pd(p.a), vx),
                                      _mm256_set1_pd(p.b));
      v = _mm256_mul_pd(v, hermite4(p.m, u, p.y));
    }
    if (p.second) {
      const __m256d u = _mm256_add_pd(_mm256_mul_pd(_mm256_set1_pd(p.c), vx),
                                      _mm256_set1_pd(p.d));
      v = _mm256_mul_pd(v, hermite4(p.n, u, p.z));
    }
    v = _mm256_andnot_pd(under, v);
    _mm256_storeu_pd(out + i, v);
  }
  for (; i < count; ++i) out[i] = hermiquad::detail::gauss_node(p, x[i]);
}

}  // namespace hermiquad::batch::impl

#endif
