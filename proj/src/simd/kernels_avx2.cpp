// AVX2 + FMA variants. Compiled with -mavx2 -mfma; only reached through
// the dispatcher after a CPU feature check.

#include <immintrin.h>

#include <cmath>

#include "qdemon/simd/kernels.hpp"
#include "qdemon/tolerances.hpp"

namespace qdemon::simd::avx2 {

namespace {

constexpr double kInvLn2 = 1.4426950408889634074;

// Natural log for positive normal inputs. Cephes-style reduction to
// log(1+x) = x - x^2/2 + x^3 P(x)/Q(x) with x in [sqrt(1/2) - 1, sqrt(2) - 1).
inline __m256d log_pd(__m256d x) noexcept {
  const __m256i bits = _mm256_castpd_si256(x);
  const __m256i mant_mask = _mm256_set1_epi64x(0x000FFFFFFFFFFFFFLL);
  const __m256i half_exp = _mm256_set1_epi64x(0x3FE0000000000000LL);
  __m256d m = _mm256_castsi256_pd(_mm256_or_si256(_mm256_and_si256(bits, mant_mask), half_exp));

  const __m256i biased = _mm256_srli_epi64(bits, 52);
  const __m256i packed = _mm256_permutevar8x32_epi32(biased, _mm256_setr_epi32(0, 2, 4, 6, 1, 3, 5, 7));
  __m256d e = _mm256_sub_pd(_mm256_cvtepi32_pd(_mm256_castsi256_si128(packed)), _mm256_set1_pd(1022.0));

  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d below = _mm256_cmp_pd(m, _mm256_set1_pd(0.70710678118654752440), _CMP_LT_OQ);
  e = _mm256_sub_pd(e, _mm256_and_pd(below, one));
  const __m256d t = _mm256_add_pd(_mm256_sub_pd(m, one), _mm256_and_pd(below, m));

  const __m256d z = _mm256_mul_pd(t, t);
  __m256d p = _mm256_set1_pd(1.01875663804580931796E-4);
  p = _mm256_fmadd_pd(p, t, _mm256_set1_pd(4.97494994976747001425E-1));
  p = _mm256_fmadd_pd(p, t, _mm256_set1_pd(4.70579119878881725854E0));
  p = _mm256_fmadd_pd(p, t, _mm256_set1_pd(1.44989225341610930846E1));
  p = _mm256_fmadd_pd(p, t, _mm256_set1_pd(1.79368678507819816313E1));
  p = _mm256_fmadd_pd(p, t, _mm256_set1_pd(7.70838733755885391666E0));
  __m256d q = _mm256_add_pd(t, _mm256_set1_pd(1.12873587189167450590E1));
  q = _mm256_fmadd_pd(q, t, _mm256_set1_pd(4.52279145837532221105E1));
  q = _mm256_fmadd_pd(q, t, _mm256_set1_pd(8.29875266912776603211E1));
  q = _mm256_fmadd_pd(q, t, _mm256_set1_pd(7.11544750618563894466E1));
  q = _mm256_fmadd_pd(q, t, _mm256_set1_pd(2.31251620126765340583E1));

  __m256d y = _mm256_mul_pd(t, _mm256_div_pd(_mm256_mul_pd(z, p), q));
  y = _mm256_fnmadd_pd(e, _mm256_set1_pd(2.121944400546905827679e-4), y);
  y = _mm256_fnmadd_pd(z, _mm256_set1_pd(0.5), y);
  __m256d r = _mm256_add_pd(t, y);
  return _mm256_fmadd_pd(e, _mm256_set1_pd(0.693359375), r);
}

// -w ln w, zero for lanes below the entropy clip.
inline __m256d neg_xlogx(__m256d w) noexcept {
  const __m256d keep = _mm256_cmp_pd(w, _mm256_set1_pd(kEntropyClip), _CMP_GE_OQ);
  const __m256d safe = _mm256_blendv_pd(_mm256_set1_pd(1.0), w, keep);
  const __m256d v = _mm256_mul_pd(safe, log_pd(safe));
  return _mm256_and_pd(keep, _mm256_sub_pd(_mm256_setzero_pd(), v));
}

inline __m256i tail_mask(std::size_t remaining) noexcept {
  const __m256i idx = _mm256_setr_epi64x(0, 1, 2, 3);
  return _mm256_cmpgt_epi64(_mm256_set1_epi64x(static_cast<long long>(remaining)), idx);
}

inline double hsum(__m256d v) noexcept {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

}  // namespace

double entropy_bits(std::span<const double> weights) noexcept {
  const std::size_t n = weights.size();
  __m256d acc = _mm256_setzero_pd();
  for (std::size_t k = 0; k < n; k += 4) {
    const __m256i mask = tail_mask(n - k);
    const __m256d w = _mm256_maskload_pd(weights.data() + k, mask);
    acc = _mm256_add_pd(acc, neg_xlogx(w));
  }
  return hsum(acc) * kInvLn2;
}

void projected_pair_entropy(std::span<const Hermitian2> blocks, const DirectionTable& dirs,
                            std::span<double> out) noexcept {
  const std::size_t n = dirs.size();
  const __m256d scale = _mm256_set1_pd(kInvLn2);
  for (std::size_t k = 0; k < n; k += 4) {
    const __m256i mask = tail_mask(n - k);
    const __m256d c2 = _mm256_maskload_pd(dirs.c2.data() + k, mask);
    const __m256d s2 = _mm256_maskload_pd(dirs.s2.data() + k, mask);
    const __m256d xr = _mm256_maskload_pd(dirs.cross_re.data() + k, mask);
    const __m256d xi = _mm256_maskload_pd(dirs.cross_im.data() + k, mask);
    __m256d acc = _mm256_setzero_pd();
    for (const auto& b : blocks) {
      __m256d p0 = _mm256_mul_pd(c2, _mm256_set1_pd(b.d0));
      p0 = _mm256_fmadd_pd(s2, _mm256_set1_pd(b.d1), p0);
      p0 = _mm256_fmadd_pd(xr, _mm256_set1_pd(b.re), p0);
      p0 = _mm256_fnmadd_pd(xi, _mm256_set1_pd(b.im), p0);
      const __m256d p1 = _mm256_sub_pd(_mm256_set1_pd(b.d0 + b.d1), p0);
      acc = _mm256_add_pd(acc, _mm256_add_pd(neg_xlogx(p0), neg_xlogx(p1)));
    }
    _mm256_maskstore_pd(out.data() + k, mask, _mm256_mul_pd(acc, scale));
  }
}

}  // namespace qdemon::simd::avx2
