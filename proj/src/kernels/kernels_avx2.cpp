#include <immintrin.h>

#include "aperispec/kernels.hpp"

namespace aperispec::kernels::avx2 {

void band_extrema(const double* rows, std::size_t n_rows, std::size_t n_bands, double* lo, double* hi,
                  std::uint32_t* arg_lo, std::uint32_t* arg_hi) {
  std::size_t j = 0;
  for (; j + 4 <= n_bands; j += 4) {
    __m256d vlo = _mm256_loadu_pd(rows + j);
    __m256d vhi = vlo;
    __m256d alo = _mm256_setzero_pd();
    __m256d ahi = _mm256_setzero_pd();
    for (std::size_t r = 1; r < n_rows; ++r) {
      const __m256d v = _mm256_loadu_pd(rows + r * n_bands + j);
      const __m256d idx = _mm256_set1_pd(static_cast<double>(r));
      const __m256d lt = _mm256_cmp_pd(v, vlo, _CMP_LT_OQ);
      const __m256d gt = _mm256_cmp_pd(v, vhi, _CMP_GT_OQ);
      vlo = _mm256_blendv_pd(vlo, v, lt);
      alo = _mm256_blendv_pd(alo, idx, lt);
      vhi = _mm256_blendv_pd(vhi, v, gt);
      ahi = _mm256_blendv_pd(ahi, idx, gt);
    }
    alignas(32) double a1[4], a2[4];
    _mm256_storeu_pd(lo + j, vlo);
    _mm256_storeu_pd(hi + j, vhi);
    _mm256_store_pd(a1, alo);
    _mm256_store_pd(a2, ahi);
    for (int k = 0; k < 4; ++k) {
      arg_lo[j + k] = static_cast<std::uint32_t>(a1[k]);
      arg_hi[j + k] = static_cast<std::uint32_t>(a2[k]);
    }
  }
  if (j < n_bands) {
    // Tail bands: same recurrence one lane at a time.
    for (std::size_t b = j; b < n_bands; ++b) {
      lo[b] = hi[b] = rows[b];
      arg_lo[b] = arg_hi[b] = 0;
      for (std::size_t r = 1; r < n_rows; ++r) {
        const double v = rows[r * n_bands + b];
        if (v < lo[b]) {
          lo[b] = v;
          arg_lo[b] = static_cast<std::uint32_t>(r);
        }
        if (v > hi[b]) {
          hi[b] = v;
          arg_hi[b] = static_cast<std::uint32_t>(r);
        }
      }
    }
  }
}

namespace {

inline __m256d vabs(__m256d x) { return _mm256_andnot_pd(_mm256_set1_pd(-0.0), x); }

inline __m256d vphi(__m256d t) {
  const __m256d v = _mm256_sub_pd(_mm256_set1_pd(4.0), _mm256_mul_pd(_mm256_set1_pd(6.0), vabs(t)));
  return _mm256_min_pd(_mm256_max_pd(v, _mm256_setzero_pd()), _mm256_set1_pd(1.0));
}

inline __m256d select(__m256d mask, double value) { return _mm256_and_pd(mask, _mm256_set1_pd(value)); }

inline __m256d vdphi_right(__m256d t) {
  const __m256d h = _mm256_set1_pd(0.5), tt = _mm256_set1_pd(2.0 / 3.0);
  const __m256d nh = _mm256_set1_pd(-0.5), ntt = _mm256_set1_pd(-2.0 / 3.0);
  const __m256d pos = _mm256_and_pd(_mm256_cmp_pd(t, h, _CMP_GE_OQ), _mm256_cmp_pd(t, tt, _CMP_LT_OQ));
  const __m256d neg = _mm256_and_pd(_mm256_cmp_pd(t, ntt, _CMP_GE_OQ), _mm256_cmp_pd(t, nh, _CMP_LT_OQ));
  return _mm256_or_pd(select(pos, -6.0), select(neg, 6.0));
}

inline __m256d vdphi_left(__m256d t) {
  const __m256d h = _mm256_set1_pd(0.5), tt = _mm256_set1_pd(2.0 / 3.0);
  const __m256d nh = _mm256_set1_pd(-0.5), ntt = _mm256_set1_pd(-2.0 / 3.0);
  const __m256d pos = _mm256_and_pd(_mm256_cmp_pd(t, h, _CMP_GT_OQ), _mm256_cmp_pd(t, tt, _CMP_LE_OQ));
  const __m256d neg = _mm256_and_pd(_mm256_cmp_pd(t, ntt, _CMP_GT_OQ), _mm256_cmp_pd(t, nh, _CMP_LE_OQ));
  return _mm256_or_pd(select(pos, -6.0), select(neg, 6.0));
}

}  // namespace

void bump_factor(const double* u, std::size_t n, double* g, double* dg_left, double* dg_right) {
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d x = _mm256_loadu_pd(u + i);
    const __m256d xm = _mm256_sub_pd(x, one), xp = _mm256_add_pd(x, one);
    const __m256d p = vphi(x);
    const __m256d s0 = _mm256_add_pd(_mm256_add_pd(vphi(xm), p), vphi(xp));
    // Far from the cell every phi vanishes; dividing by 1 then yields exact zeros.
    const __m256d s = _mm256_blendv_pd(s0, one, _mm256_cmp_pd(s0, _mm256_setzero_pd(), _CMP_EQ_OQ));
    const __m256d dl = vdphi_left(x), dr = vdphi_right(x);
    const __m256d sl = _mm256_add_pd(_mm256_add_pd(vdphi_left(xm), dl), vdphi_left(xp));
    const __m256d sr = _mm256_add_pd(_mm256_add_pd(vdphi_right(xm), dr), vdphi_right(xp));
    const __m256d s2 = _mm256_mul_pd(s, s);
    _mm256_storeu_pd(g + i, _mm256_div_pd(p, s));
    _mm256_storeu_pd(dg_left + i, _mm256_div_pd(_mm256_sub_pd(_mm256_mul_pd(dl, s), _mm256_mul_pd(p, sl)), s2));
    _mm256_storeu_pd(dg_right + i, _mm256_div_pd(_mm256_sub_pd(_mm256_mul_pd(dr, s), _mm256_mul_pd(p, sr)), s2));
  }
  if (i < n) scalar::bump_factor(u + i, n - i, g + i, dg_left + i, dg_right + i);
}

double max_grad_norm_sq_row(double g_i, double gp_i, const double* g, const double* gp, std::size_t n, const double* T) {
  const __m256d vg = _mm256_set1_pd(g_i), vgp = _mm256_set1_pd(gp_i);
  const __m256d t0 = _mm256_set1_pd(T[0]), t1 = _mm256_set1_pd(T[1]);
  const __m256d t2 = _mm256_set1_pd(T[2]), t3 = _mm256_set1_pd(T[3]);
  __m256d best = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d a = _mm256_mul_pd(vgp, _mm256_loadu_pd(g + j));
    const __m256d b = _mm256_mul_pd(vg, _mm256_loadu_pd(gp + j));
    const __m256d x = _mm256_add_pd(_mm256_mul_pd(t0, a), _mm256_mul_pd(t1, b));
    const __m256d y = _mm256_add_pd(_mm256_mul_pd(t2, a), _mm256_mul_pd(t3, b));
    best = _mm256_max_pd(best, _mm256_add_pd(_mm256_mul_pd(x, x), _mm256_mul_pd(y, y)));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, best);
  double m = lanes[0];
  for (int k = 1; k < 4; ++k)
    if (lanes[k] > m) m = lanes[k];
  if (j < n) {
    const double tail = scalar::max_grad_norm_sq_row(g_i, gp_i, g + j, gp + j, n - j, T);
    if (tail > m) m = tail;
  }
  return m;
}

}  // namespace aperispec::kernels::avx2
