#include <immintrin.h>

#include "gframe/kernels.hpp"

// Built with -mavx2 -mfma; only reached after a runtime CPU check.
namespace gframe::kernels::detail {

namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d pair = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
}

std::complex<double> dot_conj_avx2(const double* a_re, const double* a_im, const double* b_re,
                                   const double* b_im, std::size_t len) {
  __m256d acc_re = _mm256_setzero_pd();
  __m256d acc_im = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 4 <= len; k += 4) {
    const __m256d ar = _mm256_loadu_pd(a_re + k);
    const __m256d ai = _mm256_loadu_pd(a_im + k);
    const __m256d br = _mm256_loadu_pd(b_re + k);
    const __m256d bi = _mm256_loadu_pd(b_im + k);
    acc_re = _mm256_fmadd_pd(ar, br, acc_re);
    acc_re = _mm256_fmadd_pd(ai, bi, acc_re);
    acc_im = _mm256_fmadd_pd(ai, br, acc_im);
    acc_im = _mm256_fnmadd_pd(ar, bi, acc_im);
  }
  double re = hsum(acc_re);
  double im = hsum(acc_im);
  for (; k < len; ++k) {
    re += a_re[k] * b_re[k] + a_im[k] * b_im[k];
    im += a_im[k] * b_re[k] - a_re[k] * b_im[k];
  }
  return {re, im};
}

void dot_conj4_avx2(const double* a_re, const double* a_im, const double* const* b_re,
                    const double* const* b_im, std::size_t len, std::complex<double>* out) {
  __m256d acc_re[4];
  __m256d acc_im[4];
  for (int t = 0; t < 4; ++t) {
    acc_re[t] = _mm256_setzero_pd();
    acc_im[t] = _mm256_setzero_pd();
  }
  std::size_t k = 0;
  for (; k + 4 <= len; k += 4) {
    const __m256d ar = _mm256_loadu_pd(a_re + k);
    const __m256d ai = _mm256_loadu_pd(a_im + k);
    for (int t = 0; t < 4; ++t) {
      const __m256d br = _mm256_loadu_pd(b_re[t] + k);
      const __m256d bi = _mm256_loadu_pd(b_im[t] + k);
      acc_re[t] = _mm256_fmadd_pd(ar, br, acc_re[t]);
      acc_re[t] = _mm256_fmadd_pd(ai, bi, acc_re[t]);
      acc_im[t] = _mm256_fmadd_pd(ai, br, acc_im[t]);
      acc_im[t] = _mm256_fnmadd_pd(ar, bi, acc_im[t]);
    }
  }
  for (int t = 0; t < 4; ++t) {
    double re = hsum(acc_re[t]);
    double im = hsum(acc_im[t]);
    for (std::size_t j = k; j < len; ++j) {
      re += a_re[j] * b_re[t][j] + a_im[j] * b_im[t][j];
      im += a_im[j] * b_re[t][j] - a_re[j] * b_im[t][j];
    }
    out[t] = {re, im};
  }
}

}  // namespace

const KernelSet& avx2_set() {
  static const KernelSet set{"avx2", &dot_conj_avx2, &dot_conj4_avx2};
  return set;
}

}  // namespace gframe::kernels::detail
