#include "gframe/kernels.hpp"

namespace gframe::kernels {

namespace {

std::complex<double> dot_conj_scalar(const double* a_re, const double* a_im, const double* b_re,
                                     const double* b_im, std::size_t len) {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t k = 0; k < len; ++k) {
    re += a_re[k] * b_re[k] + a_im[k] * b_im[k];
    im += a_im[k] * b_re[k] - a_re[k] * b_im[k];
  }
  return {re, im};
}

void dot_conj4_scalar(const double* a_re, const double* a_im, const double* const* b_re,
                      const double* const* b_im, std::size_t len, std::complex<double>* out) {
  for (int t = 0; t < 4; ++t) out[t] = dot_conj_scalar(a_re, a_im, b_re[t], b_im[t], len);
}

}  // namespace

const KernelSet& scalar() {
  static const KernelSet set{"scalar", &dot_conj_scalar, &dot_conj4_scalar};
  return set;
}

}  // namespace gframe::kernels
