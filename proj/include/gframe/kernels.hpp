#pragma once

#include <complex>
#include <cstddef>

// Inner-product kernels behind Gram and frame-operator computations.
// Every variant must agree with the scalar reference up to summation-order
// rounding; selection happens once, at first use.
namespace gframe::kernels {

struct KernelSet {
  const char* name;
  // sum_k a_k * conj(b_k)
  std::complex<double> (*dot_conj)(const double* a_re, const double* a_im, const double* b_re,
                                   const double* b_im, std::size_t len);
  // out[t] = sum_k a_k * conj(b_t[k]) for t = 0..3
  void (*dot_conj4)(const double* a_re, const double* a_im, const double* const* b_re,
                    const double* const* b_im, std::size_t len, std::complex<double>* out);
};

const KernelSet& scalar();
// nullptr when not compiled in or the CPU lacks AVX2/FMA.
const KernelSet* avx2();

// AVX2 when available unless GFRAME_KERNELS=scalar is set.
const KernelSet& active();

}  // namespace gframe::kernels
