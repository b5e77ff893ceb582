#include "doctest.h"

#include <complex>
#include <cstdlib>
#include <cstring>
#include <tuple>
#include <vector>

#include "gframe/coherence_lab.hpp"
#include "gframe/frame_builder.hpp"
#include "gframe/kernels.hpp"
#include "gframe/rng.hpp"

using namespace gframe;

namespace {

struct Vecs {
  std::vector<double> a_re, a_im;
  std::vector<std::vector<double>> b_re, b_im;
};

Vecs random_vecs(std::size_t len, std::uint64_t seed, bool integers) {
  SeededRng rng(seed);
  auto draw = [&] {
    return integers ? static_cast<double>(rng.uniform_below(17)) - 8.0 : rng.standard_normal();
  };
  Vecs v;
  for (std::size_t k = 0; k < len; ++k) {
    v.a_re.push_back(draw());
    v.a_im.push_back(draw());
  }
  v.b_re.resize(4);
  v.b_im.resize(4);
  for (int t = 0; t < 4; ++t) {
    for (std::size_t k = 0; k < len; ++k) {
      v.b_re[t].push_back(draw());
      v.b_im[t].push_back(draw());
    }
  }
  return v;
}

std::complex<double> naive(const Vecs& v, int t) {
  std::complex<double> s{0.0, 0.0};
  for (std::size_t k = 0; k < v.a_re.size(); ++k) {
    s += std::complex<double>(v.a_re[k], v.a_im[k]) * std::conj(std::complex<double>(v.b_re[t][k], v.b_im[t][k]));
  }
  return s;
}

void check_set(const kernels::KernelSet& ks, bool integers) {
  for (std::size_t len = 0; len <= 70; ++len) {
    const auto v = random_vecs(len, 1000 + len, integers);
    const double* br[4];
    const double* bi[4];
    for (int t = 0; t < 4; ++t) {
      br[t] = v.b_re[t].data();
      bi[t] = v.b_im[t].data();
    }
    std::complex<double> out[4];
    ks.dot_conj4(v.a_re.data(), v.a_im.data(), br, bi, len, out);
    for (int t = 0; t < 4; ++t) {
      const auto ref = naive(v, t);
      const auto single = ks.dot_conj(v.a_re.data(), v.a_im.data(), br[t], bi[t], len);
      const double tol = integers ? 0.0 : 1e-12 * (1.0 + static_cast<double>(len));
      CAPTURE(len);
      CHECK(std::abs(single - ref) <= tol);
      CHECK(std::abs(out[t] - ref) <= tol);
    }
  }
}

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("scalar kernel matches the naive sum") {
  check_set(kernels::scalar(), true);
  check_set(kernels::scalar(), false);
}

TEST_CASE("AVX2 kernel matches the naive sum") {
  const auto* avx = kernels::avx2();
  if (!avx) {
    MESSAGE("AVX2 kernels unavailable on this machine; skipped");
    return;
  }
  check_set(*avx, true);
  check_set(*avx, false);
}

TEST_CASE("scalar and AVX2 coherence agree on frames") {
  const auto* avx = kernels::avx2();
  if (!avx) return;
  for (auto [p, r, m] : {std::tuple{2U, 8U, 51U}, {3U, 5U, 121U}, {7U, 3U, 19U}}) {
    const auto dense = materialize(build_field_frame(p, r, m));
    double worst = 0.0;
    for (std::uint32_t j = 0; j + 4 < dense.cols(); j += 37) {
      const double* br[4];
      const double* bi[4];
      for (int t = 0; t < 4; ++t) {
        br[t] = dense.col_re(j + 1 + t);
        bi[t] = dense.col_im(j + 1 + t);
      }
      std::complex<double> s[4];
      std::complex<double> a[4];
      kernels::scalar().dot_conj4(dense.col_re(j), dense.col_im(j), br, bi, dense.rows(), s);
      avx->dot_conj4(dense.col_re(j), dense.col_im(j), br, bi, dense.rows(), a);
      for (int t = 0; t < 4; ++t) worst = std::max(worst, std::abs(s[t] - a[t]));
    }
    CHECK(worst <= 1e-14);
  }
}

TEST_CASE("active kernel honours the override") {
  const char* env = std::getenv("GFRAME_KERNELS");
  const auto& act = kernels::active();
  if (env && std::strcmp(env, "scalar") == 0) {
    CHECK(std::strcmp(act.name, "scalar") == 0);
  } else if (kernels::avx2()) {
    CHECK(std::strcmp(act.name, "avx2") == 0);
  }
}

}  // TEST_SUITE
