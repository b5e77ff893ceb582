#include "doctest.h"

#include <cmath>
#include <algorithm>
#include <complex>
#include <string>
#include <tuple>
#include <vector>

#include "gframe/coherence_lab.hpp"
#include "gframe/error.hpp"
#include "gframe/frame_builder.hpp"
#include "gframe/number_theory.hpp"
#include "oracles.hpp"

using namespace gframe;

namespace {

struct Triple {
  std::uint32_t p;
  unsigned r;
  std::uint32_t m;
};

std::vector<Triple> sweep(std::uint64_t max_size) {
  std::vector<Triple> out;
  for (std::uint64_t q = 2; q <= max_size; ++q) {
    const auto pp = as_prime_power(q);
    if (!pp) continue;
    for (auto m : divisors(q - 1)) {
      out.push_back({static_cast<std::uint32_t>(pp->p), pp->r, static_cast<std::uint32_t>(m)});
    }
  }
  return out;
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::InvariantViolation;
}

ComplexFrame identity(std::uint32_t n) {
  ComplexFrame f(n, n);
  for (std::uint32_t i = 0; i < n; ++i) f.set(i, i, {1.0, 0.0});
  return f;
}

}  // namespace

TEST_SUITE("coherence_lab") {

TEST_CASE("Welch bound examples") {
  CHECK(welch_bound(1024, 341) == doctest::Approx(0.0442).epsilon(5e-4));
  CHECK(welch_bound(27, 13) == doctest::Approx(0.2035).epsilon(5e-4));
  CHECK(welch_bound(27, 13) == doctest::Approx(oracle::welch(27, 13)).epsilon(1e-14));
  CHECK(welch_bound(9, 9) == 0.0);
  CHECK(kind_of([] { welch_bound(3, 4); }) == ErrorKind::BadShape);
  CHECK(kind_of([] { welch_bound(3, 0); }) == ErrorKind::BadShape);
}

TEST_CASE("brute force examples") {
  const auto id = coherence_bruteforce(identity(6));
  CHECK(id.mu == 0.0);
  CHECK(id.census.values.size() == 1);
  CHECK(id.census.total() == 30);

  ComplexFrame twin(2, 2);
  twin.set(0, 0, {1.0, 0.0});
  twin.set(0, 1, {1.0, 0.0});
  CHECK(coherence_bruteforce(twin).mu == doctest::Approx(1.0));

  const auto paley = coherence_bruteforce(materialize(build_field_frame(3, 3, 13)));
  CHECK(paley.mu == doctest::Approx(welch_bound(27, 13)).epsilon(1e-12));

  ComplexFrame bad(2, 2);
  bad.set(0, 0, {2.0, 0.0});
  bad.set(1, 1, {1.0, 0.0});
  CHECK(kind_of([&] { coherence_bruteforce(bad); }) == ErrorKind::NotNormalized);
  BruteForceOptions small;
  small.max_cols = 4;
  CHECK(kind_of([&] { coherence_bruteforce(identity(5), small); }) == ErrorKind::ResourceCap);
}

TEST_CASE("brute force matches the entry-by-entry oracle") {
  const auto f = build_random_exponent_frame(3, 3, 10, 99);
  const auto dense = materialize(f);
  oracle::Dense d;
  d.rows = dense.rows();
  d.cols = dense.cols();
  for (std::uint32_t j = 0; j < dense.cols(); ++j) {
    for (std::uint32_t i = 0; i < dense.rows(); ++i) d.v.push_back(dense.at(i, j));
  }
  CHECK(std::abs(coherence_bruteforce(dense).mu - d.coherence()) < 1e-13);
}

TEST_CASE("coset sums examples") {
  for (auto [p, r] : {std::pair{2U, 5U}, {3U, 3U}, {7U, 2U}}) {
    auto field = build_field(p, r);
    const auto spec = subgroup_of_order(field, field->size() - 1);
    const auto sums = coset_sums(spec);
    REQUIRE(sums.c.size() == 1);
    CHECK(std::abs(sums.c[0] - std::complex<double>(-1.0 / spec.m(), 0.0)) < 1e-12);
  }
  CHECK(coherence_fast(subgroup_of_order(build_field(2, 10), 341)) == doctest::Approx(0.0616).epsilon(5e-4));
  const auto s27 = coset_sums(subgroup_of_order(build_field(3, 3), 13));
  REQUIRE(s27.c.size() == 2);
  CHECK(std::abs(s27.c[0]) == doctest::Approx(0.2035).epsilon(5e-4));
  CHECK(std::abs(s27.c[1]) == doctest::Approx(0.2035).epsilon(5e-4));
}

TEST_CASE("coset sums match the first Gram column") {
  for (const auto& t : sweep(128)) {
    const auto frame = build_field_frame(t.p, t.r, t.m);
    const auto sums = coset_sums(*frame.subgroup());
    const auto dense = materialize(frame);
    const auto& field = *frame.field();
    double worst = 0.0;
    for (std::uint32_t j = 1; j < frame.cols(); ++j) {
      std::complex<double> g{0.0, 0.0};
      for (std::uint32_t i = 0; i < dense.rows(); ++i) g += dense.at(i, j) * std::conj(dense.at(i, 0));
      const auto d = field.log_value(frame.column_value(j)) % sums.kappa;
      worst = std::max(worst, std::abs(g - sums.c[d]));
    }
    CHECK(worst < 1e-12);
  }
}

TEST_CASE("fast path equals brute force for p^r <= 256") {
  for (const auto& t : sweep(256)) {
    CAPTURE(t.p);
    CAPTURE(t.r);
    CAPTURE(t.m);
    const auto frame = build_field_frame(t.p, t.r, t.m);
    BruteForceOptions opts;
    opts.census = false;
    CHECK(std::abs(coherence_fast(*frame.subgroup()) - coherence_bruteforce(materialize(frame), opts).mu) <= 1e-9);
  }
}

TEST_CASE("census law: kappa cosets of multiplicity n*m, constant on Frobenius orbits") {
  for (const auto& t : sweep(256)) {
    const auto frame = build_field_frame(t.p, t.r, t.m);
    const auto sums = coset_sums(*frame.subgroup());
    const std::uint64_t n = frame.cols();
    const auto bf = coherence_bruteforce(materialize(frame));
    CAPTURE(t.p);
    CAPTURE(t.r);
    CAPTURE(t.m);
    CHECK(bf.census.total() == n * (n - 1));
    // Distinct Gram values are the distinct coset sums; Frobenius orbits bound their number.
    std::vector<std::complex<double>> distinct;
    for (const auto& v : sums.c) {
      if (std::none_of(distinct.begin(), distinct.end(), [&](auto u) { return std::abs(u - v) < 1e-9; })) {
        distinct.push_back(v);
      }
    }
    CHECK(bf.census.values.size() == distinct.size());
    CHECK(distinct.size() <= frobenius_orbit_count(t.p, sums.kappa));
    // Each brute-force class is a union of cosets, so its count is a multiple of n*m.
    for (const auto& v : bf.census.values) CHECK(v.count % (n * t.m) == 0);
    // Frobenius orbits carry equal sums.
    for (std::uint32_t d = 0; d < sums.kappa; ++d) {
      CHECK(std::abs(sums.c[d] - sums.c[(std::uint64_t{d} * t.p) % sums.kappa]) < 1e-9);
    }
    const auto fast = census_fast(sums, n);
    CHECK(fast.values.size() == bf.census.values.size());
    CHECK(fast.total() == n * (n - 1));
  }
}

TEST_CASE("census for prime fields has exactly kappa values") {
  for (auto [p, m] : {std::pair{7U, 3U}, {13U, 4U}, {31U, 5U}, {499U, 166U}}) {
    const auto frame = build_harmonic_frame(p, m);
    const auto bf = coherence_bruteforce(materialize(frame));
    const std::uint64_t kappa = (p - 1) / m;
    CHECK(bf.census.values.size() == kappa);
    for (const auto& v : bf.census.values) CHECK(v.count == std::uint64_t{p} * m);
  }
}

TEST_CASE("mean-square law for tight frames") {
  for (const auto& t : sweep(200)) {
    const auto frame = build_field_frame(t.p, t.r, t.m);
    const auto bf = coherence_bruteforce(materialize(frame));
    const double n = frame.cols();
    const double m = frame.rows();
    CHECK(std::abs(bf.gram_offdiag_mean_sq - (n - m) / (m * (n - 1.0))) <= 1e-9);
  }
}

TEST_CASE("c-sum identity and conjugation symmetries") {
  for (const auto& t : sweep(1024)) {
    const auto spec = subgroup_of_order(build_field(t.p, t.r), t.m);
    const auto sums = coset_sums(spec);
    std::complex<double> total{0.0, 0.0};
    for (const auto& c : sums.c) total += c;
    CHECK(std::abs(1.0 + static_cast<double>(t.m) * total) <= 1e-9);
    const auto par = parity_of_minus_one(spec);
    if (par.in_A) {
      for (const auto& c : sums.c) CHECK(std::abs(c.imag()) <= 1e-12);
    } else {
      const std::uint32_t half = sums.kappa / 2;
      for (std::uint32_t d = 0; d < sums.kappa; ++d) {
        CHECK(std::abs(sums.c[d] - std::conj(sums.c[(d + half) % sums.kappa])) <= 1e-12);
      }
    }
  }
}

TEST_CASE("w-vector examples and identity") {
  const auto one = w_vector_check(coset_sums(subgroup_of_order(build_field(5, 2), 24)));
  REQUIRE(one.w.size() == 1);
  CHECK(std::abs(one.w[0] + 1.0 / 24.0) < 1e-12);

  const auto s27 = coset_sums(subgroup_of_order(build_field(3, 3), 13));
  const auto w27 = w_vector_check(s27);
  CHECK(std::abs(w27.w[1]) == doctest::Approx(0.39970).epsilon(1e-4));
  // Explicit 2-point DFT of the coset sums.
  CHECK(std::abs(w27.w[1] - (s27.c[0] - s27.c[1])) < 1e-12);

  double worst = 0.0;
  for (const auto& t : sweep(512)) {
    worst = std::max(worst, w_vector_check(coset_sums(subgroup_of_order(build_field(t.p, t.r), t.m))).max_violation);
  }
  CHECK(worst <= 1e-9);
}

TEST_CASE("bound formulas") {
  CHECK(bound_general_kappa(341, 3) == doctest::Approx(0.06354).epsilon(1e-4));
  CHECK(bound_general_kappa(341, 3) > 0.0616);
  CHECK(bound_general_kappa(17, 1) == doctest::Approx(1.0 / 17.0));
  CHECK(bound_general_kappa(13, 2) == doctest::Approx(0.23831).epsilon(1e-4));

  CHECK(bound_m_odd(13, 2) == doctest::Approx(0.20353).epsilon(1e-4));
  CHECK(std::abs(bound_m_odd(13, 2) - welch_bound(27, 13)) < 2e-4);
  CHECK(bound_m_odd(1, 2) == doctest::Approx(1.0));
  CHECK(kind_of([] { bound_m_odd(13, 3); }) == ErrorKind::KappaOddWithModdP);
  CHECK(kind_of([] { bound_m_odd(4, 2); }) == ErrorKind::InvalidArgument);
  for (std::uint64_t m = 1; m < 200; m += 2) {
    for (std::uint64_t kappa = 2; kappa < 40; kappa += 2) {
      CHECK(bound_m_odd(m, kappa) <= bound_general_kappa(m, kappa) + 1e-15);
    }
  }

  CHECK(bound_sqrt_kappa(27, 13, 1) == doctest::Approx(welch_bound(27, 13)));
  CHECK(bound_sqrt_kappa(1024, 341, 3) == doctest::Approx(0.0766).epsilon(5e-4));
  CHECK(bound_sqrt_kappa(499, 166, 3) == doctest::Approx(std::sqrt(3.0) * oracle::welch(499, 166)));

  CHECK(bound_orbit_min(27, 13, 27, 13) == doctest::Approx(0.2878).epsilon(5e-4));
  CHECK(bound_orbit_min(1024, 341, 1024, 341) == doctest::Approx(bound_sqrt_kappa(1024, 341, 3)));
  CHECK(bound_orbit_min(27, 26, 27, 13) == doctest::Approx(welch_bound(27, 13)));
  CHECK(kind_of([] { bound_orbit_min(1, 1, 4, 2); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("bound ordering across the sweep") {
  for (const auto& t : sweep(1024)) {
    const auto spec = subgroup_of_order(build_field(t.p, t.r), t.m);
    const std::uint64_t n = spec.field()->size();
    const double mu = coherence_fast(spec);
    const double w = welch_bound(n, t.m);
    CAPTURE(t.p);
    CAPTURE(t.r);
    CAPTURE(t.m);
    CHECK(w <= mu + 1e-12);
    const double general = bound_general_kappa(t.m, spec.kappa());
    CHECK(mu <= general + 1e-12);
    if (t.p % 2 == 1 && t.m % 2 == 1) {
      const double odd = bound_m_odd(t.m, spec.kappa());
      CHECK(mu <= odd + 1e-12);
      CHECK(odd <= general + 1e-12);
    }
    CHECK(mu <= bound_sqrt_kappa(n, t.m, spec.kappa()) + 1e-12);
  }
}

TEST_CASE("average coherence") {
  const auto f27 = materialize(build_field_frame(3, 3, 13));
  CHECK(average_coherence(f27) == doctest::Approx(1.0 / 26.0).epsilon(1e-12));
  CHECK(average_coherence(identity(7)) == 0.0);
  for (const auto& t : sweep(128)) {
    const auto frame = materialize(build_field_frame(t.p, t.r, t.m));
    const double n = frame.cols();
    const double nu = average_coherence(frame);
    CHECK(std::abs(nu - 1.0 / (n - 1.0)) <= 1e-9);
    if (n >= 2.0 * t.m) {
      CHECK(nu <= coherence_bruteforce(frame).mu / std::sqrt(static_cast<double>(t.m)) + 1e-12);
    }
  }
  ComplexFrame bad(2, 2);
  CHECK(kind_of([&] { average_coherence(bad); }) == ErrorKind::NotNormalized);
}

TEST_CASE("coherence property predicates") {
  const auto zero = coherence_properties(0.0, 0.0, 100, 10);
  CHECK(zero.coherence_property);
  CHECK(zero.strong_coherence_property);
  const auto t1 = coherence_properties(0.0616, 1.0 / 1023.0, 1024, 341);
  CHECK(t1.strong_coherence_threshold == doctest::Approx(8.79e-4).epsilon(1e-3));
  CHECK(t1.coherence_threshold == doctest::Approx(0.0269).epsilon(1e-3));
  CHECK_FALSE(t1.strong_coherence_property);
  CHECK_FALSE(t1.coherence_property);
  CHECK(t1.nu_leq_mu_over_sqrt_dim);
  const auto base2 = coherence_properties(0.0616, 1.0 / 1023.0, 1024, 341, LogBase::Two);
  CHECK(base2.strong_coherence_threshold == doctest::Approx(1.0 / (164.0 * 10.0)));
  CHECK(kind_of([] { coherence_properties(0.1, 0.1, 1, 1); }) == ErrorKind::InvalidArgument);
  CHECK(std::string(to_string(LogBase::Ten)) == "10");
}

TEST_CASE("random Fourier bound") {
  const auto b = random_fourier_bound(1024, 341);
  CHECK(b.value == doctest::Approx(1.265).epsilon(1e-3));
  CHECK(b.in_window);
  CHECK(random_fourier_bound(50, 50).value == 0.0);
  CHECK(bound_general_kappa(341, 3) < b.value);
  CHECK_FALSE(random_fourier_bound(1024, 20).in_window);
}

TEST_CASE("tightness residual") {
  for (const auto& t : sweep(128)) {
    const auto frame = build_field_frame(t.p, t.r, t.m);
    CHECK(tightness_residual(materialize(frame)) <= 1e-9);
    CHECK(tightness_residual_exact(frame) <= 1e-9);
  }
  auto field = build_field(3, 2);
  Provenance prov;
  prov.construction = "random";
  const auto dup = make_character_frame(field, {1, 5, 5}, prov, std::nullopt);
  CHECK(tightness_residual(materialize(dup)) > 0.5);
  CHECK(tightness_residual_exact(dup) > 0.5);
  const auto dft = build_random_exponent_frame(13, 1, 13, 3);
  CHECK(tightness_residual(materialize(dft)) <= 1e-12);
}

TEST_CASE("translation-invariant coherence equals brute force on random frames") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    for (auto [p, r, m] : {std::tuple{2U, 8U, 51U}, {3U, 4U, 20U}, {11U, 2U, 30U}, {5U, 3U, 7U}}) {
      const auto f = build_random_exponent_frame(p, r, m, seed);
      const auto exact = coherence_translation_invariant(f, true);
      const auto bf = coherence_bruteforce(materialize(f));
      CHECK(std::abs(exact.mu - bf.mu) <= 1e-12);
      CHECK(std::abs(exact.gram_offdiag_mean_sq - bf.gram_offdiag_mean_sq) <= 1e-12);
      CHECK(exact.census.values.size() == bf.census.values.size());
      CHECK(exact.census.total() == bf.census.total());
      CHECK(std::abs(tightness_residual_exact(f) - tightness_residual(materialize(f))) <= 1e-9);
    }
  }
}

TEST_CASE("cluster census merges within tolerance") {
  std::vector<DistinctValue> w = {{{0.5, 0.0}, 2}, {{0.5 + 1e-11, 0.0}, 2}, {{0.5, 0.3}, 1}, {{-0.5, 0.0}, 3}};
  const auto c = cluster_census(w);
  CHECK(c.values.size() == 3);
  CHECK(c.total() == 8);
  CHECK(c.magnitudes.size() == 2);
}

TEST_CASE("Frobenius orbit counts") {
  CHECK(frobenius_orbit_count(2, 3) == 2);
  CHECK(frobenius_orbit_count(2, 5) == 2);
  CHECK(frobenius_orbit_count(3, 2) == 2);
  CHECK(frobenius_orbit_count(7, 3) == 3);
  CHECK(frobenius_orbit_count(2, 1) == 1);
}

}  // TEST_SUITE
