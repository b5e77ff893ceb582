#include "doctest.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <numbers>
#include <vector>

#include "gframe/coherence_lab.hpp"
#include "gframe/error.hpp"
#include "gframe/gf_arith.hpp"
#include "gframe/sl2_characters.hpp"

using namespace gframe;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::InvariantViolation;
}

// Normalized Gram values phi(x) of the induced frame, tallied over every
// non-identity element x of SL2(F_q) enumerated as a 2x2 matrix. Split
// elements are recognised by solving c^2 + t c + 1 = 0 in F_q.
struct Enumerated {
  std::uint64_t group_order = 0;
  std::map<long long, std::uint64_t> tally;  // phi rounded to 1e-9
  double mu = 0.0;
  double sum_sq = 0.0;
};

Enumerated enumerate_induced(std::uint64_t q, std::uint64_t m) {
  auto f = build_field(2, static_cast<unsigned>(std::countr_zero(q)));
  const std::uint64_t p = q - 1;
  std::vector<std::uint64_t> a2m;
  for (std::uint64_t a = 1; a < p; ++a) {
    std::uint64_t x = 1;
    for (std::uint64_t i = 0; i < 2 * m; ++i) x = x * a % p;
    if (x == 1) a2m.push_back(a);
  }
  REQUIRE(a2m.size() == 2 * m);
  const double norm = static_cast<double>(m) * static_cast<double>(q + 1);

  auto phi_of_trace = [&](std::uint32_t t) -> double {
    if (t == 0) return static_cast<double>(m) / norm;  // unipotent
    for (std::uint32_t c = 1; c < q; ++c) {
      const auto cc = f->mul_values(c, c);
      if (f->add_values(f->add_values(cc, f->mul_values(t, c)), 1) == 0) {
        const std::uint64_t k = f->log_value(c);
        double s = 0.0;
        for (auto a : a2m) s += std::cos(2.0 * std::numbers::pi * static_cast<double>(a * k % p) / static_cast<double>(p));
        return s / norm;
      }
    }
    return 0.0;  // nonsplit
  };

  Enumerated out;
  for (std::uint32_t a = 0; a < q; ++a) {
    for (std::uint32_t b = 0; b < q; ++b) {
      for (std::uint32_t c = 0; c < q; ++c) {
        for (std::uint32_t d = 0; d < q; ++d) {
          if (f->add_values(f->mul_values(a, d), f->mul_values(b, c)) != 1) continue;
          ++out.group_order;
          if (a == 1 && d == 1 && b == 0 && c == 0) continue;
          const double v = phi_of_trace(f->add_values(a, d));
          ++out.tally[std::llround(v * 1e9)];
          out.mu = std::max(out.mu, std::abs(v));
          out.sum_sq += v * v;
        }
      }
    }
  }
  return out;
}

}  // namespace

TEST_SUITE("sl2_characters") {

TEST_CASE("class data for q = 4 and q = 8") {
  const auto c4 = sl2_class_data(4);
  CHECK(c4.total_mass() == 60);
  REQUIRE(c4.families.size() == 4);
  CHECK(c4.families[1].class_size == 15);
  CHECK(c4.families[2].classes == 1);
  CHECK(c4.families[2].class_size == 20);
  CHECK(c4.families[3].classes == 2);
  CHECK(c4.families[3].class_size == 12);
  CHECK(c4.degree_induced == 5);
  CHECK(c4.degree_cuspidal == 3);
  CHECK(sl2_class_data(8).total_mass() == 504);
}

TEST_CASE("class mass equals the group order") {
  for (std::uint64_t q = 4; q <= 1U << 12; q *= 2) {
    const auto c = sl2_class_data(q);
    CHECK(c.total_mass() == q * (q + 1) * (q - 1));
    const std::uint64_t sq = 1 + q * q + (q - 2) / 2 * (q + 1) * (q + 1) + q / 2 * (q - 1) * (q - 1);
    CHECK(sq == q * (q + 1) * (q - 1));  // squared character degrees
  }
}

TEST_CASE("induced coherence examples") {
  const auto s41 = sl2_induced_coherence(4, 1);
  CHECK(s41.mu == doctest::Approx(0.2));
  CHECK(s41.dim == 25);
  CHECK(s41.n == 60);
  CHECK(sl2_induced_coherence(8, 1).mu == doctest::Approx(2.0 * std::cos(std::numbers::pi / 7.0) / 9.0).epsilon(1e-12));
  CHECK(sl2_induced_coherence(8, 3).mu == doctest::Approx(1.0 / 9.0).epsilon(1e-12));
}

TEST_CASE("induced coherence and census agree with group enumeration") {
  for (auto [q, m] : {std::pair<std::uint64_t, std::uint64_t>{4, 1}, {8, 1}, {8, 3}}) {
    CAPTURE(q);
    CAPTURE(m);
    const auto spec = make_sl2_spec(q, m, Sl2Mode::Induced);
    const auto e = enumerate_induced(q, m);
    CHECK(e.group_order == spec.n);
    CHECK(sl2_coherence(spec).mu == doctest::Approx(e.mu).epsilon(1e-12));
    const auto census = sl2_census(spec);
    CHECK(census.total() == spec.n * (spec.n - 1));
    std::map<long long, std::uint64_t> got;
    for (const auto& v : census.values) got[std::llround(v.value.real() * 1e9)] += v.count;
    std::map<long long, std::uint64_t> expected;
    for (const auto& [k, c] : e.tally) expected[k] = c * spec.n;
    CHECK(got == expected);
  }
}

TEST_CASE("census mean square matches irreducible orthogonality") {
  for (auto mode : {Sl2Mode::Induced, Sl2Mode::Cuspidal}) {
    for (auto q : admissible_sl2_q(mode, 1U << 13)) {
      const std::uint64_t p = mode == Sl2Mode::Induced ? q - 1 : q + 1;
      for (std::uint64_t m = 1; m <= (p - 1) / 2; m += 2) {
        if (((p - 1) / 2) % m != 0) continue;
        const auto spec = make_sl2_spec(q, m, mode);
        if (!sl2_census_fits(spec)) {
          CHECK(kind_of([&] { sl2_census(spec); }) == ErrorKind::ResourceCap);
          continue;
        }
        const auto census = sl2_census(spec);
        double sum = 0.0;
        for (const auto& v : census.values) sum += std::norm(v.value) * static_cast<double>(v.count);
        const double n = static_cast<double>(spec.n);
        const double expected = n * (n / static_cast<double>(spec.dim) - 1.0);
        CAPTURE(q);
        CAPTURE(m);
        CHECK(sum == doctest::Approx(expected).epsilon(1e-9));
        CHECK(census.total() == spec.n * (spec.n - 1));
      }
    }
  }
}

TEST_CASE("bound examples and validity") {
  CHECK(sl2_induced_bound(4, 1) == doctest::Approx(0.2));
  CHECK(sl2_induced_bound(8, 3) == doctest::Approx(1.0 / 9.0));
  for (auto q : admissible_sl2_q(Sl2Mode::Induced, 32)) {
    const std::uint64_t half = (q - 2) / 2;
    for (std::uint64_t m = 1; m <= half; m += 2) {
      if (half % m != 0) continue;
      CAPTURE(q);
      CAPTURE(m);
      CHECK(sl2_induced_coherence(q, m).mu <= sl2_induced_bound(q, m) + 1e-12);
    }
  }
}

TEST_CASE("bound without the split-class factor fails at q = 8, m = 1") {
  const auto spec = make_sl2_spec(8, 1, Sl2Mode::Induced);
  const double without_factor = std::max(1.0, bound_general_kappa(2, spec.kappa)) / 9.0;
  CHECK(sl2_induced_coherence(8, 1).mu > without_factor);
}

TEST_CASE("cuspidal examples") {
  const auto c41 = sl2_cuspidal_coherence(4, 1);
  CHECK(c41.u_value == doctest::Approx(1.0 / 3.0));
  CHECK(c41.mu == doctest::Approx(0.5393).epsilon(5e-4));
  CHECK(c41.mu == doctest::Approx(2.0 * std::cos(std::numbers::pi / 5.0) / 3.0).epsilon(1e-12));
  const auto c16 = sl2_cuspidal_coherence(16, 1);
  CHECK(c16.mu == doctest::Approx(2.0 * std::cos(std::numbers::pi / 17.0) / 15.0).epsilon(1e-12));
  CHECK(c16.dim == 225);
}

TEST_CASE("Welch values") {
  CHECK(sl2_welch(4, 1, Sl2Mode::Induced) == doctest::Approx(0.1540).epsilon(5e-4));
  CHECK(sl2_welch(8, 1, Sl2Mode::Induced) == doctest::Approx(0.1019).epsilon(5e-4));
  CHECK(sl2_welch(8, 3, Sl2Mode::Induced) == doctest::Approx(0.0462).epsilon(5e-4));
  for (auto mode : {Sl2Mode::Induced, Sl2Mode::Cuspidal}) {
    for (auto q : admissible_sl2_q(mode, 256)) {
      const auto c = sl2_coherence(make_sl2_spec(q, 1, mode));
      CHECK(c.mu >= sl2_welch(q, 1, mode) - 1e-12);
    }
  }
}

TEST_CASE("validation errors") {
  CHECK(kind_of([] { make_sl2_spec(6, 1, Sl2Mode::Induced); }) == ErrorKind::NotEvenPrimePower);
  CHECK(kind_of([] { make_sl2_spec(2, 1, Sl2Mode::Induced); }) == ErrorKind::NotEvenPrimePower);
  CHECK(kind_of([] { make_sl2_spec(16, 1, Sl2Mode::Induced); }) == ErrorKind::QMinusOneNotPrime);
  CHECK(kind_of([] { make_sl2_spec(8, 1, Sl2Mode::Cuspidal); }) == ErrorKind::QPlusOneNotPrime);
  CHECK(kind_of([] { make_sl2_spec(8, 2, Sl2Mode::Induced); }) == ErrorKind::MNotOddDivisor);
  CHECK(kind_of([] { make_sl2_spec(8, 5, Sl2Mode::Induced); }) == ErrorKind::MNotOddDivisor);
}

TEST_CASE("A u -A is the order-2m subgroup and w is symmetric") {
  for (auto [q, m] : {std::pair<std::uint64_t, std::uint64_t>{8, 1}, {8, 3}, {32, 1}, {32, 3}, {32, 5}, {32, 15}}) {
    const auto spec = make_sl2_spec(q, m, Sl2Mode::Induced);
    REQUIRE(spec.a2m.size() == 2 * m);
    CHECK(std::is_sorted(spec.a2m.begin(), spec.a2m.end()));
    for (auto a : spec.a2m) {
      std::uint64_t x = 1;
      for (std::uint64_t i = 0; i < 2 * m; ++i) x = x * a % spec.p;
      CHECK(x == 1);
      CHECK(std::binary_search(spec.a2m.begin(), spec.a2m.end(), spec.p - a));
    }
    CHECK(spec.kappa == (spec.p - 1) / (2 * m));
    CHECK(spec.dim == m * (q + 1) * (q + 1));
    const auto c = sl2_coherence(spec);
    REQUIRE(c.w_values.size() == spec.p - 1);
    for (std::uint64_t l = 1; l < spec.p; ++l) {
      CHECK(c.w_values[l - 1] == doctest::Approx(c.w_values[spec.p - l - 1]).epsilon(1e-12));
    }
  }
}

TEST_CASE("admissible q lists") {
  CHECK(admissible_sl2_q(Sl2Mode::Induced, 1U << 13) == std::vector<std::uint64_t>{4, 8, 32, 128, 8192});
  CHECK(admissible_sl2_q(Sl2Mode::Cuspidal, 1U << 16) == std::vector<std::uint64_t>{4, 16, 256, 65536});
}

}  // TEST_SUITE
