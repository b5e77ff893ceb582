#include "gframe/sl2_characters.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <string>

#include "gframe/coherence_lab.hpp"
#include "gframe/cyclic_structure.hpp"
#include "gframe/error.hpp"
#include "gframe/number_theory.hpp"

namespace gframe {

namespace {

constexpr std::uint64_t kMaxQ = 1U << 16;

void check_q(std::uint64_t q) {
  if (q < 4 || q > kMaxQ || !std::has_single_bit(q)) {
    throw Error(ErrorKind::NotEvenPrimePower,
                "q must be 2^d with 2 <= d <= 16, got " + std::to_string(q));
  }
}

}  // namespace

const char* to_string(Sl2Mode mode) {
  return mode == Sl2Mode::Induced ? "sl2-induced" : "sl2-cuspidal";
}

Sl2Spec make_sl2_spec(std::uint64_t q, std::uint64_t m, Sl2Mode mode) {
  check_q(q);
  Sl2Spec spec;
  spec.q = q;
  spec.mode = mode;
  spec.m = m;
  if (mode == Sl2Mode::Induced) {
    spec.p = q - 1;
    if (!is_prime(spec.p)) {
      throw Error(ErrorKind::QMinusOneNotPrime, std::to_string(spec.p) + " is not prime");
    }
  } else {
    spec.p = q + 1;
    if (!is_prime(spec.p)) {
      throw Error(ErrorKind::QPlusOneNotPrime, std::to_string(spec.p) + " is not prime");
    }
  }
  if (m == 0 || m % 2 == 0 || (spec.p - 1) % (2 * m) != 0) {
    throw Error(ErrorKind::MNotOddDivisor,
                "m must be odd with 2m | " + std::to_string(spec.p - 1) + ", got " + std::to_string(m));
  }
  spec.kappa = (spec.p - 1) / (2 * m);
  spec.n = q * (q + 1) * (q - 1);
  const std::uint64_t degree = mode == Sl2Mode::Induced ? q + 1 : q - 1;
  spec.dim = m * degree * degree;

  // A is the order-m subgroup of (Z/p)^x; A u -A has order 2m since m is odd.
  auto field = build_field(spec.p, 1);
  for (const auto& a : subgroup_of_order(field, m).elements()) {
    spec.a2m.push_back(a.value());
    spec.a2m.push_back(spec.p - a.value());
  }
  std::sort(spec.a2m.begin(), spec.a2m.end());
  spec.a2m.erase(std::unique(spec.a2m.begin(), spec.a2m.end()), spec.a2m.end());
  if (spec.a2m.size() != 2 * m) {
    throw Error(ErrorKind::InvariantViolation, "A u -A does not have 2m elements");
  }
  return spec;
}

std::uint64_t Sl2ClassData::total_mass() const {
  std::uint64_t total = 0;
  for (const auto& f : families) total += f.classes * f.class_size;
  return total;
}

Sl2ClassData sl2_class_data(std::uint64_t q) {
  check_q(q);
  Sl2ClassData data;
  data.q = q;
  data.families = {
      {"identity", 1, 1},
      {"unipotent", 1, q * q - 1},
      {"split", (q - 2) / 2, q * (q + 1)},
      {"nonsplit", q / 2, q * (q - 1)},
  };
  data.degree_steinberg = q;
  data.degree_induced = q + 1;
  data.degree_cuspidal = q - 1;
  return data;
}

Sl2Coherence sl2_coherence(const Sl2Spec& spec) {
  // rho_chi: value 1 at u, chi(c) + chi(c^-1) at split classes, 0 at nonsplit.
  // pi_eta: value -1 at u, 0 at split, -(eta(s) + eta(s^-1)) at nonsplit.
  // Summed over the m chosen characters and scaled by degree / (m degree^2).
  const std::uint64_t degree = spec.mode == Sl2Mode::Induced ? spec.q + 1 : spec.q - 1;
  const double norm = static_cast<double>(spec.m) * static_cast<double>(degree);
  Sl2Coherence out;
  out.n = spec.n;
  out.dim = spec.dim;
  out.u_value = static_cast<double>(spec.m) / norm;
  out.mu = out.u_value;
  out.w_values.reserve(spec.p - 1);
  for (std::uint64_t l = 1; l < spec.p; ++l) {
    double sum = 0.0;
    for (auto a : spec.a2m) sum += unit_root(l * a % spec.p, spec.p).real();
    const double w = std::abs(sum) / norm;
    out.w_values.push_back(w);
    out.mu = std::max(out.mu, w);
  }
  return out;
}

bool sl2_census_fits(const Sl2Spec& spec) {
  return spec.n <= std::numeric_limits<std::uint64_t>::max() / spec.n;
}

Census sl2_census(const Sl2Spec& spec) {
  if (!sl2_census_fits(spec)) {
    throw Error(ErrorKind::ResourceCap, "pair counts for q = " + std::to_string(spec.q) + " exceed 64 bits");
  }
  const std::uint64_t q = spec.q;
  const bool induced = spec.mode == Sl2Mode::Induced;
  const std::uint64_t degree = induced ? q + 1 : q - 1;
  const double norm = static_cast<double>(spec.m) * static_cast<double>(degree);
  const std::uint64_t sum_class_size = induced ? q * (q + 1) : q * (q - 1);
  const std::uint64_t zero_classes = induced ? q / 2 : (q - 2) / 2;
  const std::uint64_t zero_class_size = induced ? q * (q - 1) : q * (q + 1);
  const double sign = induced ? 1.0 : -1.0;

  std::vector<DistinctValue> weighted;
  weighted.push_back({sign * static_cast<double>(spec.m) / norm, spec.n * (q * q - 1)});
  // Classes pair l with -l, so l runs over half of (Z/p)^x.
  for (std::uint64_t l = 1; 2 * l < spec.p; ++l) {
    double sum = 0.0;
    for (auto a : spec.a2m) sum += unit_root(l * a % spec.p, spec.p).real();
    weighted.push_back({sign * sum / norm, spec.n * sum_class_size});
  }
  if (zero_classes > 0) weighted.push_back({0.0, spec.n * zero_classes * zero_class_size});
  return cluster_census(std::move(weighted));
}

Sl2Coherence sl2_induced_coherence(std::uint64_t q, std::uint64_t m) {
  return sl2_coherence(make_sl2_spec(q, m, Sl2Mode::Induced));
}

Sl2Coherence sl2_cuspidal_coherence(std::uint64_t q, std::uint64_t m) {
  return sl2_coherence(make_sl2_spec(q, m, Sl2Mode::Cuspidal));
}

double sl2_induced_bound(std::uint64_t q, std::uint64_t m) {
  const auto spec = make_sl2_spec(q, m, Sl2Mode::Induced);
  const double split = 2.0 * bound_general_kappa(2 * m, spec.kappa);
  return std::max(1.0, split) / static_cast<double>(q + 1);
}

double sl2_welch(std::uint64_t q, std::uint64_t m, Sl2Mode mode) {
  const auto spec = make_sl2_spec(q, m, mode);
  return welch_bound(spec.n, spec.dim);
}

std::vector<std::uint64_t> admissible_sl2_q(Sl2Mode mode, std::uint64_t cap) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t q = 4; q <= std::min(cap, kMaxQ); q *= 2) {
    const std::uint64_t p = mode == Sl2Mode::Induced ? q - 1 : q + 1;
    if (is_prime(p)) out.push_back(q);
  }
  return out;
}

}  // namespace gframe
