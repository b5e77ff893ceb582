#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gframe/coherence_lab.hpp"

// Character-level coherence of frames built from the induced (rho_chi,
// degree q+1) or cuspidal (pi_eta, degree q-1) representations of
// SL2(F_q), q = 2^d. No representation matrices are formed: the normalized
// Gram entries are class functions read off the character table.
namespace gframe {

enum class Sl2Mode { Induced, Cuspidal };

const char* to_string(Sl2Mode mode);

struct Sl2Spec {
  std::uint64_t q = 0;
  Sl2Mode mode = Sl2Mode::Induced;
  std::uint64_t m = 0;
  /// q - 1 (induced) or q + 1 (cuspidal); prime.
  std::uint64_t p = 0;
  /// (p - 1) / (2m)
  std::uint64_t kappa = 0;
  /// |SL2(F_q)| = q(q+1)(q-1)
  std::uint64_t n = 0;
  /// m(q+1)^2 or m(q-1)^2
  std::uint64_t dim = 0;
  /// A u -A, the order-2m subgroup of (Z/p)^x, ascending.
  std::vector<std::uint64_t> a2m;
};

/// Validates (q, m, mode); throws NotEvenPrimePower, QMinusOneNotPrime,
/// QPlusOneNotPrime, MNotOddDivisor.
Sl2Spec make_sl2_spec(std::uint64_t q, std::uint64_t m, Sl2Mode mode);

struct Sl2ClassFamily {
  std::string name;
  std::uint64_t classes = 0;
  std::uint64_t class_size = 0;
};

struct Sl2ClassData {
  std::uint64_t q = 0;
  /// identity, unipotent, split, nonsplit
  std::vector<Sl2ClassFamily> families;
  /// Degrees of 1_G, St_G, rho_chi, pi_eta.
  std::uint64_t degree_trivial = 1;
  std::uint64_t degree_steinberg = 0;
  std::uint64_t degree_induced = 0;
  std::uint64_t degree_cuspidal = 0;

  std::uint64_t total_mass() const;
};

Sl2ClassData sl2_class_data(std::uint64_t q);

struct Sl2Coherence {
  double mu = 0.0;
  /// Normalized magnitude at the unipotent class.
  double u_value = 0.0;
  /// w_values[l - 1] = |sum_{a in A2m} omega^(l a)| / (m * degree), l = 1..p-1
  std::vector<double> w_values;
  std::uint64_t n = 0;
  std::uint64_t dim = 0;
};

Sl2Coherence sl2_coherence(const Sl2Spec& spec);

/// n(n-1) fits in 64 bits, so pair counts are representable.
bool sl2_census_fits(const Sl2Spec& spec);

/// Signed normalized Gram values per conjugacy class, each with multiplicity
/// n * |class| over ordered pairs; nonzero classes only contribute their
/// character sums, the remaining classes contribute 0.
Census sl2_census(const Sl2Spec& spec);
Sl2Coherence sl2_induced_coherence(std::uint64_t q, std::uint64_t m);
Sl2Coherence sl2_cuspidal_coherence(std::uint64_t q, std::uint64_t m);

/// (1/(q+1)) max(1, 2 B(2m, kappa)) with B the general-kappa bound. The factor
/// 2 accounts for the 2m-term split-class sum normalized by m(q+1).
double sl2_induced_bound(std::uint64_t q, std::uint64_t m);

double sl2_welch(std::uint64_t q, std::uint64_t m, Sl2Mode mode);

/// q = 2^d <= cap with q - 1 (induced) or q + 1 (cuspidal) prime.
std::vector<std::uint64_t> admissible_sl2_q(Sl2Mode mode, std::uint64_t cap = 1U << 16);

}  // namespace gframe
