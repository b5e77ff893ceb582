#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "gframe/cyclic_structure.hpp"
#include "gframe/frame_builder.hpp"

/// Coherence analytics for unit-norm frames.
///
/// Inner products are <f_j, f_k> = sum_i f_j[i] * conj(f_k[i]). Two routes
/// are provided: dense brute force over a materialized ComplexFrame, and
/// exact exponent paths for character frames where every Gram entry is a
/// normalized character sum (1/m) sum_i omega^Tr(a_i y) with y = x_j - x_k.
namespace gframe {

inline constexpr double kClusterTol = 1e-9;

struct DistinctValue {
  std::complex<double> value;
  std::uint64_t count = 0;
};

struct DistinctMagnitude {
  double value = 0.0;
  std::uint64_t count = 0;
};

/// Off-diagonal Gram values grouped by single linkage at a tolerance.
struct Census {
  std::vector<DistinctValue> values;
  std::vector<DistinctMagnitude> magnitudes;

  std::uint64_t total() const;
};

/// Clusters weighted complex values; representatives are count-weighted means.
Census cluster_census(std::vector<DistinctValue> weighted, double tol = kClusterTol);

double welch_bound(std::uint64_t n, std::uint64_t m_dim);

struct BruteForceOptions {
  bool census = true;
  double cluster_tol = kClusterTol;
  std::uint32_t max_cols = 4096;
};

struct BruteForceResult {
  double mu = 0.0;
  double gram_offdiag_mean_sq = 0.0;
  Census census;  // empty unless requested
};

/// O(n^2 m) dense Gram. Throws NotNormalized, ResourceCap (n > max_cols).
BruteForceResult coherence_bruteforce(const ComplexFrame& frame, const BruteForceOptions& options = {});

struct CosetSums {
  std::uint32_t kappa = 0;
  std::uint32_t m = 0;
  std::uint32_t p = 0;
  unsigned r = 0;
  /// c[d] = (1/m) sum_{a in A} omega^Tr(a g^d)
  std::vector<std::complex<double>> c;
};

CosetSums coset_sums(const SubgroupSpec& spec);
double coherence_fast(const SubgroupSpec& spec);
/// Group-frame census from coset sums: value c[d] with multiplicity n*m.
Census census_fast(const CosetSums& sums, std::uint64_t n, double tol = kClusterTol);

/// Number of orbits of d -> p*d on Z/kappa. Coset sums are constant on these
/// orbits because Tr(y^p) = Tr(y) and A^p = A.
std::uint32_t frobenius_orbit_count(std::uint64_t p, std::uint32_t kappa);

struct WVectorCheck {
  std::vector<std::complex<double>> w;
  double max_violation = 0.0;
};

/// w = F c with F[i][j] = gamma^(i j), gamma = e^(2 pi i / kappa); checks
/// w_0 = -1/m and |w_i| = sqrt((1/m)(kappa + 1/m)) for i > 0.
WVectorCheck w_vector_check(const CosetSums& sums);

double bound_general_kappa(std::uint64_t m, std::uint64_t kappa);
/// Requires even kappa (KappaOddWithModdP) and odd m (InvalidArgument).
double bound_m_odd(std::uint64_t m, std::uint64_t kappa);
double bound_sqrt_kappa(std::uint64_t n, std::uint64_t m_dim, std::uint64_t kappa_count);
double bound_orbit_min(std::uint64_t group_size, std::uint64_t min_orbit_block, std::uint64_t n,
                       std::uint64_t m_dim);

/// (1/(n-1)) max_i |sum_{j != i} <f_i, f_j>|. Throws NotNormalized.
double average_coherence(const ComplexFrame& frame);

enum class LogBase { Natural, Two, Ten };
double log_in_base(double x, LogBase base);
const char* to_string(LogBase base);

struct CoherenceProperties {
  bool coherence_property = false;
  bool strong_coherence_property = false;
  bool nu_leq_mu_over_sqrt_dim = false;
  double coherence_threshold = 0.0;         // 0.1 / sqrt(2 log n)
  double strong_coherence_threshold = 0.0;  // 1 / (164 log n)
};

CoherenceProperties coherence_properties(double mu, double nu, std::uint64_t n,
                                         std::uint64_t m_dim, LogBase base = LogBase::Natural);

struct RandomFourierBound {
  double value = 0.0;
  /// 16 log n <= m <= n/3
  bool in_window = false;
};

RandomFourierBound random_fourier_bound(std::uint64_t n, std::uint64_t m_dim,
                                        LogBase base = LogBase::Natural);

/// max |(M M^*)_{ik} - (n/m) delta_ik| over the dense frame.
double tightness_residual(const ComplexFrame& frame);

struct CharacterCoherence {
  double mu = 0.0;
  double gram_offdiag_mean_sq = 0.0;
  Census census;
};

/// Exact coherence of any character frame (row subset of the additive
/// Fourier matrix), O(n m): entry (j, k) depends only on x_j - x_k.
CharacterCoherence coherence_translation_invariant(const ExponentFrame& frame, bool census = false,
                                                   double tol = kClusterTol);

/// Tightness residual of a character frame from row-pair character sums
/// over the whole field, memoized by multiplier difference.
double tightness_residual_exact(const ExponentFrame& frame);

}  // namespace gframe
