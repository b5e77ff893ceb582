#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "gframe/coherence_lab.hpp"
#include "gframe/frame_builder.hpp"
#include "gframe/sl2_characters.hpp"

namespace gframe {

inline constexpr const char* kReportSchemaVersion = "1";

enum class BruteForceMode { Off, On, Auto };

struct AnalysisOptions {
  BruteForceMode brute_force = BruteForceMode::Auto;
  /// Auto runs brute force up to this many columns.
  std::uint32_t auto_brute_max_cols = 1024;
  LogBase log_base = LogBase::Natural;
  double cluster_tol = kClusterTol;
};

struct CoherenceReport {
  std::string mode;
  std::uint64_t n = 0;
  std::uint64_t m_dim = 0;
  std::optional<std::uint64_t> kappa;
  double mu = 0.0;
  std::string mu_method;
  std::optional<double> mu_bruteforce;
  double nu = 0.0;
  std::string nu_method;
  double welch = 0.0;
  std::optional<double> bound_general;
  std::optional<double> bound_m_odd;
  std::optional<double> bound_sqrt_kappa;
  std::optional<double> bound_sl2;
  std::optional<double> tightness_residual;
  std::optional<double> gram_offdiag_mean_sq;
  Census census;
  bool equiangular = false;
  CoherenceProperties property_flags;
  LogBase log_base = LogBase::Natural;
  nlohmann::ordered_json provenance;
};

nlohmann::ordered_json provenance_to_json(const Provenance& prov);
nlohmann::ordered_json to_json(const CoherenceReport& report);

/// Group or random character frame: exact fast path plus optional brute force.
CoherenceReport analyze_character_frame(const ExponentFrame& frame, const AnalysisOptions& options = {});
/// Arbitrary dense frame (e.g. read from CSV); brute force only.
CoherenceReport analyze_dense_frame(const ComplexFrame& frame, const AnalysisOptions& options = {});
CoherenceReport analyze_sl2(const Sl2Spec& spec, const AnalysisOptions& options = {});

struct HistogramBin {
  double lo = 0.0;
  double hi = 0.0;
  std::uint64_t count = 0;
};

/// Histogram of off-diagonal |Gram| values; `hi` <= 0 means [0, max].
std::vector<HistogramBin> magnitude_histogram(const Census& census, std::uint32_t bins = 200,
                                              double hi = 0.0);

/// Rounds to the nearest multiple of 1e-12.
double round_reported(double x);

}  // namespace gframe
