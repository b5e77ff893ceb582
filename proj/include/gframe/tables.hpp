#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "gframe/coherence_lab.hpp"
#include "gframe/sl2_characters.hpp"

namespace gframe {

inline constexpr const char* kTableSchemaVersion = "1";

struct CompareCase {
  enum class Kind { Field, Sl2 };
  Kind kind = Kind::Field;
  std::uint64_t p = 0;
  unsigned r = 0;
  std::uint64_t m = 0;  // rows for Field, character count for Sl2
  std::uint64_t q = 0;
  Sl2Mode mode = Sl2Mode::Induced;

  std::string label() const;
};

/// "field:P:R:M" or "sl2:Q:M[:induced|cuspidal]".
CompareCase parse_case(const std::string& text);
/// Table layouts "I", "II" and "IV".
std::vector<CompareCase> table_preset(const std::string& name);

struct TableRow {
  std::string label;
  std::uint64_t n = 0;
  std::uint64_t m_dim = 0;
  std::optional<std::uint64_t> kappa;
  double group_mu = 0.0;
  std::vector<std::uint64_t> seeds;
  std::vector<double> random_mu;
  double random_median = 0.0;
  std::string random_kind;
  double welch = 0.0;
  std::optional<double> bound_general;
  std::optional<double> bound_m_odd;
  std::optional<double> bound_sqrt_kappa;
  std::optional<double> bound_sl2;
  bool equiangular = false;
  /// Every seeded random coherence strictly exceeds the group coherence.
  bool random_exceeds_group = false;
};

/// Group coherence against seeded baselines: random rows of the same field
/// for Field cases, column-normalized complex Gaussian frames for Sl2 cases.
TableRow compare_case(const CompareCase& c, const std::vector<std::uint64_t>& seeds);

double median(std::vector<double> values);

nlohmann::ordered_json table_to_json(const std::vector<TableRow>& rows);
/// Numeric cells at 6 significant digits; empty cell when not applicable.
std::string table_to_csv(const std::vector<TableRow>& rows);

struct BoundsRow {
  std::uint64_t n = 0;
  std::uint64_t m = 0;
  std::uint64_t m_requested = 0;
  std::uint64_t kappa = 0;
  std::string snap;
  double welch = 0.0;
  double bound_general = 0.0;
  std::optional<double> bound_m_odd;
  double random_fourier_bound = 0.0;
  bool random_fourier_in_window = false;
  double coherence_property_threshold = 0.0;
  double strong_property_threshold = 0.0;
};

/// Prime powers q in [n_min, n_max] with kappa | q - 1, m = (q - 1) / kappa.
std::vector<BoundsRow> bounds_kappa_sweep(std::uint64_t kappa, std::uint64_t n_min, std::uint64_t n_max,
                                          LogBase base = LogBase::Natural);
/// Primes n in [n_min, n_max] with m = n^(4/5) snapped to a divisor of n - 1.
std::vector<BoundsRow> bounds_power_regime(std::uint64_t n_min, std::uint64_t n_max,
                                           LogBase base = LogBase::Natural);
/// Divisor of n - 1 nearest to target; ties go to the smaller divisor.
std::uint64_t snap_to_divisor(std::uint64_t n, double target);

std::string bounds_to_csv(const std::vector<BoundsRow>& rows);

/// printf("%.6g"), with negative zero printed as 0.
std::string format6(double x);

}  // namespace gframe
