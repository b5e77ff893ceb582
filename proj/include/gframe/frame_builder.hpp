#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gframe/cyclic_structure.hpp"
#include "gframe/gf_arith.hpp"

/// Frames as exact exponent matrices.
///
/// Entry (i, j) of a character frame is omega^Tr(a_i x_j) with omega =
/// e^(2 pi i / p); only the exponent Tr(a_i x_j) in Z/p is stored. Columns
/// are ordered x_0 = 0, x_j = g^(j-1) for the field generator g. Rows are
/// indexed by the multipliers a_i: the order-m subgroup in log order for
/// group constructions, or a seeded sample for random baselines.
namespace gframe {

struct Provenance {
  std::string construction;  // field | harmonic | hadamard | random | random-hadamard | external
  std::uint32_t p = 0;
  unsigned r = 0;
  std::uint32_t m = 0;
  std::vector<std::uint32_t> modulus;
  std::vector<std::uint32_t> generator;  // coefficient vector
  std::string ordering;
  std::optional<std::uint64_t> seed;
  std::string rng;
};

struct FrameLimits {
  std::uint64_t max_cells = std::uint64_t{1} << 28;
};

class ExponentFrame {
 public:
  std::uint32_t p() const noexcept { return p_; }
  std::uint32_t rows() const noexcept { return rows_; }
  std::uint32_t cols() const noexcept { return cols_; }
  std::uint32_t at(std::uint32_t i, std::uint32_t j) const { return exps_[std::size_t{i} * cols_ + j]; }
  const std::vector<std::uint32_t>& exponents() const noexcept { return exps_; }

  const Provenance& provenance() const noexcept { return provenance_; }
  const std::optional<SubgroupSpec>& subgroup() const noexcept { return subgroup_; }
  const FieldHandle& field() const noexcept { return field_; }
  /// Packed field values of the row multipliers a_i.
  const std::vector<std::uint32_t>& multipliers() const noexcept { return multipliers_; }
  /// Packed field value of x_j.
  std::uint32_t column_value(std::uint32_t j) const {
    return j == 0 ? 0 : field_->exp_value(j - 1);
  }

 private:
  friend ExponentFrame make_character_frame(const FieldHandle&, std::vector<std::uint32_t>,
                                            Provenance, std::optional<SubgroupSpec>,
                                            const FrameLimits&);
  ExponentFrame() = default;

  std::uint32_t p_ = 0;
  std::uint32_t rows_ = 0;
  std::uint32_t cols_ = 0;
  std::vector<std::uint32_t> exps_;  // row-major
  Provenance provenance_;
  std::optional<SubgroupSpec> subgroup_;
  FieldHandle field_;
  std::vector<std::uint32_t> multipliers_;
};

/// +/-1 matrix from a p = 2 exponent frame (0 -> +1, 1 -> -1).
class SignMatrix {
 public:
  explicit SignMatrix(ExponentFrame frame);

  std::uint32_t rows() const noexcept { return frame_.rows(); }
  std::uint32_t cols() const noexcept { return frame_.cols(); }
  int at(std::uint32_t i, std::uint32_t j) const { return frame_.at(i, j) == 0 ? 1 : -1; }
  const ExponentFrame& exponent_frame() const noexcept { return frame_; }
  const Provenance& provenance() const noexcept { return frame_.provenance(); }

  /// For row i, the Sylvester-Hadamard row whose binary label (least
  /// significant bit = coefficient of t^0) is the coordinate vector of the
  /// functional x -> Tr(a_i x) in the polynomial basis. Column x of that row
  /// is (-1)^popcount(label & x) where x is the packed element value.
  const std::vector<std::uint32_t>& sylvester_rows() const noexcept { return sylvester_rows_; }

 private:
  ExponentFrame frame_;
  std::vector<std::uint32_t> sylvester_rows_;
};

/// Dense complex frame, column-major, real and imaginary parts stored apart.
class ComplexFrame {
 public:
  ComplexFrame(std::uint32_t rows, std::uint32_t cols);
  ComplexFrame(std::uint32_t rows, std::uint32_t cols, std::vector<double> re,
               std::vector<double> im);
  /// Column-major list of complex entries.
  static ComplexFrame from_columns(std::uint32_t rows, std::uint32_t cols,
                                   const std::vector<std::complex<double>>& entries);

  std::uint32_t rows() const noexcept { return rows_; }
  std::uint32_t cols() const noexcept { return cols_; }
  std::complex<double> at(std::uint32_t i, std::uint32_t j) const {
    const std::size_t k = std::size_t{j} * rows_ + i;
    return {re_[k], im_[k]};
  }
  void set(std::uint32_t i, std::uint32_t j, std::complex<double> v) {
    const std::size_t k = std::size_t{j} * rows_ + i;
    re_[k] = v.real();
    im_[k] = v.imag();
  }
  const double* col_re(std::uint32_t j) const { return re_.data() + std::size_t{j} * rows_; }
  const double* col_im(std::uint32_t j) const { return im_.data() + std::size_t{j} * rows_; }
  const std::vector<double>& re() const noexcept { return re_; }
  const std::vector<double>& im() const noexcept { return im_; }

  /// True when every column norm is within `tol` of 1.
  bool is_normalized(double tol = 1e-9) const;
  /// Scales each nonzero column to unit norm.
  void normalize_columns();

  Provenance provenance;

 private:
  std::uint32_t rows_;
  std::uint32_t cols_;
  std::vector<double> re_;
  std::vector<double> im_;
};

/// Generic character frame: rows a_i, exps[i][j] = Tr(a_i x_j).
ExponentFrame make_character_frame(const FieldHandle& field, std::vector<std::uint32_t> multipliers,
                                   Provenance provenance, std::optional<SubgroupSpec> subgroup,
                                   const FrameLimits& limits = {});

ExponentFrame build_field_frame(const SubgroupSpec& spec, const FrameLimits& limits = {});
ExponentFrame build_field_frame(std::uint64_t p, unsigned r, std::uint64_t m,
                                const FrameLimits& limits = {});
/// Prime-field alias: exponents a_i * j mod n.
ExponentFrame build_harmonic_frame(std::uint64_t n, std::uint64_t m, const FrameLimits& limits = {});
SignMatrix build_hadamard_frame(unsigned r, std::uint64_t m, const FrameLimits& limits = {});

/// m distinct multipliers drawn from all p^r field elements without
/// replacement; throws TooManyRows if m > p^r.
ExponentFrame build_random_exponent_frame(std::uint64_t p, unsigned r, std::uint64_t m,
                                          std::uint64_t seed, const FrameLimits& limits = {});
/// Each of the p^r elements is kept independently with probability m / p^r.
ExponentFrame build_bernoulli_exponent_frame(std::uint64_t p, unsigned r, std::uint64_t m,
                                             std::uint64_t seed, const FrameLimits& limits = {});
SignMatrix build_random_hadamard_frame(unsigned r, std::uint64_t m, std::uint64_t seed,
                                       const FrameLimits& limits = {});

/// Column-normalized i.i.d. complex Gaussian entries.
ComplexFrame build_gaussian_frame(std::uint32_t rows, std::uint32_t cols, std::uint64_t seed,
                                  const FrameLimits& limits = {});

/// omega^exps, divided by sqrt(rows) when `normalize` is set.
ComplexFrame materialize(const ExponentFrame& frame, bool normalize = true);
ComplexFrame materialize(const SignMatrix& frame, bool normalize = true);

/// e^(2 pi i e / p), with e reduced mod p.
std::complex<double> unit_root(std::uint64_t e, std::uint64_t p);

}  // namespace gframe
