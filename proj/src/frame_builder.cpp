#include "gframe/frame_builder.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "gframe/number_theory.hpp"
#include "gframe/rng.hpp"

namespace gframe {

namespace {

constexpr const char* kColumnOrdering = "0,g^0,g^1,...,g^(n-2)";

Provenance field_provenance(const FieldCtx& f, std::string construction, std::uint64_t m) {
  Provenance prov;
  prov.construction = std::move(construction);
  prov.p = f.p();
  prov.r = f.r();
  prov.m = static_cast<std::uint32_t>(m);
  prov.modulus = f.modulus();
  prov.generator = f.coeffs(f.generator());
  prov.ordering = kColumnOrdering;
  return prov;
}

void check_cells(std::uint64_t rows, std::uint64_t cols, const FrameLimits& limits) {
  if (rows * cols > limits.max_cells) {
    throw Error(ErrorKind::ResourceCap, std::to_string(rows) + "x" + std::to_string(cols) +
                                            " exceeds the cap of " +
                                            std::to_string(limits.max_cells) + " cells");
  }
}

}  // namespace

std::complex<double> unit_root(std::uint64_t e, std::uint64_t p) {
  e %= p;
  if (e == 0) return {1.0, 0.0};
  if (2 * e == p) return {-1.0, 0.0};
  if (4 * e == p) return {0.0, 1.0};
  if (4 * e == 3 * p) return {0.0, -1.0};
  // Reduce to (-p/2, p/2] before scaling to keep the angle small.
  const double signed_e = 2 * e > p ? static_cast<double>(e) - static_cast<double>(p)
                                    : static_cast<double>(e);
  const double angle = 2.0 * std::numbers::pi * signed_e / static_cast<double>(p);
  return {std::cos(angle), std::sin(angle)};
}

ExponentFrame make_character_frame(const FieldHandle& field, std::vector<std::uint32_t> multipliers,
                                   Provenance provenance, std::optional<SubgroupSpec> subgroup,
                                   const FrameLimits& limits) {
  const std::uint32_t n = field->size();
  check_cells(multipliers.size(), n, limits);

  ExponentFrame frame;
  frame.p_ = field->p();
  frame.rows_ = static_cast<std::uint32_t>(multipliers.size());
  frame.cols_ = n;
  frame.exps_.assign(std::size_t{frame.rows_} * n, 0);
  for (std::uint32_t i = 0; i < frame.rows_; ++i) {
    const std::uint32_t a = multipliers[i];
    std::uint32_t* row = frame.exps_.data() + std::size_t{i} * n;
    row[0] = 0;
    if (a == 0) continue;
    const std::uint64_t log_a = field->log_value(a);
    for (std::uint32_t j = 1; j < n; ++j) row[j] = field->trace_of_power(log_a + j - 1);
  }
  frame.provenance_ = std::move(provenance);
  frame.subgroup_ = std::move(subgroup);
  frame.field_ = field;
  frame.multipliers_ = std::move(multipliers);
  return frame;
}

ExponentFrame build_field_frame(const SubgroupSpec& spec, const FrameLimits& limits) {
  const auto& f = *spec.field();
  return make_character_frame(spec.field(), spec.element_values(),
                              field_provenance(f, "field", spec.m()), spec, limits);
}

ExponentFrame build_field_frame(std::uint64_t p, unsigned r, std::uint64_t m,
                                const FrameLimits& limits) {
  auto field = build_field(p, r);
  auto spec = subgroup_of_order(field, m);
  check_cells(m, field->size(), limits);
  return build_field_frame(spec, limits);
}

ExponentFrame build_harmonic_frame(std::uint64_t n, std::uint64_t m, const FrameLimits& limits) {
  auto field = build_field(n, 1);
  auto spec = subgroup_of_order(field, m);
  check_cells(m, field->size(), limits);
  return make_character_frame(field, spec.element_values(),
                              field_provenance(*field, "harmonic", m), spec, limits);
}

SignMatrix::SignMatrix(ExponentFrame frame) : frame_(std::move(frame)) {
  if (frame_.p() != 2) throw Error(ErrorKind::InvalidArgument, "sign matrices need p = 2");
  const auto& f = *frame_.field();
  sylvester_rows_.reserve(frame_.rows());
  for (auto a : frame_.multipliers()) {
    std::uint32_t label = 0;
    for (unsigned k = 0; k < f.r(); ++k) {
      label |= f.trace_value(f.mul_values(a, std::uint32_t{1} << k)) << k;
    }
    sylvester_rows_.push_back(label);
  }
}

SignMatrix build_hadamard_frame(unsigned r, std::uint64_t m, const FrameLimits& limits) {
  auto frame = build_field_frame(2, r, m, limits);
  return SignMatrix(std::move(frame));
}

ExponentFrame build_random_exponent_frame(std::uint64_t p, unsigned r, std::uint64_t m,
                                          std::uint64_t seed, const FrameLimits& limits) {
  auto field = build_field(p, r);
  if (m == 0 || m > field->size()) {
    throw Error(ErrorKind::TooManyRows, "cannot draw " + std::to_string(m) + " distinct rows from " +
                                            std::to_string(field->size()));
  }
  check_cells(m, field->size(), limits);
  SeededRng rng(seed);
  auto multipliers = rng.sample_without_replacement(field->size(), static_cast<std::uint32_t>(m));
  Provenance prov = field_provenance(*field, p == 2 ? "random-hadamard" : "random", m);
  prov.seed = seed;
  prov.rng = kRngName;
  return make_character_frame(field, std::move(multipliers), std::move(prov), std::nullopt, limits);
}

ExponentFrame build_bernoulli_exponent_frame(std::uint64_t p, unsigned r, std::uint64_t m,
                                             std::uint64_t seed, const FrameLimits& limits) {
  auto field = build_field(p, r);
  if (m == 0 || m > field->size()) {
    throw Error(ErrorKind::TooManyRows, "expected row count " + std::to_string(m) +
                                            " must lie in [1, " + std::to_string(field->size()) + "]");
  }
  SeededRng rng(seed);
  const double prob = static_cast<double>(m) / static_cast<double>(field->size());
  std::vector<std::uint32_t> multipliers;
  for (std::uint32_t a = 0; a < field->size(); ++a) {
    if (rng.uniform01() < prob) multipliers.push_back(a);
  }
  if (multipliers.empty()) throw Error(ErrorKind::TooManyRows, "Bernoulli draw selected no rows");
  check_cells(multipliers.size(), field->size(), limits);
  Provenance prov = field_provenance(*field, p == 2 ? "random-hadamard-bernoulli" : "random-bernoulli",
                                     multipliers.size());
  prov.seed = seed;
  prov.rng = kRngName;
  return make_character_frame(field, std::move(multipliers), std::move(prov), std::nullopt, limits);
}

ComplexFrame build_gaussian_frame(std::uint32_t rows, std::uint32_t cols, std::uint64_t seed,
                                  const FrameLimits& limits) {
  if (rows == 0 || cols == 0) throw Error(ErrorKind::BadShape, "Gaussian frame needs a nonempty shape");
  check_cells(rows, cols, limits);
  SeededRng rng(seed);
  std::vector<double> re(std::size_t{rows} * cols);
  std::vector<double> im(re.size());
  for (std::size_t k = 0; k < re.size(); ++k) {
    re[k] = rng.standard_normal();
    im[k] = rng.standard_normal();
  }
  ComplexFrame frame(rows, cols, std::move(re), std::move(im));
  frame.normalize_columns();
  frame.provenance.construction = "gaussian";
  frame.provenance.m = rows;
  frame.provenance.seed = seed;
  frame.provenance.rng = kRngName;
  frame.provenance.ordering = "column-major draws, re then im";
  return frame;
}

SignMatrix build_random_hadamard_frame(unsigned r, std::uint64_t m, std::uint64_t seed,
                                       const FrameLimits& limits) {
  return SignMatrix(build_random_exponent_frame(2, r, m, seed, limits));
}

ComplexFrame::ComplexFrame(std::uint32_t rows, std::uint32_t cols)
    : rows_(rows),
      cols_(cols),
      re_(std::size_t{rows} * cols, 0.0),
      im_(std::size_t{rows} * cols, 0.0) {}

ComplexFrame::ComplexFrame(std::uint32_t rows, std::uint32_t cols, std::vector<double> re,
                           std::vector<double> im)
    : rows_(rows), cols_(cols), re_(std::move(re)), im_(std::move(im)) {
  if (re_.size() != std::size_t{rows} * cols || im_.size() != re_.size()) {
    throw Error(ErrorKind::BadShape, "entry count does not match rows x cols");
  }
}

ComplexFrame ComplexFrame::from_columns(std::uint32_t rows, std::uint32_t cols,
                                        const std::vector<std::complex<double>>& entries) {
  if (entries.size() != std::size_t{rows} * cols) {
    throw Error(ErrorKind::BadShape, "entry count does not match rows x cols");
  }
  ComplexFrame out(rows, cols);
  for (std::size_t k = 0; k < entries.size(); ++k) {
    out.re_[k] = entries[k].real();
    out.im_[k] = entries[k].imag();
  }
  return out;
}

bool ComplexFrame::is_normalized(double tol) const {
  for (std::uint32_t j = 0; j < cols_; ++j) {
    double sq = 0.0;
    const double* re = col_re(j);
    const double* im = col_im(j);
    for (std::uint32_t i = 0; i < rows_; ++i) sq += re[i] * re[i] + im[i] * im[i];
    if (std::abs(std::sqrt(sq) - 1.0) > tol) return false;
  }
  return true;
}

void ComplexFrame::normalize_columns() {
  for (std::uint32_t j = 0; j < cols_; ++j) {
    double sq = 0.0;
    const std::size_t base = std::size_t{j} * rows_;
    for (std::uint32_t i = 0; i < rows_; ++i) {
      sq += re_[base + i] * re_[base + i] + im_[base + i] * im_[base + i];
    }
    if (sq == 0.0) continue;
    const double scale = 1.0 / std::sqrt(sq);
    for (std::uint32_t i = 0; i < rows_; ++i) {
      re_[base + i] *= scale;
      im_[base + i] *= scale;
    }
  }
}

ComplexFrame materialize(const ExponentFrame& frame, bool normalize) {
  const std::uint32_t m = frame.rows();
  const std::uint32_t n = frame.cols();
  const std::uint32_t p = frame.p();
  ComplexFrame out(m, n);
  const double scale = normalize ? 1.0 / std::sqrt(static_cast<double>(m)) : 1.0;

  std::vector<std::complex<double>> table;
  if (p <= (1U << 16)) {
    table.reserve(p);
    for (std::uint32_t e = 0; e < p; ++e) table.push_back(unit_root(e, p) * scale);
  }
  for (std::uint32_t i = 0; i < m; ++i) {
    for (std::uint32_t j = 0; j < n; ++j) {
      const std::uint32_t e = frame.at(i, j);
      out.set(i, j, table.empty() ? unit_root(e, p) * scale : table[e]);
    }
  }
  out.provenance = frame.provenance();
  return out;
}

ComplexFrame materialize(const SignMatrix& frame, bool normalize) {
  return materialize(frame.exponent_frame(), normalize);
}

}  // namespace gframe
