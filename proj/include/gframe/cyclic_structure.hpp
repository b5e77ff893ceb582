#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gframe/gf_arith.hpp"

namespace gframe {

/// The unique order-m subgroup A of GF(p^r)^x and its kappa = (p^r - 1)/m cosets.
///
/// With g the field generator, A = { g^(kappa*i) : 0 <= i < m } and the coset
/// representatives are g^0, ..., g^(kappa-1). A nonzero z lies in coset
/// log_g(z) mod kappa.
class SubgroupSpec {
 public:
  const FieldHandle& field() const noexcept { return ctx_; }
  std::uint32_t m() const noexcept { return m_; }
  std::uint32_t kappa() const noexcept { return kappa_; }

  /// Members a_i = g^(kappa*i), in log order.
  std::vector<FieldElem> elements() const;
  /// Packed values of the members, same order as elements().
  std::vector<std::uint32_t> element_values() const;
  std::vector<FieldElem> coset_reps() const;

 private:
  friend SubgroupSpec subgroup_of_order(const FieldHandle& ctx, std::uint64_t m);
  SubgroupSpec(FieldHandle ctx, std::uint32_t m, std::uint32_t kappa)
      : ctx_(std::move(ctx)), m_(m), kappa_(kappa) {}

  FieldHandle ctx_;
  std::uint32_t m_;
  std::uint32_t kappa_;
};

/// Throws NotADivisor unless m | p^r - 1.
SubgroupSpec subgroup_of_order(const FieldHandle& ctx, std::uint64_t m);

/// Coset index d with z in g^d A. Throws ZeroElement for z = 0.
std::uint32_t coset_of(const SubgroupSpec& spec, const FieldElem& z);

/// Either the pseudo-coset {0} or a multiplicative coset g^d A.
class CosetRef {
 public:
  static CosetRef zero() { return CosetRef(std::nullopt); }
  static CosetRef coset(std::uint32_t d) { return CosetRef(d); }

  bool is_zero() const noexcept { return !index_; }
  std::uint32_t index() const { return index_.value(); }

 private:
  explicit CosetRef(std::optional<std::uint32_t> index) : index_(index) {}
  std::optional<std::uint32_t> index_;
};

struct DifferenceSetResult {
  bool is_ds = false;
  std::optional<std::uint64_t> lambda;
};

/// O(m^2) census of ordered differences a_i - a_j, i != j.
DifferenceSetResult is_difference_set(const SubgroupSpec& spec);

/// |{ z in S : 1 + z in T }|. With S = {0} this counts 1 in T; with T = {0}
/// it counts -1 in S.
std::uint64_t translation_degree(const SubgroupSpec& spec, CosetRef from, CosetRef to);

struct MinusOneParity {
  bool in_A = false;
  /// True when -1 lies in coset kappa/2 (and not in A).
  bool half_kappa_coset = false;
  std::uint32_t coset = 0;
};

MinusOneParity parity_of_minus_one(const SubgroupSpec& spec);

}  // namespace gframe
