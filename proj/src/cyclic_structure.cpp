#include "gframe/cyclic_structure.hpp"

#include <string>

namespace gframe {

SubgroupSpec subgroup_of_order(const FieldHandle& ctx, std::uint64_t m) {
  const std::uint64_t order = ctx->size() - 1;
  if (m == 0 || order % m != 0) {
    throw Error(ErrorKind::NotADivisor,
                std::to_string(m) + " does not divide " + std::to_string(order));
  }
  return SubgroupSpec(ctx, static_cast<std::uint32_t>(m), static_cast<std::uint32_t>(order / m));
}

std::vector<FieldElem> SubgroupSpec::elements() const {
  std::vector<FieldElem> out;
  out.reserve(m_);
  for (std::uint64_t i = 0; i < m_; ++i) out.push_back(ctx_->exp(i * kappa_));
  return out;
}

std::vector<std::uint32_t> SubgroupSpec::element_values() const {
  std::vector<std::uint32_t> out;
  out.reserve(m_);
  for (std::uint64_t i = 0; i < m_; ++i) out.push_back(ctx_->exp_value(i * kappa_));
  return out;
}

std::vector<FieldElem> SubgroupSpec::coset_reps() const {
  std::vector<FieldElem> out;
  out.reserve(kappa_);
  for (std::uint64_t d = 0; d < kappa_; ++d) out.push_back(ctx_->exp(d));
  return out;
}

std::uint32_t coset_of(const SubgroupSpec& spec, const FieldElem& z) {
  if (z.is_zero() && z.ctx_id() == spec.field()->id()) {
    throw Error(ErrorKind::ZeroElement, "zero lies in no multiplicative coset");
  }
  return spec.field()->log(z) % spec.kappa();
}

DifferenceSetResult is_difference_set(const SubgroupSpec& spec) {
  const auto& f = *spec.field();
  const auto members = spec.element_values();
  std::vector<std::uint64_t> census(f.size(), 0);
  for (auto a : members) {
    for (auto b : members) {
      if (a != b) ++census[f.sub_values(a, b)];
    }
  }
  DifferenceSetResult out;
  const std::uint64_t lambda = f.size() > 1 ? census[1] : 0;
  for (std::uint32_t v = 1; v < f.size(); ++v) {
    if (census[v] != lambda) return out;
  }
  out.is_ds = true;
  out.lambda = lambda;
  return out;
}

std::uint64_t translation_degree(const SubgroupSpec& spec, CosetRef from, CosetRef to) {
  const auto& f = *spec.field();
  const std::uint32_t kappa = spec.kappa();
  if ((!from.is_zero() && from.index() >= kappa) || (!to.is_zero() && to.index() >= kappa)) {
    throw Error(ErrorKind::InvalidArgument, "coset index out of range");
  }
  auto in_target = [&](std::uint32_t value) {
    if (to.is_zero()) return value == 0;
    return value != 0 && f.log_value(value) % kappa == to.index();
  };
  if (from.is_zero()) return in_target(1) ? 1 : 0;

  std::uint64_t count = 0;
  for (std::uint64_t i = 0; i < spec.m(); ++i) {
    const std::uint32_t z = f.exp_value(i * kappa + from.index());
    if (in_target(f.add_values(1, z))) ++count;
  }
  return count;
}

MinusOneParity parity_of_minus_one(const SubgroupSpec& spec) {
  const auto& f = *spec.field();
  const std::uint32_t d = coset_of(spec, f.neg(f.one()));
  MinusOneParity out;
  out.coset = d;
  out.in_A = (d == 0);
  out.half_kappa_coset = !out.in_A && spec.kappa() % 2 == 0 && d == spec.kappa() / 2;
  return out;
}

}  // namespace gframe
