#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "gframe/error.hpp"

/// Exact arithmetic in GF(p^r).
///
/// Elements use the polynomial basis {1, t, ..., t^(r-1)} modulo a monic
/// irreducible of degree r. An element is packed into the base-p integer
/// sum c_k p^k of its coefficient vector; this integer is also the element
/// ordering used for modulus and generator selection. Multiplication, inverse
/// and powers go through discrete-log tables built once per field.
namespace gframe {

/// Upper limit on p^r.
inline constexpr std::uint64_t kMaxFieldSize = std::uint64_t{1} << 24;

class FieldCtx;

/// Field element tagged with the id of the context that created it.
class FieldElem {
 public:
  FieldElem() = default;

  std::uint32_t value() const noexcept { return value_; }
  std::uint64_t ctx_id() const noexcept { return ctx_id_; }
  bool is_zero() const noexcept { return value_ == 0; }

  friend bool operator==(const FieldElem&, const FieldElem&) = default;

 private:
  friend class FieldCtx;
  FieldElem(std::uint32_t value, std::uint64_t ctx_id)
      : value_(value), ctx_id_(ctx_id) {}

  std::uint32_t value_ = 0;
  std::uint64_t ctx_id_ = 0;
};

class FieldCtx {
 public:
  std::uint32_t p() const noexcept { return p_; }
  unsigned r() const noexcept { return r_; }
  std::uint32_t size() const noexcept { return n_; }
  std::uint64_t id() const noexcept { return id_; }

  /// Monic modulus, coefficients lowest degree first (length r + 1).
  const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }
  FieldElem generator() const { return FieldElem(exp_[1 % (n_ - 1)], id_); }

  FieldElem zero() const { return FieldElem(0, id_); }
  FieldElem one() const { return FieldElem(1, id_); }

  /// Element from its packed base-p value; throws InvalidArgument if >= p^r.
  FieldElem element(std::uint32_t value) const;
  FieldElem from_coeffs(const std::vector<std::uint32_t>& coeffs) const;
  std::vector<std::uint32_t> coeffs(const FieldElem& x) const;

  FieldElem add(const FieldElem& a, const FieldElem& b) const;
  FieldElem sub(const FieldElem& a, const FieldElem& b) const;
  FieldElem neg(const FieldElem& a) const;
  FieldElem mul(const FieldElem& a, const FieldElem& b) const;
  FieldElem inv(const FieldElem& a) const;
  FieldElem pow(const FieldElem& a, std::uint64_t e) const;

  /// Tr(x) = x + x^p + ... + x^(p^(r-1)), an element of Z/p.
  std::uint32_t trace(const FieldElem& x) const;

  /// Discrete log base the generator; throws ZeroElement for 0.
  std::uint32_t log(const FieldElem& x) const;
  /// generator^(i mod (p^r - 1)).
  FieldElem exp(std::uint64_t i) const;

  // Raw table access for hot loops. Indices are packed values / log indices.
  std::uint32_t exp_value(std::uint64_t i) const noexcept { return exp_[i % (n_ - 1)]; }
  std::uint32_t log_value(std::uint32_t value) const noexcept { return log_[value]; }
  std::uint32_t trace_value(std::uint32_t value) const noexcept { return trace_[value]; }
  /// Tr(generator^i).
  std::uint32_t trace_of_power(std::uint64_t i) const noexcept {
    return trace_[exp_[i % (n_ - 1)]];
  }
  std::uint32_t add_values(std::uint32_t a, std::uint32_t b) const noexcept;
  std::uint32_t sub_values(std::uint32_t a, std::uint32_t b) const noexcept;
  std::uint32_t mul_values(std::uint32_t a, std::uint32_t b) const noexcept;

 private:
  friend std::shared_ptr<const FieldCtx> build_field(std::uint64_t p, unsigned r);
  FieldCtx() = default;

  void check(const FieldElem& x) const;

  std::uint32_t p_ = 0;
  unsigned r_ = 0;
  std::uint32_t n_ = 0;
  std::uint64_t id_ = 0;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint32_t> exp_;    // size n - 1
  std::vector<std::uint32_t> log_;    // size n; log_[0] unused
  std::vector<std::uint32_t> trace_;  // size n
};

using FieldHandle = std::shared_ptr<const FieldCtx>;

/// Builds GF(p^r) with the smallest monic irreducible modulus and the
/// smallest primitive element. Throws NotPrime, DegreeTooLarge.
FieldHandle build_field(std::uint64_t p, unsigned r);

namespace detail {

// Dense polynomial arithmetic over Z/p, coefficients lowest degree first.
// Used for field construction and as the reference for table-driven paths.
using Poly = std::vector<std::uint32_t>;

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& modulus, std::uint32_t p);
Poly poly_powmod(const Poly& base, std::uint64_t e, const Poly& modulus, std::uint32_t p);
bool poly_is_irreducible(const Poly& monic, std::uint32_t p);

}  // namespace detail

}  // namespace gframe
