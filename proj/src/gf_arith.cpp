#include "gframe/gf_arith.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <string>

#include "gframe/number_theory.hpp"

namespace gframe {

namespace detail {
namespace {

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  return static_cast<std::uint32_t>(powmod(a, p - 2, p));
}

// a mod m for monic or non-monic m (m nonzero after trimming).
Poly poly_mod(Poly a, Poly m, std::uint32_t p) {
  trim(a);
  trim(m);
  const std::size_t dm = m.size() - 1;
  const std::uint64_t lead_inv = inv_mod(m.back(), p);
  while (a.size() >= m.size()) {
    const std::uint64_t factor = a.back() * lead_inv % p;
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t k = 0; k <= dm; ++k) {
      const std::uint64_t sub = factor * m[k] % p;
      a[shift + k] = static_cast<std::uint32_t>((a[shift + k] + p - sub) % p);
    }
    trim(a);
  }
  return a;
}

Poly poly_gcd(Poly a, Poly b, std::uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

}  // namespace

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& modulus, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  std::vector<std::uint64_t> prod(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      prod[i + j] = (prod[i + j] + std::uint64_t{a[i]} * b[j]) % p;
    }
  }
  Poly out(prod.begin(), prod.end());
  return poly_mod(std::move(out), modulus, p);
}

Poly poly_powmod(const Poly& base, std::uint64_t e, const Poly& modulus, std::uint32_t p) {
  Poly result = poly_mod(Poly{1}, modulus, p);
  Poly b = poly_mod(base, modulus, p);
  while (e > 0) {
    if (e & 1U) result = poly_mulmod(result, b, modulus, p);
    e >>= 1U;
    if (e > 0) b = poly_mulmod(b, b, modulus, p);
  }
  return result;
}

// Rabin's test: f | t^(p^r) - t and gcd(t^(p^(r/q)) - t, f) = 1 for q | r.
bool poly_is_irreducible(const Poly& monic, std::uint32_t p) {
  const unsigned r = static_cast<unsigned>(monic.size() - 1);
  if (r == 1) return true;
  if (monic[0] == 0) return false;

  auto frobenius_power = [&](unsigned k) {
    Poly x{0, 1};
    for (unsigned i = 0; i < k; ++i) x = poly_powmod(x, p, monic, p);
    return x;
  };
  auto minus_t = [&](Poly x) {
    x.resize(std::max<std::size_t>(x.size(), 2), 0);
    x[1] = (x[1] + p - 1) % p;
    trim(x);
    return x;
  };

  if (!minus_t(frobenius_power(r)).empty()) return false;
  for (auto q : prime_factors(r)) {
    Poly g = poly_gcd(monic, minus_t(frobenius_power(r / static_cast<unsigned>(q))), p);
    if (g.size() != 1) return false;
  }
  return true;
}

}  // namespace detail

namespace {

std::atomic<std::uint64_t> next_ctx_id{1};

detail::Poly unpack(std::uint64_t value, std::uint32_t p, unsigned r) {
  detail::Poly out(r, 0);
  for (unsigned k = 0; k < r; ++k) {
    out[k] = static_cast<std::uint32_t>(value % p);
    value /= p;
  }
  return out;
}

std::uint32_t pack(const detail::Poly& coeffs, std::uint32_t p) {
  std::uint64_t v = 0;
  for (std::size_t k = coeffs.size(); k-- > 0;) v = v * p + coeffs[k];
  return static_cast<std::uint32_t>(v);
}

// x * t mod f, in place; f monic of degree r = x.size().
void times_t(detail::Poly& x, const detail::Poly& f, std::uint32_t p) {
  const unsigned r = static_cast<unsigned>(x.size());
  const std::uint64_t top = x[r - 1];
  for (unsigned k = r - 1; k > 0; --k) x[k] = x[k - 1];
  x[0] = 0;
  if (top == 0) return;
  for (unsigned k = 0; k < r; ++k) {
    x[k] = static_cast<std::uint32_t>((x[k] + p - top * f[k] % p) % p);
  }
}

}  // namespace

FieldHandle build_field(std::uint64_t p, unsigned r) {
  if (!is_prime(p)) throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
  if (r < 1) throw Error(ErrorKind::InvalidArgument, "extension degree must be >= 1");
  const auto size = checked_pow(p, r, kMaxFieldSize);
  if (!size) {
    throw Error(ErrorKind::DegreeTooLarge,
                std::to_string(p) + "^" + std::to_string(r) + " exceeds 2^24");
  }

  std::shared_ptr<FieldCtx> ctx(new FieldCtx());
  ctx->p_ = static_cast<std::uint32_t>(p);
  ctx->r_ = r;
  ctx->n_ = static_cast<std::uint32_t>(*size);
  ctx->id_ = next_ctx_id.fetch_add(1);
  const std::uint32_t pp = ctx->p_;
  const std::uint32_t n = ctx->n_;

  // Modulus: smallest monic irreducible under the packed-integer order.
  detail::Poly modulus;
  if (r == 1) {
    modulus = {0, 1};
  } else {
    for (std::uint64_t low = 0; low < n; ++low) {
      detail::Poly candidate = unpack(low, pp, r);
      candidate.push_back(1);
      if (detail::poly_is_irreducible(candidate, pp)) {
        modulus = std::move(candidate);
        break;
      }
    }
    if (modulus.empty()) throw Error(ErrorKind::InvariantViolation, "no irreducible found");
  }
  ctx->modulus_ = modulus;

  // Generator: smallest element whose order is exactly n - 1.
  const std::uint64_t order = n - 1;
  const auto order_primes = prime_factors(order);
  detail::Poly generator;
  for (std::uint32_t v = 1; v < n; ++v) {
    detail::Poly g = unpack(v, pp, r);
    bool primitive = true;
    for (auto q : order_primes) {
      detail::Poly t = detail::poly_powmod(g, order / q, modulus, pp);
      if (t.size() == 1 && t[0] == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      generator = std::move(g);
      break;
    }
  }
  if (generator.empty()) throw Error(ErrorKind::InvariantViolation, "no generator found");

  // exp/log tables by repeated multiplication with the generator.
  ctx->exp_.resize(order);
  ctx->log_.assign(n, 0);
  if (r == 1) {
    const std::uint64_t g = generator[0];
    std::uint64_t cur = 1;
    for (std::uint64_t i = 0; i < order; ++i) {
      ctx->exp_[i] = static_cast<std::uint32_t>(cur);
      cur = cur * g % pp;
    }
  } else {
    detail::Poly cur(r, 0);
    cur[0] = 1;
    detail::Poly acc(r);
    detail::Poly shifted(r);
    for (std::uint64_t i = 0; i < order; ++i) {
      ctx->exp_[i] = pack(cur, pp);
      std::fill(acc.begin(), acc.end(), 0);
      shifted = cur;
      for (unsigned k = 0; k < r; ++k) {
        if (generator[k] != 0) {
          for (unsigned j = 0; j < r; ++j) {
            acc[j] = static_cast<std::uint32_t>(
                (acc[j] + std::uint64_t{generator[k]} * shifted[j]) % pp);
          }
        }
        if (k + 1 < r) times_t(shifted, modulus, pp);
      }
      std::swap(cur, acc);
    }
  }
  std::vector<bool> seen(n, false);
  for (std::uint64_t i = 0; i < order; ++i) {
    const std::uint32_t v = ctx->exp_[i];
    if (v == 0 || seen[v]) throw Error(ErrorKind::InvariantViolation, "generator order check failed");
    seen[v] = true;
    ctx->log_[v] = static_cast<std::uint32_t>(i);
  }

  // Trace is Z/p-linear: Tr(x) = sum_k x_k Tr(t^k).
  std::vector<std::uint32_t> basis_trace(r);
  for (unsigned k = 0; k < r; ++k) {
    detail::Poly tk(r, 0);
    tk[k] = 1;
    detail::Poly conj = tk;
    std::vector<std::uint64_t> sum(r, 0);
    for (unsigned j = 0; j < r; ++j) {
      for (std::size_t c = 0; c < conj.size(); ++c) sum[c] = (sum[c] + conj[c]) % pp;
      conj = detail::poly_powmod(conj, pp, modulus, pp);
      conj.resize(r, 0);
    }
    for (unsigned c = 1; c < r; ++c) {
      if (sum[c] != 0) throw Error(ErrorKind::InvariantViolation, "trace not in prime field");
    }
    basis_trace[k] = static_cast<std::uint32_t>(sum[0]);
  }
  ctx->trace_.resize(n);
  if (pp == 2) {
    std::uint32_t mask = 0;
    for (unsigned k = 0; k < r; ++k) mask |= basis_trace[k] << k;
    for (std::uint32_t v = 0; v < n; ++v) {
      ctx->trace_[v] = static_cast<std::uint32_t>(std::popcount(v & mask) & 1);
    }
  } else {
    for (std::uint32_t v = 0; v < n; ++v) {
      std::uint64_t rest = v;
      std::uint64_t t = 0;
      for (unsigned k = 0; k < r; ++k) {
        t += (rest % pp) * basis_trace[k];
        rest /= pp;
      }
      ctx->trace_[v] = static_cast<std::uint32_t>(t % pp);
    }
  }
  return ctx;
}

void FieldCtx::check(const FieldElem& x) const {
  if (x.ctx_id() != id_) {
    throw Error(ErrorKind::ContextMismatch, "element belongs to a different field context");
  }
}

FieldElem FieldCtx::element(std::uint32_t value) const {
  if (value >= n_) throw Error(ErrorKind::InvalidArgument, "element value out of range");
  return FieldElem(value, id_);
}

FieldElem FieldCtx::from_coeffs(const std::vector<std::uint32_t>& coeffs) const {
  if (coeffs.size() != r_) throw Error(ErrorKind::InvalidArgument, "expected r coefficients");
  for (auto c : coeffs) {
    if (c >= p_) throw Error(ErrorKind::InvalidArgument, "coefficient out of range");
  }
  return FieldElem(pack(coeffs, p_), id_);
}

std::vector<std::uint32_t> FieldCtx::coeffs(const FieldElem& x) const {
  check(x);
  return unpack(x.value(), p_, r_);
}

std::uint32_t FieldCtx::add_values(std::uint32_t a, std::uint32_t b) const noexcept {
  if (p_ == 2) return a ^ b;
  if (r_ == 1) return (a + b) % p_;
  std::uint32_t out = 0;
  std::uint32_t scale = 1;
  for (unsigned k = 0; k < r_; ++k) {
    out += ((a % p_ + b % p_) % p_) * scale;
    a /= p_;
    b /= p_;
    scale *= p_;
  }
  return out;
}

std::uint32_t FieldCtx::sub_values(std::uint32_t a, std::uint32_t b) const noexcept {
  if (p_ == 2) return a ^ b;
  if (r_ == 1) return (a + p_ - b) % p_;
  std::uint32_t out = 0;
  std::uint32_t scale = 1;
  for (unsigned k = 0; k < r_; ++k) {
    out += ((a % p_ + p_ - b % p_) % p_) * scale;
    a /= p_;
    b /= p_;
    scale *= p_;
  }
  return out;
}

std::uint32_t FieldCtx::mul_values(std::uint32_t a, std::uint32_t b) const noexcept {
  if (a == 0 || b == 0) return 0;
  const std::uint64_t s = std::uint64_t{log_[a]} + log_[b];
  return exp_[s % (n_ - 1)];
}

FieldElem FieldCtx::add(const FieldElem& a, const FieldElem& b) const {
  check(a);
  check(b);
  return FieldElem(add_values(a.value(), b.value()), id_);
}

FieldElem FieldCtx::sub(const FieldElem& a, const FieldElem& b) const {
  check(a);
  check(b);
  return FieldElem(sub_values(a.value(), b.value()), id_);
}

FieldElem FieldCtx::neg(const FieldElem& a) const {
  check(a);
  return FieldElem(sub_values(0, a.value()), id_);
}

FieldElem FieldCtx::mul(const FieldElem& a, const FieldElem& b) const {
  check(a);
  check(b);
  return FieldElem(mul_values(a.value(), b.value()), id_);
}

FieldElem FieldCtx::inv(const FieldElem& a) const {
  check(a);
  if (a.is_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
  const std::uint32_t order = n_ - 1;
  return FieldElem(exp_[(order - log_[a.value()]) % order], id_);
}

FieldElem FieldCtx::pow(const FieldElem& a, std::uint64_t e) const {
  check(a);
  if (e == 0) return one();
  if (a.is_zero()) return zero();
  const std::uint64_t order = n_ - 1;
  const std::uint64_t l = log_[a.value()];
  return FieldElem(exp_[mulmod(l, e % order, order)], id_);
}

std::uint32_t FieldCtx::trace(const FieldElem& x) const {
  check(x);
  return trace_[x.value()];
}

std::uint32_t FieldCtx::log(const FieldElem& x) const {
  check(x);
  if (x.is_zero()) throw Error(ErrorKind::ZeroElement, "log of zero");
  return log_[x.value()];
}

FieldElem FieldCtx::exp(std::uint64_t i) const { return FieldElem(exp_[i % (n_ - 1)], id_); }

}  // namespace gframe
