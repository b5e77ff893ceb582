#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace gframe {

// Deterministic Miller-Rabin; exact for every 64-bit input.
bool is_prime(std::uint64_t n);

// Distinct prime factors in ascending order (trial division).
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

// All positive divisors in ascending order.
std::vector<std::uint64_t> divisors(std::uint64_t n);

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t mod);
std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod);

// base^exp, or nullopt if the result exceeds `limit`.
std::optional<std::uint64_t> checked_pow(std::uint64_t base, unsigned exp,
                                         std::uint64_t limit);

// If n = p^r with p prime and r >= 1, returns {p, r}.
struct PrimePower {
  std::uint64_t p;
  unsigned r;
};
std::optional<PrimePower> as_prime_power(std::uint64_t n);

}  // namespace gframe
