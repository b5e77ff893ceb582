#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace gframe {

/// Seeded generator for random baselines.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. Its seed is SplitMix64(seed, stream), so one user seed yields
/// independent reproducible streams. Bounded integers use rejection sampling
/// and normals use Box-Muller, both defined here rather than through the
/// implementation-defined <random> distributions.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform in [0, bound); bound > 0.
  std::uint64_t uniform_below(std::uint64_t bound);
  /// Uniform in [0, 1) with 53 random bits.
  double uniform01();
  double standard_normal();

  /// `count` distinct values from [0, population), in draw order
  /// (partial Fisher-Yates).
  std::vector<std::uint32_t> sample_without_replacement(std::uint32_t population,
                                                        std::uint32_t count);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

std::uint64_t splitmix64(std::uint64_t x);

inline constexpr const char* kRngName = "mt19937_64/splitmix64";

}  // namespace gframe
