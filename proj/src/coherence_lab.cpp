#include "gframe/coherence_lab.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "gframe/kernels.hpp"

namespace gframe {

namespace {

// Sums omega^e over a stream of residues e in Z/p.
class RootAccumulator {
 public:
  explicit RootAccumulator(std::uint32_t p) : p_(p) {
    if (p_ <= kHistogramLimit) {
      counts_.assign(p_, 0);
      roots_.reserve(p_);
      for (std::uint32_t e = 0; e < p_; ++e) roots_.push_back(unit_root(e, p_));
    }
  }

  void add(std::uint32_t e) {
    if (!counts_.empty()) {
      if (counts_[e]++ == 0) touched_.push_back(e);
    } else {
      direct_ += unit_root(e, p_);
    }
  }

  /// Returns the accumulated sum and resets.
  std::complex<double> take() {
    std::complex<double> out = direct_;
    if (!counts_.empty()) {
      std::sort(touched_.begin(), touched_.end());
      for (auto e : touched_) {
        out += static_cast<double>(counts_[e]) * roots_[e];
        counts_[e] = 0;
      }
      touched_.clear();
    }
    direct_ = {0.0, 0.0};
    return out;
  }

 private:
  static constexpr std::uint32_t kHistogramLimit = 1U << 16;
  std::uint32_t p_;
  std::vector<std::uint64_t> counts_;
  std::vector<std::complex<double>> roots_;
  std::vector<std::uint32_t> touched_;
  std::complex<double> direct_{0.0, 0.0};
};

void require_normalized(const ComplexFrame& frame) {
  if (!frame.is_normalized(1e-9)) {
    throw Error(ErrorKind::NotNormalized, "frame columns must have unit norm");
  }
}

struct ByReal {
  bool operator()(const DistinctValue& a, const DistinctValue& b) const {
    if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
    return a.value.imag() < b.value.imag();
  }
};

}  // namespace

std::uint64_t Census::total() const {
  std::uint64_t sum = 0;
  for (const auto& v : values) sum += v.count;
  return sum;
}

Census cluster_census(std::vector<DistinctValue> weighted, double tol) {
  Census out;
  std::sort(weighted.begin(), weighted.end(), ByReal{});

  // Bands: single linkage on the real part.
  std::size_t start = 0;
  std::vector<DistinctValue> band;
  while (start < weighted.size()) {
    std::size_t end = start + 1;
    while (end < weighted.size() &&
           weighted[end].value.real() - weighted[end - 1].value.real() <= tol) {
      ++end;
    }
    band.assign(weighted.begin() + static_cast<std::ptrdiff_t>(start),
                weighted.begin() + static_cast<std::ptrdiff_t>(end));
    std::sort(band.begin(), band.end(), [](const DistinctValue& a, const DistinctValue& b) {
      return a.value.imag() < b.value.imag();
    });
    std::size_t i = 0;
    while (i < band.size()) {
      std::size_t j = i + 1;
      while (j < band.size() && band[j].value.imag() - band[j - 1].value.imag() <= tol) ++j;
      std::complex<double> weighted_sum{0.0, 0.0};
      std::uint64_t count = 0;
      for (std::size_t k = i; k < j; ++k) {
        weighted_sum += static_cast<double>(band[k].count) * band[k].value;
        count += band[k].count;
      }
      out.values.push_back({weighted_sum / static_cast<double>(count), count});
      i = j;
    }
    start = end;
  }
  std::sort(out.values.begin(), out.values.end(), ByReal{});

  std::vector<DistinctMagnitude> mags;
  mags.reserve(out.values.size());
  for (const auto& v : out.values) mags.push_back({std::abs(v.value), v.count});
  std::sort(mags.begin(), mags.end(),
            [](const DistinctMagnitude& a, const DistinctMagnitude& b) { return a.value < b.value; });
  std::size_t i = 0;
  while (i < mags.size()) {
    std::size_t j = i + 1;
    while (j < mags.size() && mags[j].value - mags[j - 1].value <= tol) ++j;
    double weighted_sum = 0.0;
    std::uint64_t count = 0;
    for (std::size_t k = i; k < j; ++k) {
      weighted_sum += static_cast<double>(mags[k].count) * mags[k].value;
      count += mags[k].count;
    }
    out.magnitudes.push_back({weighted_sum / static_cast<double>(count), count});
    i = j;
  }
  return out;
}

double welch_bound(std::uint64_t n, std::uint64_t m_dim) {
  if (m_dim < 1 || n < m_dim) {
    throw Error(ErrorKind::BadShape, "Welch bound needs n >= m >= 1, got n=" + std::to_string(n) +
                                         " m=" + std::to_string(m_dim));
  }
  if (n == m_dim) return 0.0;
  const double nd = static_cast<double>(n);
  const double md = static_cast<double>(m_dim);
  return std::sqrt((nd - md) / (md * (nd - 1.0)));
}

BruteForceResult coherence_bruteforce(const ComplexFrame& frame, const BruteForceOptions& options) {
  const std::uint32_t n = frame.cols();
  const std::uint32_t m = frame.rows();
  if (n > options.max_cols) {
    throw Error(ErrorKind::ResourceCap, "brute force is capped at " +
                                            std::to_string(options.max_cols) + " columns");
  }
  require_normalized(frame);
  const auto& k = kernels::active();

  BruteForceResult out;
  std::vector<DistinctValue> upper;
  if (options.census) upper.reserve(std::size_t{n} * (n > 0 ? n - 1 : 0) / 2);
  double sum_sq = 0.0;
  std::complex<double> block[4];
  const double* b_re[4];
  const double* b_im[4];

  auto record = [&](std::complex<double> g) {
    const double mag = std::abs(g);
    out.mu = std::max(out.mu, mag);
    sum_sq += mag * mag;
    if (options.census) upper.push_back({g, 1});
  };

  for (std::uint32_t j = 0; j < n; ++j) {
    std::uint32_t c = j + 1;
    for (; c + 4 <= n; c += 4) {
      for (int t = 0; t < 4; ++t) {
        b_re[t] = frame.col_re(c + t);
        b_im[t] = frame.col_im(c + t);
      }
      k.dot_conj4(frame.col_re(j), frame.col_im(j), b_re, b_im, m, block);
      for (auto g : block) record(g);
    }
    for (; c < n; ++c) {
      record(k.dot_conj(frame.col_re(j), frame.col_im(j), frame.col_re(c), frame.col_im(c), m));
    }
  }
  if (n > 1) {
    out.gram_offdiag_mean_sq = 2.0 * sum_sq / (static_cast<double>(n) * (n - 1.0));
  }
  if (options.census && !upper.empty()) {
    // <f_k, f_j> = conj(<f_j, f_k>): cluster the upper triangle, then merge
    // its clusters with their conjugates.
    Census half = cluster_census(std::move(upper), options.cluster_tol);
    std::vector<DistinctValue> both;
    both.reserve(2 * half.values.size());
    for (const auto& v : half.values) {
      both.push_back(v);
      both.push_back({std::conj(v.value), v.count});
    }
    out.census = cluster_census(std::move(both), options.cluster_tol);
  }
  return out;
}

CosetSums coset_sums(const SubgroupSpec& spec) {
  const auto& f = *spec.field();
  CosetSums out;
  out.kappa = spec.kappa();
  out.m = spec.m();
  out.p = f.p();
  out.r = f.r();
  out.c.resize(out.kappa);
  RootAccumulator acc(f.p());
  for (std::uint32_t d = 0; d < out.kappa; ++d) {
    for (std::uint64_t i = 0; i < out.m; ++i) {
      acc.add(f.trace_of_power(i * out.kappa + d));
    }
    out.c[d] = acc.take() / static_cast<double>(out.m);
  }
  return out;
}

double coherence_fast(const SubgroupSpec& spec) {
  const auto sums = coset_sums(spec);
  double mu = 0.0;
  for (const auto& c : sums.c) mu = std::max(mu, std::abs(c));
  return mu;
}

Census census_fast(const CosetSums& sums, std::uint64_t n, double tol) {
  std::vector<DistinctValue> weighted;
  weighted.reserve(sums.c.size());
  for (const auto& c : sums.c) weighted.push_back({c, n * sums.m});
  return cluster_census(std::move(weighted), tol);
}

std::uint32_t frobenius_orbit_count(std::uint64_t p, std::uint32_t kappa) {
  std::vector<bool> seen(kappa, false);
  std::uint32_t orbits = 0;
  for (std::uint32_t d = 0; d < kappa; ++d) {
    if (seen[d]) continue;
    ++orbits;
    std::uint64_t cur = d;
    while (!seen[cur]) {
      seen[cur] = true;
      cur = cur * (p % kappa) % kappa;
    }
  }
  return orbits;
}

WVectorCheck w_vector_check(const CosetSums& sums) {
  const std::uint32_t kappa = sums.kappa;
  const double m = static_cast<double>(sums.m);
  const double beta = std::sqrt((1.0 / m) * (kappa + 1.0 / m));
  WVectorCheck out;
  out.w.assign(kappa, {0.0, 0.0});
  for (std::uint32_t i = 0; i < kappa; ++i) {
    for (std::uint32_t t = 0; t < kappa; ++t) {
      out.w[i] += unit_root(std::uint64_t{i} * t % kappa, kappa) * sums.c[t];
    }
  }
  out.max_violation = std::abs(out.w[0] + 1.0 / m);
  for (std::uint32_t i = 1; i < kappa; ++i) {
    out.max_violation = std::max(out.max_violation, std::abs(std::abs(out.w[i]) - beta));
  }
  return out;
}

double bound_general_kappa(std::uint64_t m, std::uint64_t kappa) {
  if (m < 1 || kappa < 1) throw Error(ErrorKind::InvalidArgument, "m and kappa must be >= 1");
  const double md = static_cast<double>(m);
  const double kd = static_cast<double>(kappa);
  return (1.0 / kd) * ((kd - 1.0) * std::sqrt((1.0 / md) * (kd + 1.0 / md)) + 1.0 / md);
}

double bound_m_odd(std::uint64_t m, std::uint64_t kappa) {
  if (kappa < 1 || kappa % 2 != 0) {
    throw Error(ErrorKind::KappaOddWithModdP,
                "odd-m bound needs even kappa, got " + std::to_string(kappa));
  }
  if (m % 2 == 0) throw Error(ErrorKind::InvalidArgument, "odd-m bound needs odd m");
  const double md = static_cast<double>(m);
  const double kd = static_cast<double>(kappa);
  const double beta = std::sqrt((1.0 / md) * (kd + 1.0 / md));
  const double a = 1.0 / md + (kd / 2.0 - 1.0) * beta;
  const double b = (kd / 2.0) * beta;
  return (1.0 / kd) * std::sqrt(a * a + b * b);
}

double bound_sqrt_kappa(std::uint64_t n, std::uint64_t m_dim, std::uint64_t kappa_count) {
  return std::sqrt(static_cast<double>(kappa_count)) * welch_bound(n, m_dim);
}

double bound_orbit_min(std::uint64_t group_size, std::uint64_t min_orbit_block, std::uint64_t n,
                       std::uint64_t m_dim) {
  if (min_orbit_block < 1 || group_size < 2) {
    throw Error(ErrorKind::InvalidArgument, "need |G| >= 2 and a positive orbit block");
  }
  return std::sqrt(static_cast<double>(group_size - 1) / static_cast<double>(min_orbit_block)) *
         welch_bound(n, m_dim);
}

double average_coherence(const ComplexFrame& frame) {
  require_normalized(frame);
  const std::uint32_t n = frame.cols();
  const std::uint32_t m = frame.rows();
  if (n < 2) return 0.0;
  // sum_{j != i} <f_i, f_j> = <f_i, S> - <f_i, f_i> with S the column sum.
  std::vector<double> s_re(m, 0.0);
  std::vector<double> s_im(m, 0.0);
  for (std::uint32_t j = 0; j < n; ++j) {
    const double* re = frame.col_re(j);
    const double* im = frame.col_im(j);
    for (std::uint32_t i = 0; i < m; ++i) {
      s_re[i] += re[i];
      s_im[i] += im[i];
    }
  }
  const auto& k = kernels::active();
  double worst = 0.0;
  for (std::uint32_t i = 0; i < n; ++i) {
    const auto with_sum = k.dot_conj(frame.col_re(i), frame.col_im(i), s_re.data(), s_im.data(), m);
    const auto self = k.dot_conj(frame.col_re(i), frame.col_im(i), frame.col_re(i), frame.col_im(i), m);
    worst = std::max(worst, std::abs(with_sum - self));
  }
  return worst / (static_cast<double>(n) - 1.0);
}

double log_in_base(double x, LogBase base) {
  switch (base) {
    case LogBase::Two: return std::log2(x);
    case LogBase::Ten: return std::log10(x);
    case LogBase::Natural: break;
  }
  return std::log(x);
}

const char* to_string(LogBase base) {
  switch (base) {
    case LogBase::Two: return "2";
    case LogBase::Ten: return "10";
    case LogBase::Natural: break;
  }
  return "e";
}

CoherenceProperties coherence_properties(double mu, double nu, std::uint64_t n,
                                         std::uint64_t m_dim, LogBase base) {
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "coherence properties need n >= 2");
  const double log_n = log_in_base(static_cast<double>(n), base);
  CoherenceProperties out;
  out.coherence_threshold = 0.1 / std::sqrt(2.0 * log_n);
  out.strong_coherence_threshold = 1.0 / (164.0 * log_n);
  out.nu_leq_mu_over_sqrt_dim = nu <= mu / std::sqrt(static_cast<double>(m_dim));
  out.coherence_property = mu <= out.coherence_threshold && out.nu_leq_mu_over_sqrt_dim;
  out.strong_coherence_property = mu <= out.strong_coherence_threshold && out.nu_leq_mu_over_sqrt_dim;
  return out;
}

RandomFourierBound random_fourier_bound(std::uint64_t n, std::uint64_t m_dim, LogBase base) {
  if (m_dim < 1 || n < m_dim) throw Error(ErrorKind::BadShape, "need n >= m >= 1");
  const double nd = static_cast<double>(n);
  const double md = static_cast<double>(m_dim);
  const double log_n = log_in_base(nd, base);
  RandomFourierBound out;
  out.value = std::sqrt(118.0 * (nd - md) * log_n / (md * nd));
  out.in_window = 16.0 * log_n <= md && md <= nd / 3.0;
  return out;
}

double tightness_residual(const ComplexFrame& frame) {
  const std::uint32_t m = frame.rows();
  const std::uint32_t n = frame.cols();
  // Row-major copy so each row is contiguous.
  std::vector<double> row_re(std::size_t{m} * n);
  std::vector<double> row_im(std::size_t{m} * n);
  for (std::uint32_t j = 0; j < n; ++j) {
    const double* re = frame.col_re(j);
    const double* im = frame.col_im(j);
    for (std::uint32_t i = 0; i < m; ++i) {
      row_re[std::size_t{i} * n + j] = re[i];
      row_im[std::size_t{i} * n + j] = im[i];
    }
  }
  const auto& k = kernels::active();
  const double target = static_cast<double>(n) / static_cast<double>(m);
  double worst = 0.0;
  for (std::uint32_t i = 0; i < m; ++i) {
    const double* ar = row_re.data() + std::size_t{i} * n;
    const double* ai = row_im.data() + std::size_t{i} * n;
    for (std::uint32_t c = i; c < m; ++c) {
      auto v = k.dot_conj(ar, ai, row_re.data() + std::size_t{c} * n,
                          row_im.data() + std::size_t{c} * n, n);
      if (c == i) v -= target;
      worst = std::max(worst, std::abs(v));
    }
  }
  return worst;
}

CharacterCoherence coherence_translation_invariant(const ExponentFrame& frame, bool census,
                                                   double tol) {
  const auto& f = *frame.field();
  const auto& mult = frame.multipliers();
  const std::uint32_t n = f.size();
  const double m = static_cast<double>(mult.size());
  RootAccumulator acc(f.p());
  CharacterCoherence out;
  std::vector<DistinctValue> values;
  if (census) values.reserve(n);
  double sum_sq = 0.0;
  for (std::uint32_t y = 1; y < n; ++y) {
    for (auto a : mult) acc.add(f.trace_value(f.mul_values(a, y)));
    const auto c = acc.take() / m;
    const double mag = std::abs(c);
    out.mu = std::max(out.mu, mag);
    sum_sq += mag * mag;
    if (census) values.push_back({c, n});
  }
  if (n > 1) out.gram_offdiag_mean_sq = sum_sq / (static_cast<double>(n) - 1.0);
  if (census) out.census = cluster_census(std::move(values), tol);
  return out;
}

double tightness_residual_exact(const ExponentFrame& frame) {
  const auto& f = *frame.field();
  const auto& mult = frame.multipliers();
  const std::uint32_t n = f.size();
  const double m = static_cast<double>(mult.size());
  RootAccumulator acc(f.p());
  std::vector<double> memo(n, -1.0);  // |sum_x omega^Tr(b x)| by b
  double worst = 0.0;
  for (std::size_t i = 0; i < mult.size(); ++i) {
    for (std::size_t k = i + 1; k < mult.size(); ++k) {
      const std::uint32_t b = f.sub_values(mult[i], mult[k]);
      if (b == 0) {
        worst = std::max(worst, static_cast<double>(n) / m);  // repeated row
        continue;
      }
      if (memo[b] < 0.0) {
        for (std::uint32_t x = 0; x < n; ++x) acc.add(f.trace_value(f.mul_values(b, x)));
        memo[b] = std::abs(acc.take());
      }
      worst = std::max(worst, memo[b] / m);
    }
  }
  return worst;
}

}  // namespace gframe
