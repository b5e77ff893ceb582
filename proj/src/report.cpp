#include "gframe/report.hpp"

#include <algorithm>
#include <cmath>

#include "gframe/error.hpp"

namespace gframe {

namespace {

using nlohmann::ordered_json;

ordered_json optional_number(const std::optional<double>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

bool brute_wanted(const AnalysisOptions& options, std::uint32_t n) {
  switch (options.brute_force) {
    case BruteForceMode::On: return true;
    case BruteForceMode::Off: return false;
    case BruteForceMode::Auto: break;
  }
  return n <= options.auto_brute_max_cols;
}

bool is_equiangular(const Census& census) { return census.magnitudes.size() == 1; }

void fill_properties(CoherenceReport& rep, LogBase base) {
  rep.log_base = base;
  if (rep.n >= 2) rep.property_flags = coherence_properties(rep.mu, rep.nu, rep.n, rep.m_dim, base);
}

double mean_sq_from_census(const Census& census) {
  const auto total = census.total();
  if (total == 0) return 0.0;
  double sum = 0.0;
  for (const auto& v : census.values) sum += std::norm(v.value) * static_cast<double>(v.count);
  return sum / static_cast<double>(total);
}

}  // namespace

double round_reported(double x) {
  const double r = std::round(x * 1e12) / 1e12;
  return r == 0.0 ? 0.0 : r;
}

ordered_json provenance_to_json(const Provenance& prov) {
  ordered_json j;
  j["construction"] = prov.construction;
  j["p"] = prov.p;
  j["r"] = prov.r;
  j["m"] = prov.m;
  j["modulus"] = prov.modulus;
  j["generator"] = prov.generator;
  j["ordering"] = prov.ordering;
  j["seed"] = prov.seed ? ordered_json(*prov.seed) : ordered_json(nullptr);
  j["rng"] = prov.rng;
  return j;
}

ordered_json to_json(const CoherenceReport& rep) {
  ordered_json j;
  j["schema_version"] = kReportSchemaVersion;
  j["mode"] = rep.mode;
  j["n"] = rep.n;
  j["m"] = rep.m_dim;
  j["kappa"] = rep.kappa ? ordered_json(*rep.kappa) : ordered_json(nullptr);
  j["mu"] = rep.mu;
  j["mu_method"] = rep.mu_method;
  j["mu_bruteforce"] = optional_number(rep.mu_bruteforce);
  j["nu"] = rep.nu;
  j["nu_method"] = rep.nu_method;
  j["welch"] = rep.welch;
  j["bound_general"] = optional_number(rep.bound_general);
  j["bound_m_odd"] = optional_number(rep.bound_m_odd);
  j["bound_sqrt_kappa"] = optional_number(rep.bound_sqrt_kappa);
  j["bound_sl2"] = optional_number(rep.bound_sl2);
  j["tightness_residual"] = optional_number(rep.tightness_residual);
  j["gram_offdiag_mean_sq"] = optional_number(rep.gram_offdiag_mean_sq);
  j["equiangular"] = rep.equiangular;

  ordered_json values = ordered_json::array();
  for (const auto& v : rep.census.values) {
    values.push_back({{"re", round_reported(v.value.real())},
                      {"im", round_reported(v.value.imag())},
                      {"count", v.count}});
  }
  ordered_json mags = ordered_json::array();
  for (const auto& v : rep.census.magnitudes) {
    mags.push_back({{"abs", round_reported(v.value)}, {"count", v.count}});
  }
  j["distinct_value_count"] = rep.census.values.size();
  j["distinct_magnitude_count"] = rep.census.magnitudes.size();
  j["distinct_values"] = std::move(values);
  j["distinct_magnitudes"] = std::move(mags);

  const auto& f = rep.property_flags;
  j["property_flags"] = {{"log_base", to_string(rep.log_base)},
                         {"coherence_property", f.coherence_property},
                         {"strong_coherence_property", f.strong_coherence_property},
                         {"nu_leq_mu_over_sqrt_m", f.nu_leq_mu_over_sqrt_dim},
                         {"coherence_threshold", f.coherence_threshold},
                         {"strong_coherence_threshold", f.strong_coherence_threshold}};
  j["provenance"] = rep.provenance;
  return j;
}

CoherenceReport analyze_character_frame(const ExponentFrame& frame, const AnalysisOptions& options) {
  const std::uint32_t n = frame.cols();
  const std::uint32_t m = frame.rows();
  CoherenceReport rep;
  rep.mode = frame.provenance().construction;
  rep.n = n;
  rep.m_dim = m;
  rep.welch = welch_bound(n, m);
  rep.provenance = provenance_to_json(frame.provenance());

  if (const auto& sub = frame.subgroup()) {
    const auto sums = coset_sums(*sub);
    rep.kappa = sums.kappa;
    rep.mu_method = "coset-sums";
    for (const auto& c : sums.c) rep.mu = std::max(rep.mu, std::abs(c));
    rep.census = census_fast(sums, n, options.cluster_tol);
    rep.bound_general = bound_general_kappa(m, sums.kappa);
    if (sums.kappa % 2 == 0 && m % 2 == 1) rep.bound_m_odd = bound_m_odd(m, sums.kappa);
    rep.bound_sqrt_kappa = bound_sqrt_kappa(n, m, sums.kappa);
  } else {
    const auto ti = coherence_translation_invariant(frame, true, options.cluster_tol);
    rep.mu_method = "translation-invariant";
    rep.mu = ti.mu;
    rep.census = ti.census;
  }
  rep.gram_offdiag_mean_sq = mean_sq_from_census(rep.census);

  // Every row sum of the Gram matrix equals sum_{y != 0} C(y) = (n [0 in A] - m) / m.
  const auto zeros = static_cast<double>(
      std::count(frame.multipliers().begin(), frame.multipliers().end(), 0U));
  rep.nu = n > 1 ? std::abs(static_cast<double>(n) * zeros - m) / (static_cast<double>(m) * (n - 1.0))
                 : 0.0;
  rep.nu_method = "character-sum";
  rep.tightness_residual = tightness_residual_exact(frame);

  if (brute_wanted(options, n)) {
    BruteForceOptions bf;
    bf.census = false;
    const auto dense = materialize(frame, true);
    rep.mu_bruteforce = coherence_bruteforce(dense, bf).mu;
  }
  rep.equiangular = is_equiangular(rep.census);
  fill_properties(rep, options.log_base);
  return rep;
}

CoherenceReport analyze_dense_frame(const ComplexFrame& frame, const AnalysisOptions& options) {
  CoherenceReport rep;
  rep.mode = "dense";
  rep.n = frame.cols();
  rep.m_dim = frame.rows();
  rep.welch = welch_bound(rep.n, rep.m_dim);
  rep.provenance = provenance_to_json(frame.provenance);
  BruteForceOptions bf;
  bf.cluster_tol = options.cluster_tol;
  const auto res = coherence_bruteforce(frame, bf);
  rep.mu = res.mu;
  rep.mu_method = "bruteforce";
  rep.mu_bruteforce = res.mu;
  rep.census = res.census;
  rep.gram_offdiag_mean_sq = res.gram_offdiag_mean_sq;
  rep.nu = average_coherence(frame);
  rep.nu_method = "dense";
  rep.tightness_residual = tightness_residual(frame);
  rep.equiangular = is_equiangular(rep.census);
  fill_properties(rep, options.log_base);
  return rep;
}

CoherenceReport analyze_sl2(const Sl2Spec& spec, const AnalysisOptions& options) {
  CoherenceReport rep;
  rep.mode = to_string(spec.mode);
  rep.n = spec.n;
  rep.m_dim = spec.dim;
  rep.kappa = spec.kappa;
  const auto coh = sl2_coherence(spec);
  rep.mu = coh.mu;
  rep.mu_method = "character-table";
  rep.welch = welch_bound(spec.n, spec.dim);
  if (spec.mode == Sl2Mode::Induced) rep.bound_sl2 = sl2_induced_bound(spec.q, spec.m);
  if (sl2_census_fits(spec)) {
    rep.census = sl2_census(spec);
    rep.gram_offdiag_mean_sq = mean_sq_from_census(rep.census);
    double row_sum = 0.0;
    for (const auto& v : rep.census.values) row_sum += v.value.real() * static_cast<double>(v.count);
    row_sum /= static_cast<double>(spec.n);
    rep.nu = std::abs(row_sum) / (static_cast<double>(spec.n) - 1.0);
    rep.nu_method = "class-sums";
  } else {
    // Nontrivial irreducible characters sum to zero over the group and have
    // unit norm, which fixes both the row sums and the mean square.
    const double n = static_cast<double>(spec.n);
    rep.gram_offdiag_mean_sq = (n / static_cast<double>(spec.dim) - 1.0) / (n - 1.0);
    rep.nu = 1.0 / (n - 1.0);
    rep.nu_method = "orthogonality";
  }
  rep.equiangular = is_equiangular(rep.census);

  ordered_json prov;
  prov["construction"] = rep.mode;
  prov["q"] = spec.q;
  prov["m"] = spec.m;
  prov["p"] = spec.p;
  prov["kappa"] = spec.kappa;
  prov["a2m"] = spec.a2m;
  rep.provenance = std::move(prov);
  fill_properties(rep, options.log_base);
  return rep;
}

std::vector<HistogramBin> magnitude_histogram(const Census& census, std::uint32_t bins, double hi) {
  if (bins == 0) throw Error(ErrorKind::InvalidArgument, "histogram needs at least one bin");
  if (hi <= 0.0) {
    for (const auto& v : census.magnitudes) hi = std::max(hi, v.value);
    if (hi <= 0.0) hi = 1.0;
  }
  std::vector<HistogramBin> out(bins);
  const double width = hi / bins;
  for (std::uint32_t b = 0; b < bins; ++b) {
    out[b].lo = width * b;
    out[b].hi = b + 1 == bins ? hi : width * (b + 1);
  }
  for (const auto& v : census.magnitudes) {
    if (v.value > hi) continue;
    auto b = static_cast<std::uint32_t>(v.value / width);
    b = std::min(b, bins - 1);
    out[b].count += v.count;
  }
  return out;
}

}  // namespace gframe
