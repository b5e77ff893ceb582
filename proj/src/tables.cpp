#include "gframe/tables.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "gframe/error.hpp"
#include "gframe/frame_builder.hpp"
#include "gframe/number_theory.hpp"

namespace gframe {

namespace {

using nlohmann::ordered_json;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

std::uint64_t parse_u64(const std::string& s, const std::string& context) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos || s.size() > 18) {
    throw Error(ErrorKind::InvalidArgument, "bad integer '" + s + "' in " + context);
  }
  return std::stoull(s);
}

ordered_json opt(const std::optional<double>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); }

std::string cell(const std::optional<double>& v) { return v ? format6(*v) : std::string(); }

BoundsRow make_bounds_row(std::uint64_t n, std::uint64_t m, LogBase base) {
  BoundsRow row;
  row.n = n;
  row.m = m;
  row.m_requested = m;
  row.kappa = (n - 1) / m;
  row.welch = welch_bound(n, m);
  row.bound_general = bound_general_kappa(m, row.kappa);
  if (row.kappa % 2 == 0 && m % 2 == 1) row.bound_m_odd = bound_m_odd(m, row.kappa);
  const auto rf = random_fourier_bound(n, m, base);
  row.random_fourier_bound = rf.value;
  row.random_fourier_in_window = rf.in_window;
  const auto props = coherence_properties(0.0, 0.0, n, m, base);
  row.coherence_property_threshold = props.coherence_threshold;
  row.strong_property_threshold = props.strong_coherence_threshold;
  return row;
}

}  // namespace

std::string format6(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", x == 0.0 ? 0.0 : x);
  return buf;
}

std::string CompareCase::label() const {
  if (kind == Kind::Field) {
    return "field:" + std::to_string(p) + ":" + std::to_string(r) + ":" + std::to_string(m);
  }
  return std::string("sl2:") + std::to_string(q) + ":" + std::to_string(m) + ":" +
         (mode == Sl2Mode::Induced ? "induced" : "cuspidal");
}

CompareCase parse_case(const std::string& text) {
  const auto parts = split(text, ':');
  CompareCase c;
  if (parts.size() == 4 && parts[0] == "field") {
    c.kind = CompareCase::Kind::Field;
    c.p = parse_u64(parts[1], text);
    c.r = static_cast<unsigned>(parse_u64(parts[2], text));
    c.m = parse_u64(parts[3], text);
    return c;
  }
  if ((parts.size() == 3 || parts.size() == 4) && parts[0] == "sl2") {
    c.kind = CompareCase::Kind::Sl2;
    c.q = parse_u64(parts[1], text);
    c.m = parse_u64(parts[2], text);
    if (parts.size() == 4) {
      if (parts[3] == "induced") {
        c.mode = Sl2Mode::Induced;
      } else if (parts[3] == "cuspidal") {
        c.mode = Sl2Mode::Cuspidal;
      } else {
        throw Error(ErrorKind::InvalidArgument, "unknown SL2 mode '" + parts[3] + "'");
      }
    }
    return c;
  }
  throw Error(ErrorKind::InvalidArgument,
              "case must be field:P:R:M or sl2:Q:M[:induced|cuspidal], got '" + text + "'");
}

std::vector<CompareCase> table_preset(const std::string& name) {
  auto field = [](std::uint64_t p, unsigned r, std::uint64_t m) {
    CompareCase c;
    c.p = p;
    c.r = r;
    c.m = m;
    return c;
  };
  auto sl2 = [](std::uint64_t q, std::uint64_t m) {
    CompareCase c;
    c.kind = CompareCase::Kind::Sl2;
    c.q = q;
    c.m = m;
    return c;
  };
  if (name == "I") {
    return {field(2, 8, 51), field(2, 8, 85), field(2, 9, 73), field(2, 10, 341), field(2, 12, 455)};
  }
  if (name == "II") {
    return {field(3, 3, 13), field(3, 5, 121), field(3, 7, 1093), field(7, 3, 171), field(11, 3, 665)};
  }
  if (name == "IV") return {sl2(4, 1), sl2(8, 1), sl2(8, 3)};
  throw Error(ErrorKind::InvalidArgument, "unknown table preset '" + name + "' (expected I, II or IV)");
}

double median(std::vector<double> values) {
  if (values.empty()) throw Error(ErrorKind::InvalidArgument, "median of an empty list");
  std::sort(values.begin(), values.end());
  const std::size_t k = values.size() / 2;
  return values.size() % 2 ? values[k] : 0.5 * (values[k - 1] + values[k]);
}

TableRow compare_case(const CompareCase& c, const std::vector<std::uint64_t>& seeds) {
  TableRow row;
  row.label = c.label();
  row.seeds = seeds;
  if (c.kind == CompareCase::Kind::Field) {
    const auto frame = build_field_frame(c.p, c.r, c.m);
    const auto& sub = *frame.subgroup();
    const auto sums = coset_sums(sub);
    row.n = frame.cols();
    row.m_dim = frame.rows();
    row.kappa = sums.kappa;
    for (const auto& v : sums.c) row.group_mu = std::max(row.group_mu, std::abs(v));
    row.equiangular = census_fast(sums, row.n).magnitudes.size() == 1;
    row.bound_general = bound_general_kappa(c.m, sums.kappa);
    if (sums.kappa % 2 == 0 && c.m % 2 == 1) row.bound_m_odd = bound_m_odd(c.m, sums.kappa);
    row.bound_sqrt_kappa = bound_sqrt_kappa(row.n, row.m_dim, sums.kappa);
    row.random_kind = "random-rows";
    for (auto seed : seeds) {
      const auto rnd = build_random_exponent_frame(c.p, c.r, c.m, seed);
      row.random_mu.push_back(coherence_translation_invariant(rnd).mu);
    }
  } else {
    const auto spec = make_sl2_spec(c.q, c.m, c.mode);
    const auto coh = sl2_coherence(spec);
    row.n = spec.n;
    row.m_dim = spec.dim;
    row.kappa = spec.kappa;
    row.group_mu = coh.mu;
    row.equiangular = sl2_census(spec).magnitudes.size() == 1;
    if (c.mode == Sl2Mode::Induced) row.bound_sl2 = sl2_induced_bound(c.q, c.m);
    row.random_kind = "gaussian";
    BruteForceOptions bf;
    bf.census = false;
    bf.max_cols = static_cast<std::uint32_t>(std::max<std::uint64_t>(spec.n, bf.max_cols));
    for (auto seed : seeds) {
      const auto g = build_gaussian_frame(static_cast<std::uint32_t>(spec.dim),
                                          static_cast<std::uint32_t>(spec.n), seed);
      row.random_mu.push_back(coherence_bruteforce(g, bf).mu);
    }
  }
  row.welch = welch_bound(row.n, row.m_dim);
  row.random_median = median(row.random_mu);
  row.random_exceeds_group = std::all_of(row.random_mu.begin(), row.random_mu.end(),
                                         [&](double v) { return v > row.group_mu; });
  return row;
}

ordered_json table_to_json(const std::vector<TableRow>& rows) {
  ordered_json out;
  out["schema_version"] = kTableSchemaVersion;
  ordered_json arr = ordered_json::array();
  for (const auto& r : rows) {
    ordered_json j;
    j["label"] = r.label;
    j["n"] = r.n;
    j["m"] = r.m_dim;
    j["kappa"] = r.kappa ? ordered_json(*r.kappa) : ordered_json(nullptr);
    j["group_mu"] = r.group_mu;
    j["random_kind"] = r.random_kind;
    ordered_json per_seed = ordered_json::array();
    for (std::size_t i = 0; i < r.seeds.size(); ++i) {
      per_seed.push_back({{"seed", r.seeds[i]}, {"mu", r.random_mu[i]}});
    }
    j["random"] = std::move(per_seed);
    j["random_median"] = r.random_median;
    j["welch"] = r.welch;
    j["bound_general"] = opt(r.bound_general);
    j["bound_m_odd"] = opt(r.bound_m_odd);
    j["bound_sqrt_kappa"] = opt(r.bound_sqrt_kappa);
    j["bound_sl2"] = opt(r.bound_sl2);
    j["flags"] = {{"equiangular", r.equiangular}, {"random_exceeds_group", r.random_exceeds_group}};
    arr.push_back(std::move(j));
  }
  out["rows"] = std::move(arr);
  return out;
}

std::string table_to_csv(const std::vector<TableRow>& rows) {
  std::ostringstream out;
  out << "label,n,m,kappa,group_mu";
  const auto& seeds = rows.empty() ? std::vector<std::uint64_t>{} : rows.front().seeds;
  for (auto s : seeds) out << ",random_mu_seed" << s;
  out << ",random_median,welch,bound_general,bound_m_odd,bound_sqrt_kappa,bound_sl2,equiangular,"
         "random_exceeds_group\n";
  for (const auto& r : rows) {
    out << r.label << ',' << r.n << ',' << r.m_dim << ',' << (r.kappa ? std::to_string(*r.kappa) : "")
        << ',' << format6(r.group_mu);
    for (double v : r.random_mu) out << ',' << format6(v);
    out << ',' << format6(r.random_median) << ',' << format6(r.welch) << ',' << cell(r.bound_general)
        << ',' << cell(r.bound_m_odd) << ',' << cell(r.bound_sqrt_kappa) << ',' << cell(r.bound_sl2)
        << ',' << (r.equiangular ? "true" : "false") << ','
        << (r.random_exceeds_group ? "true" : "false") << '\n';
  }
  return out.str();
}

std::vector<BoundsRow> bounds_kappa_sweep(std::uint64_t kappa, std::uint64_t n_min, std::uint64_t n_max,
                                          LogBase base) {
  if (kappa == 0) throw Error(ErrorKind::InvalidArgument, "kappa must be >= 1");
  if (n_max > kMaxFieldSize) throw Error(ErrorKind::ResourceCap, "sweep is capped at 2^24");
  std::vector<BoundsRow> rows;
  for (std::uint64_t q = std::max<std::uint64_t>(n_min, 2); q <= n_max; ++q) {
    if ((q - 1) % kappa != 0 || !as_prime_power(q)) continue;
    rows.push_back(make_bounds_row(q, (q - 1) / kappa, base));
    rows.back().snap = "exact";
  }
  return rows;
}

std::uint64_t snap_to_divisor(std::uint64_t n, double target) {
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "snap needs n >= 2");
  std::uint64_t best = 1;
  double best_gap = std::abs(target - 1.0);
  for (auto d : divisors(n - 1)) {
    const double gap = std::abs(target - static_cast<double>(d));
    if (gap < best_gap) {
      best = d;
      best_gap = gap;
    }
  }
  return best;
}

std::vector<BoundsRow> bounds_power_regime(std::uint64_t n_min, std::uint64_t n_max, LogBase base) {
  if (n_max > kMaxFieldSize) throw Error(ErrorKind::ResourceCap, "sweep is capped at 2^24");
  std::vector<BoundsRow> rows;
  for (std::uint64_t n = std::max<std::uint64_t>(n_min, 3); n <= n_max; ++n) {
    if (!is_prime(n)) continue;
    const double target = std::pow(static_cast<double>(n), 0.8);
    const auto m = snap_to_divisor(n, target);
    auto row = make_bounds_row(n, m, base);
    row.m_requested = static_cast<std::uint64_t>(std::llround(target));
    row.snap = m == row.m_requested ? "exact" : "nearest-divisor";
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string bounds_to_csv(const std::vector<BoundsRow>& rows) {
  std::ostringstream out;
  out << "n,m,m_requested,kappa,snap,welch,bound_general,bound_m_odd,random_fourier_bound,"
         "random_fourier_in_window,coherence_property_threshold,strong_property_threshold\n";
  for (const auto& r : rows) {
    out << r.n << ',' << r.m << ',' << r.m_requested << ',' << r.kappa << ',' << r.snap << ','
        << format6(r.welch) << ',' << format6(r.bound_general) << ',' << cell(r.bound_m_odd) << ','
        << format6(r.random_fourier_bound) << ',' << (r.random_fourier_in_window ? "true" : "false")
        << ',' << format6(r.coherence_property_threshold) << ','
        << format6(r.strong_property_threshold) << '\n';
  }
  return out.str();
}

}  // namespace gframe
