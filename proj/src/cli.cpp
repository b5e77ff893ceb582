#include "gframe/cli.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "gframe/frame_builder.hpp"
#include "gframe/frame_io.hpp"
#include "gframe/report.hpp"
#include "gframe/tables.hpp"

namespace gframe::cli {

namespace {

using nlohmann::ordered_json;

struct ConstructionOpts {
  std::vector<std::uint64_t> field;
  std::vector<std::uint64_t> harmonic;
  std::vector<std::uint64_t> random;
  unsigned hadamard = 0;
  unsigned random_hadamard = 0;
  std::uint64_t m = 0;
  std::uint64_t seed = 1;
  bool bernoulli = false;

  CLI::Option* hadamard_opt = nullptr;
  CLI::Option* random_hadamard_opt = nullptr;
  CLI::Option* m_opt = nullptr;
};

struct Construction {
  std::string kind;
  std::uint64_t p = 0;
  unsigned r = 0;
  std::uint64_t m = 0;
  std::optional<std::uint64_t> seed;
  bool bernoulli = false;
};

void add_construction_options(CLI::App* app, ConstructionOpts& o) {
  app->add_option("--field", o.field, "Subgroup frame over GF(P^R); needs --m")->expected(2);
  app->add_option("--harmonic", o.harmonic, "Harmonic frame over Z/N (N prime) with M rows")->expected(2);
  o.hadamard_opt = app->add_option("--hadamard", o.hadamard, "Group Hadamard frame over GF(2^R); needs --m");
  app->add_option("--random", o.random, "Random rows of GF(P^R); needs --m and --seed")->expected(2);
  o.random_hadamard_opt =
      app->add_option("--random-hadamard", o.random_hadamard, "Random rows of the 2^R Hadamard matrix");
  o.m_opt = app->add_option("--m", o.m, "Number of rows");
  app->add_option("--seed", o.seed, "Seed for random constructions")->capture_default_str();
  app->add_flag("--bernoulli", o.bernoulli, "Keep each row independently with probability m/n");
}

std::optional<Construction> resolve_construction(const ConstructionOpts& o) {
  std::vector<Construction> chosen;
  auto need_m = [&](const char* what) {
    if (o.m_opt->count() == 0) throw Error(ErrorKind::InvalidArgument, std::string(what) + " needs --m");
  };
  if (!o.field.empty()) {
    need_m("--field");
    chosen.push_back({"field", o.field[0], static_cast<unsigned>(o.field[1]), o.m, std::nullopt, false});
  }
  if (!o.harmonic.empty()) {
    chosen.push_back({"harmonic", o.harmonic[0], 1, o.harmonic[1], std::nullopt, false});
  }
  if (o.hadamard_opt->count()) {
    need_m("--hadamard");
    chosen.push_back({"hadamard", 2, o.hadamard, o.m, std::nullopt, false});
  }
  if (!o.random.empty()) {
    need_m("--random");
    chosen.push_back({"random", o.random[0], static_cast<unsigned>(o.random[1]), o.m, o.seed, o.bernoulli});
  }
  if (o.random_hadamard_opt->count()) {
    need_m("--random-hadamard");
    chosen.push_back({"random-hadamard", 2, o.random_hadamard, o.m, o.seed, o.bernoulli});
  }
  if (chosen.size() > 1) throw Error(ErrorKind::InvalidArgument, "choose exactly one construction");
  if (chosen.empty()) return std::nullopt;
  if (chosen[0].bernoulli && !chosen[0].seed) {
    throw Error(ErrorKind::InvalidArgument, "--bernoulli applies to random constructions only");
  }
  if (chosen[0].r == 0 || chosen[0].r > 64) {
    throw Error(ErrorKind::InvalidArgument, "degree R must lie in [1, 64]");
  }
  return chosen[0];
}

ordered_json to_json(const Construction& c) {
  ordered_json j;
  j["kind"] = c.kind;
  j["p"] = c.p;
  j["r"] = c.r;
  j["m"] = c.m;
  j["seed"] = c.seed ? ordered_json(*c.seed) : ordered_json(nullptr);
  j["sampling"] = c.seed ? (c.bernoulli ? "bernoulli" : "exact-m-without-replacement") : "none";
  return j;
}

ExponentFrame build(const Construction& c) {
  if (c.kind == "field") return build_field_frame(c.p, c.r, c.m);
  if (c.kind == "harmonic") return build_harmonic_frame(c.p, c.m);
  if (c.kind == "hadamard") return build_hadamard_frame(c.r, c.m).exponent_frame();
  if (c.bernoulli) return build_bernoulli_exponent_frame(c.p, c.r, c.m, *c.seed);
  return build_random_exponent_frame(c.p, c.r, c.m, *c.seed);
}

LogBase parse_log_base(const std::string& s) {
  if (s == "2") return LogBase::Two;
  if (s == "10") return LogBase::Ten;
  return LogBase::Natural;
}

BruteForceMode parse_brute(const std::string& s) {
  if (s == "on") return BruteForceMode::On;
  if (s == "off") return BruteForceMode::Off;
  return BruteForceMode::Auto;
}

void emit(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
  } else {
    write_file_atomic(path, content);
  }
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

ordered_json envelope(const std::string& command, ordered_json config) {
  ordered_json j;
  j["schema_version"] = kReportSchemaVersion;
  j["command"] = command;
  j["config"] = std::move(config);
  return j;
}

// ---- construct ----

struct ConstructCmd {
  ConstructionOpts build;
  std::string out;
  std::string provenance_out;
  std::string format = "auto";
  bool no_normalize = false;
};

int run_construct(const ConstructCmd& cmd, std::ostream& out) {
  const auto c = resolve_construction(cmd.build);
  if (!c) throw Error(ErrorKind::InvalidArgument, "construct needs a construction option");
  std::string format = cmd.format;
  if (format == "auto") format = c->p == 2 ? "sign" : "exponent";
  if (format == "sign" && c->p != 2) {
    throw Error(ErrorKind::InvalidArgument, "sign format requires p = 2");
  }
  ordered_json config;
  config["construction"] = to_json(*c);
  config["format"] = format;
  config["normalize"] = !cmd.no_normalize;

  const auto frame = build(*c);
  std::ostringstream body;
  if (format == "sign") {
    write_sign_csv(body, SignMatrix(frame));
  } else if (format == "exponent") {
    write_exponent_csv(body, frame);
  } else {
    auto dense = materialize(frame, !cmd.no_normalize);
    dense.provenance = frame.provenance();
    write_complex_csv(body, dense);
  }
  emit(cmd.out, body.str(), out);

  std::string prov_path = cmd.provenance_out;
  if (prov_path.empty() && !cmd.out.empty() && cmd.out != "-") prov_path = cmd.out + ".json";
  if (!prov_path.empty()) {
    auto j = envelope("construct", std::move(config));
    j["shape"] = {{"rows", frame.rows()}, {"cols", frame.cols()}};
    j["provenance"] = provenance_to_json(frame.provenance());
    write_file_atomic(prov_path, dump(j));
  }
  return kExitOk;
}

// ---- analyze ----

struct AnalyzeCmd {
  ConstructionOpts build;
  std::string input;
  std::vector<std::uint64_t> sl2;
  std::string mode = "induced";
  std::string report;
  std::string histogram;
  std::uint32_t bins = 200;
  double hist_max = 0.0;
  std::string brute = "auto";
  std::string log_base = "e";
  double tol = kClusterTol;
  bool no_normalize = false;
};

int run_analyze(const AnalyzeCmd& cmd, std::ostream& out) {
  const auto c = resolve_construction(cmd.build);
  const int sources = (c ? 1 : 0) + (cmd.input.empty() ? 0 : 1) + (cmd.sl2.empty() ? 0 : 1);
  if (sources != 1) {
    throw Error(ErrorKind::InvalidArgument,
                "analyze needs exactly one of a construction, --input or --sl2");
  }
  if (cmd.bins == 0) throw Error(ErrorKind::InvalidArgument, "--bins must be positive");
  AnalysisOptions options;
  options.brute_force = parse_brute(cmd.brute);
  options.log_base = parse_log_base(cmd.log_base);
  options.cluster_tol = cmd.tol;

  ordered_json config;
  config["brute_force"] = cmd.brute;
  config["log_base"] = cmd.log_base;
  config["cluster_tol"] = cmd.tol;
  config["bins"] = cmd.bins;
  config["hist_max"] = cmd.hist_max > 0.0 ? ordered_json(cmd.hist_max) : ordered_json("max");

  CoherenceReport rep;
  if (c) {
    config["construction"] = to_json(*c);
    rep = analyze_character_frame(build(*c), options);
  } else if (!cmd.sl2.empty()) {
    const auto mode = cmd.mode == "cuspidal" ? Sl2Mode::Cuspidal : Sl2Mode::Induced;
    config["construction"] = {{"kind", to_string(mode)}, {"q", cmd.sl2[0]}, {"m", cmd.sl2[1]}};
    rep = analyze_sl2(make_sl2_spec(cmd.sl2[0], cmd.sl2[1], mode), options);
  } else {
    if (options.brute_force == BruteForceMode::Off) {
      throw Error(ErrorKind::InvalidArgument, "frames read from a file are analyzed by brute force");
    }
    config["construction"] = {{"kind", "input"}, {"path", cmd.input}, {"normalize", !cmd.no_normalize}};
    rep = analyze_dense_frame(read_frame_file(cmd.input, !cmd.no_normalize), options);
  }

  if (!cmd.histogram.empty()) {
    std::ostringstream csv;
    csv << "# " << ordered_json(config).dump() << '\n' << "bin_lo,bin_hi,count\n";
    for (const auto& b : magnitude_histogram(rep.census, cmd.bins, cmd.hist_max)) {
      char buf[96];
      std::snprintf(buf, sizeof(buf), "%.17g,%.17g,", b.lo, b.hi);
      csv << buf << b.count << '\n';
    }
    emit(cmd.histogram, csv.str(), out);
  }
  auto j = envelope("analyze", std::move(config));
  j["report"] = to_json(rep);
  emit(cmd.report, dump(j), out);
  return kExitOk;
}

// ---- compare ----

struct CompareCmd {
  std::vector<std::string> tables;
  std::vector<std::string> cases;
  std::vector<std::uint64_t> seeds{1, 2, 3};
  std::string out_json;
  std::string out_csv;
  unsigned jobs = 0;
};

std::vector<TableRow> run_cases(const std::vector<CompareCase>& cases,
                                const std::vector<std::uint64_t>& seeds, unsigned jobs) {
  std::vector<TableRow> rows(cases.size());
  std::vector<std::exception_ptr> errors(cases.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cases.size(); i = next++) {
      try {
        rows[i] = compare_case(cases[i], seeds);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (jobs == 0) jobs = std::max(1U, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, cases.size()));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return rows;
}

int run_compare(const CompareCmd& cmd, std::ostream& out) {
  std::vector<CompareCase> cases;
  for (const auto& t : cmd.tables) {
    for (auto& c : table_preset(t)) cases.push_back(c);
  }
  for (const auto& s : cmd.cases) cases.push_back(parse_case(s));
  if (cases.empty()) throw Error(ErrorKind::InvalidArgument, "compare needs --table or --case");
  if (cmd.seeds.size() < 3) throw Error(ErrorKind::InvalidArgument, "compare needs at least 3 seeds");

  ordered_json config;
  config["tables"] = cmd.tables;
  ordered_json labels = ordered_json::array();
  for (const auto& c : cases) labels.push_back(c.label());
  config["cases"] = std::move(labels);
  config["seeds"] = cmd.seeds;

  const auto rows = run_cases(cases, cmd.seeds, cmd.jobs);
  if (!cmd.out_csv.empty()) {
    emit(cmd.out_csv, "# " + config.dump() + "\n" + table_to_csv(rows), out);
  }
  if (!cmd.out_json.empty() || cmd.out_csv.empty()) {
    auto j = envelope("compare", std::move(config));
    j["schema_version"] = kTableSchemaVersion;
    j["rows"] = table_to_json(rows)["rows"];
    emit(cmd.out_json, dump(j), out);
  }
  return kExitOk;
}

// ---- bounds ----

struct BoundsCmd {
  std::uint64_t kappa = 0;
  std::string regime;
  std::uint64_t n_min = 2;
  std::uint64_t n_max = 0;
  std::string out;
  std::string log_base = "e";
  CLI::Option* kappa_opt = nullptr;
};

int run_bounds(const BoundsCmd& cmd, std::ostream& out) {
  const bool by_kappa = cmd.kappa_opt->count() > 0;
  if (by_kappa == !cmd.regime.empty()) {
    throw Error(ErrorKind::InvalidArgument, "bounds needs exactly one of --kappa or --regime");
  }
  if (cmd.n_max < cmd.n_min) throw Error(ErrorKind::InvalidArgument, "--n-max must be >= --n-min");
  const auto base = parse_log_base(cmd.log_base);
  ordered_json config;
  config["command"] = "bounds";
  config["sweep"] = by_kappa ? "kappa" : cmd.regime;
  config["kappa"] = by_kappa ? ordered_json(cmd.kappa) : ordered_json(nullptr);
  config["n_min"] = cmd.n_min;
  config["n_max"] = cmd.n_max;
  config["log_base"] = cmd.log_base;
  const auto rows = by_kappa ? bounds_kappa_sweep(cmd.kappa, cmd.n_min, cmd.n_max, base)
                             : bounds_power_regime(cmd.n_min, cmd.n_max, base);
  emit(cmd.out, "# " + config.dump() + "\n" + bounds_to_csv(rows), out);
  return kExitOk;
}

void report_error(std::ostream& err, const std::string& kind, const std::string& message, int code) {
  ordered_json j;
  j["error"] = {{"kind", kind}, {"message", message}, {"exit_code", code}};
  err << j.dump() << '\n';
}

}  // namespace

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ResourceCap: return kExitResourceCap;
    case ErrorKind::InvariantViolation: return kExitInvariant;
    default: return kExitValidation;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Group-structured frames: construction, coherence analysis and table reproduction",
               "gframe"};
  app.require_subcommand(1);
  const std::vector<std::string> log_bases{"e", "2", "10"};

  ConstructCmd construct;
  auto* c_app = app.add_subcommand("construct", "Build a frame and write it as CSV");
  add_construction_options(c_app, construct.build);
  c_app->add_option("--out", construct.out, "Matrix output path (default stdout)");
  c_app->add_option("--provenance", construct.provenance_out, "Provenance JSON path (default OUT.json)");
  c_app->add_option("--format", construct.format, "auto | sign | exponent | complex")
      ->check(CLI::IsMember({"auto", "sign", "exponent", "complex"}))
      ->capture_default_str();
  c_app->add_flag("--no-normalize", construct.no_normalize, "Complex output without 1/sqrt(m) scaling");

  AnalyzeCmd analyze;
  auto* a_app = app.add_subcommand("analyze", "Coherence report for a frame");
  add_construction_options(a_app, analyze.build);
  a_app->add_option("--input", analyze.input, "Frame CSV (sign, exponent or complex)");
  a_app->add_option("--sl2", analyze.sl2, "SL2(F_Q) frame from M characters")->expected(2);
  a_app->add_option("--mode", analyze.mode, "SL2 family")
      ->check(CLI::IsMember({"induced", "cuspidal"}))
      ->capture_default_str();
  a_app->add_option("--report", analyze.report, "Report JSON path (default stdout)");
  a_app->add_option("--histogram", analyze.histogram, "Histogram CSV path of off-diagonal |Gram|");
  a_app->add_option("--bins", analyze.bins, "Histogram bins")->capture_default_str();
  a_app->add_option("--hist-max", analyze.hist_max, "Upper histogram edge (default: max value)");
  a_app->add_option("--brute-force", analyze.brute, "on | off | auto")
      ->check(CLI::IsMember({"on", "off", "auto"}))
      ->capture_default_str();
  a_app->add_option("--log-base", analyze.log_base, "Logarithm base for the coherence properties")
      ->check(CLI::IsMember(log_bases))
      ->capture_default_str();
  a_app->add_option("--tol", analyze.tol, "Census clustering tolerance")->capture_default_str();
  a_app->add_flag("--no-normalize", analyze.no_normalize, "Do not normalize columns of --input");

  CompareCmd compare;
  auto* p_app = app.add_subcommand("compare", "Group coherence against seeded random baselines");
  p_app->add_option("--table", compare.tables, "Preset rows: I, II, IV")
      ->check(CLI::IsMember({"I", "II", "IV"}));
  p_app->add_option("--case", compare.cases, "field:P:R:M or sl2:Q:M[:induced|cuspidal]");
  p_app->add_option("--seeds", compare.seeds, "Baseline seeds (at least 3)")
      ->delimiter(',')
      ->capture_default_str();
  p_app->add_option("--out-json", compare.out_json, "Table JSON path (default stdout)");
  p_app->add_option("--out-csv", compare.out_csv, "Table CSV path");
  p_app->add_option("--jobs", compare.jobs, "Worker threads (0 = hardware)");

  BoundsCmd bounds;
  auto* b_app = app.add_subcommand("bounds", "Bound curves as CSV");
  bounds.kappa_opt = b_app->add_option("--kappa", bounds.kappa, "Fixed subgroup index");
  b_app->add_option("--regime", bounds.regime, "n45: m = n^(4/5) over primes n")
      ->check(CLI::IsMember({"n45"}));
  b_app->add_option("--n-min", bounds.n_min, "Smallest n")->capture_default_str();
  b_app->add_option("--n-max", bounds.n_max, "Largest n")->required();
  b_app->add_option("--out", bounds.out, "CSV path (default stdout)");
  b_app->add_option("--log-base", bounds.log_base, "Logarithm base")
      ->check(CLI::IsMember(log_bases))
      ->capture_default_str();

  std::vector<const char*> argv{"gframe"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    report_error(err, "ParseError", e.what(), kExitValidation);
    return kExitValidation;
  }

  try {
    if (c_app->parsed()) return run_construct(construct, out);
    if (a_app->parsed()) return run_analyze(analyze, out);
    if (p_app->parsed()) return run_compare(compare, out);
    return run_bounds(bounds, out);
  } catch (const Error& e) {
    const int code = exit_code_for(e.kind());
    report_error(err, std::string(to_string(e.kind())), e.what(), code);
    return code;
  } catch (const std::bad_alloc&) {
    report_error(err, "ResourceCap", "out of memory", kExitResourceCap);
    return kExitResourceCap;
  } catch (const std::exception& e) {
    report_error(err, "InvariantViolation", e.what(), kExitInvariant);
    return kExitInvariant;
  }
}

}  // namespace gframe::cli
