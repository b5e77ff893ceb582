#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "gframe/cli.hpp"

using namespace gframe;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  Run r;
  r.code = cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path workdir() {
  const auto dir = fs::temp_directory_path() / "gframe_test_cli";
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("exit code mapping") {
  CHECK(cli::exit_code_for(ErrorKind::NotPrime) == 2);
  CHECK(cli::exit_code_for(ErrorKind::ParseError) == 2);
  CHECK(cli::exit_code_for(ErrorKind::ResourceCap) == 3);
  CHECK(cli::exit_code_for(ErrorKind::InvariantViolation) == 4);
}

TEST_CASE("analyze field frame") {
  const auto r = run({"analyze", "--field", "3", "3", "--m", "13"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["command"] == "analyze");
  CHECK(j["report"]["n"] == 27);
  CHECK(j["report"]["equiangular"] == true);
  CHECK(j["report"]["mu"].get<double>() == doctest::Approx(0.2035).epsilon(5e-4));
}

TEST_CASE("analyze SL2 and histogram output") {
  const auto dir = workdir();
  const auto hist = (dir / "hist.csv").string();
  const auto r = run({"analyze", "--sl2", "8", "3", "--histogram", hist, "--bins", "20"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["report"]["mu"].get<double>() == doctest::Approx(1.0 / 9.0));
  const auto text = slurp(hist);
  CHECK(text.rfind("# ", 0) == 0);
  CHECK(text.find("bin_lo,bin_hi,count") != std::string::npos);
}

TEST_CASE("construct writes frame and provenance, and analyze reads it back") {
  const auto dir = workdir();
  const auto frame = (dir / "paley.csv").string();
  REQUIRE(run({"construct", "--field", "3", "3", "--m", "13", "--out", frame}).code == 0);
  CHECK(fs::exists(frame + ".json"));
  const auto prov = nlohmann::json::parse(slurp(frame + ".json"));
  CHECK(prov["provenance"]["construction"] == "field");
  const auto r = run({"analyze", "--input", frame});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["report"]["mu"].get<double>() == doctest::Approx(0.2035).epsilon(5e-4));
  CHECK(j["report"]["provenance"]["construction"] == "field");
}

TEST_CASE("construct Hadamard as signs") {
  const auto r = run({"construct", "--hadamard", "4", "--m", "5"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("c0,c1,", 0) == 0);
  CHECK(r.out.find("-1") != std::string::npos);
}

TEST_CASE("compare and bounds outputs") {
  const auto dir = workdir();
  const auto json = (dir / "cmp.json").string();
  const auto csv = (dir / "cmp.csv").string();
  REQUIRE(run({"compare", "--case", "field:3:3:13", "--case", "sl2:4:1", "--seeds", "1,2,3", "--out-json",
               json, "--out-csv", csv})
              .code == 0);
  const auto j = nlohmann::json::parse(slurp(json));
  CHECK(j["rows"].size() == 2);
  CHECK(slurp(csv).rfind("# ", 0) == 0);

  const auto b = run({"bounds", "--kappa", "3", "--n-max", "64"});
  REQUIRE(b.code == 0);
  CHECK(b.out.find("\nn,m,m_requested") != std::string::npos);
  CHECK(run({"bounds", "--regime", "n45", "--n-max", "200"}).code == 0);
}

TEST_CASE("identical configs give byte-identical outputs") {
  const std::vector<std::vector<std::string>> commands = {
      {"analyze", "--field", "2", "8", "--m", "51"},
      {"analyze", "--random", "3", "4", "--m", "20", "--seed", "5"},
      {"analyze", "--sl2", "8", "1"},
      {"construct", "--random-hadamard", "6", "--m", "10", "--seed", "9"},
      {"compare", "--table", "IV", "--seeds", "1,2,3"},
      {"compare", "--case", "field:2:8:51", "--seeds", "4,5,6", "--jobs", "3"},
      {"bounds", "--kappa", "5", "--n-max", "500"},
  };
  for (const auto& args : commands) {
    const auto a = run(args);
    const auto b = run(args);
    CAPTURE(args.front());
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
  }
  const auto serial = run({"compare", "--table", "I", "--seeds", "1,2,3", "--jobs", "1"});
  const auto parallel = run({"compare", "--table", "I", "--seeds", "1,2,3", "--jobs", "4"});
  CHECK(serial.out == parallel.out);
}

TEST_CASE("errors produce JSON on stderr and the right exit codes") {
  const auto bad = run({"analyze", "--field", "4", "1", "--m", "1"});
  CHECK(bad.code == 2);
  CHECK(bad.out.empty());
  const auto j = nlohmann::json::parse(bad.err);
  CHECK(j["error"]["kind"] == "NotPrime");
  CHECK(j["error"]["exit_code"] == 2);

  CHECK(run({"analyze", "--field", "7", "1", "--m", "4"}).code == 2);
  CHECK(run({"analyze", "--field", "3", "x", "--m", "1"}).code == 2);
  CHECK(run({"compare", "--table", "I", "--seeds", "1,2"}).code == 2);
  CHECK(run({"analyze", "--sl2", "16", "1"}).code == 2);
  CHECK(run({"analyze", "--input", "/nonexistent/frame.csv"}).code == 2);

  const auto cap = run({"analyze", "--field", "2", "13", "--m", "1", "--brute-force", "on"});
  CHECK(cap.code == 3);
  CHECK(nlohmann::json::parse(cap.err)["error"]["kind"] == "ResourceCap");
}

TEST_CASE("help exits cleanly") {
  const auto r = run({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("analyze") != std::string::npos);
}

}  // TEST_SUITE
