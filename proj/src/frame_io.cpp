#include "gframe/frame_io.hpp"

#include <cerrno>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <optional>
#include <system_error>
#include <vector>

#include <unistd.h>

#include "json.hpp"

#include "gframe/error.hpp"
#include "gframe/report.hpp"

namespace gframe {

namespace {

namespace fs = std::filesystem;

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x == 0.0 ? 0.0 : x);
  return buf;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

double parse_double(const std::string& s, std::size_t line_no) {
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE) {
    throw Error(ErrorKind::ParseError, "bad number '" + s + "' on line " + std::to_string(line_no));
  }
  return v;
}

std::uint64_t parse_uint(const std::string& s, std::size_t line_no) {
  std::uint64_t v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw Error(ErrorKind::ParseError, "bad integer '" + s + "' on line " + std::to_string(line_no));
  }
  return v;
}

void write_header(std::ostream& out, std::uint32_t cols) {
  for (std::uint32_t j = 0; j < cols; ++j) out << (j ? ",c" : "c") << j;
  out << '\n';
}

Provenance provenance_from_json(const nlohmann::json& j) {
  Provenance prov;
  prov.construction = j.value("construction", std::string("external"));
  prov.p = j.value("p", 0U);
  prov.r = j.value("r", 0U);
  prov.m = j.value("m", 0U);
  prov.modulus = j.value("modulus", std::vector<std::uint32_t>{});
  prov.generator = j.value("generator", std::vector<std::uint32_t>{});
  prov.ordering = j.value("ordering", std::string{});
  if (j.contains("seed") && j["seed"].is_number_unsigned()) prov.seed = j["seed"].get<std::uint64_t>();
  prov.rng = j.value("rng", std::string{});
  return prov;
}

}  // namespace

void write_sign_csv(std::ostream& out, const SignMatrix& frame) {
  write_header(out, frame.cols());
  for (std::uint32_t i = 0; i < frame.rows(); ++i) {
    for (std::uint32_t j = 0; j < frame.cols(); ++j) {
      if (j) out << ',';
      out << frame.at(i, j);
    }
    out << '\n';
  }
}

void write_exponent_csv(std::ostream& out, const ExponentFrame& frame) {
  out << "# " << provenance_to_json(frame.provenance()).dump() << '\n';
  write_header(out, frame.cols());
  for (std::uint32_t i = 0; i < frame.rows(); ++i) {
    for (std::uint32_t j = 0; j < frame.cols(); ++j) {
      if (j) out << ',';
      out << frame.at(i, j);
    }
    out << '\n';
  }
}

void write_complex_csv(std::ostream& out, const ComplexFrame& frame) {
  for (std::uint32_t j = 0; j < frame.cols(); ++j) {
    if (j) out << ',';
    out << "re_c" << j << ",im_c" << j;
  }
  out << '\n';
  for (std::uint32_t i = 0; i < frame.rows(); ++i) {
    for (std::uint32_t j = 0; j < frame.cols(); ++j) {
      const auto v = frame.at(i, j);
      if (j) out << ',';
      out << format_double(v.real()) << ',' << format_double(v.imag());
    }
    out << '\n';
  }
}

ComplexFrame read_frame_csv(std::istream& in, bool normalize) {
  std::string line;
  std::size_t line_no = 0;
  std::optional<nlohmann::json> meta;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line[0] == '#') {
      try {
        meta = nlohmann::json::parse(line.substr(1));
      } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::ParseError, std::string("bad provenance line: ") + e.what());
      }
      continue;
    }
    break;
  }
  if (line.empty()) throw Error(ErrorKind::ParseError, "missing header row");
  const auto header = split_csv(line);
  const bool is_complex = header[0].rfind("re_c", 0) == 0;
  if (is_complex && header.size() % 2 != 0) {
    throw Error(ErrorKind::ParseError, "complex CSV needs paired re/im columns");
  }
  const std::size_t cols = is_complex ? header.size() / 2 : header.size();
  const bool is_exponent = !is_complex && meta.has_value();
  std::uint64_t p = 0;
  if (is_exponent) {
    p = meta->value("p", 0U);
    if (p < 2) throw Error(ErrorKind::ParseError, "exponent file provenance lacks p");
  }

  std::vector<std::complex<double>> rows;
  std::size_t row_count = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto cells = split_csv(line);
    if (cells.size() != header.size()) {
      throw Error(ErrorKind::BadShape, "line " + std::to_string(line_no) + " has " +
                                           std::to_string(cells.size()) + " cells, expected " +
                                           std::to_string(header.size()));
    }
    for (std::size_t j = 0; j < cols; ++j) {
      if (is_complex) {
        rows.emplace_back(parse_double(cells[2 * j], line_no), parse_double(cells[2 * j + 1], line_no));
      } else if (is_exponent) {
        rows.push_back(unit_root(parse_uint(cells[j], line_no), p));
      } else {
        rows.emplace_back(parse_double(cells[j], line_no), 0.0);
      }
    }
    ++row_count;
  }
  if (row_count == 0 || cols == 0) throw Error(ErrorKind::BadShape, "empty frame");

  const auto m = static_cast<std::uint32_t>(row_count);
  const auto n = static_cast<std::uint32_t>(cols);
  std::vector<std::complex<double>> col_major(rows.size());
  for (std::uint32_t i = 0; i < m; ++i) {
    for (std::uint32_t j = 0; j < n; ++j) col_major[std::size_t{j} * m + i] = rows[std::size_t{i} * n + j];
  }
  auto frame = ComplexFrame::from_columns(m, n, col_major);
  if (normalize) frame.normalize_columns();
  if (meta) {
    frame.provenance = provenance_from_json(*meta);
  } else {
    frame.provenance.construction = "external";
  }
  return frame;
}

ComplexFrame read_frame_file(const std::string& path, bool normalize) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open " + path);
  return read_frame_csv(in, normalize);
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const fs::path target(path);
  fs::path dir = target.parent_path();
  if (dir.empty()) dir = ".";
  if (const char* scratch = std::getenv("GFRAME_SCRATCH_DIR"); scratch && *scratch) dir = scratch;
  const fs::path tmp = dir / (target.filename().string() + ".tmp" + std::to_string(::getpid()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw Error(ErrorKind::InvalidArgument, "write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    // Scratch directory on another filesystem: copy next to the target first.
    const fs::path local = target.string() + ".tmp";
    fs::copy_file(tmp, local, fs::copy_options::overwrite_existing, ec);
    fs::remove(tmp);
    if (ec) throw Error(ErrorKind::InvalidArgument, "cannot stage " + local.string());
    fs::rename(local, target, ec);
    if (ec) throw Error(ErrorKind::InvalidArgument, "cannot rename into " + target.string());
  }
}

}  // namespace gframe
