#include "tripent/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string_view>

#include "tripent/error.hpp"

namespace tripent {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

void append_real(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

}  // namespace

LoadedSamples parse_samples_csv(std::istream& in, const std::string& source_name) {
  std::string line;
  if (!std::getline(in, line)) throw InputError(source_name + ": empty sample file");
  std::string header;
  for (char ch : line) {
    if (ch != ' ' && ch != '\t' && ch != '\r') header += ch;
  }
  LoadedSamples out{};
  if (header == "x1,x2,x3") {
    out.basis = Basis::position;
  } else if (header == "k1,k2,k3") {
    out.basis = Basis::momentum;
  } else {
    throw InputError(source_name + ": header must be 'x1,x2,x3' or 'k1,k2,k3'");
  }

  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view rest = trim(line);
    if (rest.empty()) continue;
    Vec3 p{};
    for (int col = 0; col < 3; ++col) {
      const auto comma = rest.find(',');
      if ((col < 2) != (comma != std::string_view::npos)) {
        throw InputError(source_name + ":" + std::to_string(line_no) + ": expected three columns");
      }
      const std::string_view field = trim(rest.substr(0, comma));
      const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), p[col]);
      if (ec != std::errc() || ptr != field.data() + field.size() || field.empty()) {
        throw InputError(source_name + ":" + std::to_string(line_no) + ": bad number '" + std::string(field) + "'");
      }
      rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    }
    out.samples.points.push_back(p);
  }
  return out;
}

LoadedSamples load_samples_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open sample file '" + path.string() + "'");
  return parse_samples_csv(in, path.string());
}

std::string format_samples_csv(const SampleSet& samples, Basis basis) {
  std::string out = basis == Basis::position ? "x1,x2,x3\n" : "k1,k2,k3\n";
  out.reserve(out.size() + samples.size() * 72);
  for (const auto& p : samples.points) {
    append_real(out, p[0]);
    out += ',';
    append_real(out, p[1]);
    out += ',';
    append_real(out, p[2]);
    out += '\n';
  }
  return out;
}

std::string format_sweep_csv(std::span<const SweepRow> rows) {
  std::string out = "sigma_p_m,witness_gebits,exact_gebits\n";
  for (const auto& r : rows) {
    append_real(out, r.sigma_p);
    out += ',';
    append_real(out, r.witness_gebits);
    out += ',';
    append_real(out, r.exact_gebits);
    out += '\n';
  }
  return out;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write '" + tmp.string() + "'");
    out << content;
    out.flush();
    if (!out) throw InputError("write failed for '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw InputError("cannot rename onto '" + path.string() + "'");
  }
}

}  // namespace tripent
