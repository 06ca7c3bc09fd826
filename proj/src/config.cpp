#include "tripent/config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
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

double parse_real(std::string_view text, const std::string& where) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) throw InputError(where + ": '" + std::string(text) + "' is not a number");
  return value;
}

int parse_int(std::string_view text, const std::string& where) {
  int value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) throw InputError(where + ": '" + std::string(text) + "' is not an integer");
  return value;
}

struct RealField {
  const char* key;
  double SpdcConfig::*member;
};

constexpr RealField kRequired[] = {
    {"lambda_p", &SpdcConfig::lambda_p}, {"L_z", &SpdcConfig::L_z},
    {"sigma_p", &SpdcConfig::sigma_p},   {"n_p", &SpdcConfig::n_p},
    {"n_1", &SpdcConfig::n_1},           {"n_2", &SpdcConfig::n_2},
    {"n_3", &SpdcConfig::n_3},           {"ng_p", &SpdcConfig::ng_p},
    {"ng_1", &SpdcConfig::ng_1},         {"ng_2", &SpdcConfig::ng_2},
    {"ng_3", &SpdcConfig::ng_3},         {"chi3_eff", &SpdcConfig::chi3_eff},
    {"kappa0", &SpdcConfig::kappa0},     {"pump_power", &SpdcConfig::pump_power},
};

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

SpdcConfig parse_spdc_config(std::istream& in, const std::string& source_name) {
  std::map<std::string, std::pair<std::string, int>, std::less<>> entries;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    const std::string where = source_name + ":" + std::to_string(line_no);
    if (eq == std::string_view::npos) throw InputError(where + ": expected 'key = value'");
    const std::string key(trim(view.substr(0, eq)));
    const std::string value(trim(view.substr(eq + 1)));
    if (key.empty() || value.empty()) throw InputError(where + ": expected 'key = value'");
    if (!entries.emplace(key, std::make_pair(value, line_no)).second) {
      throw InputError(where + ": duplicate key '" + key + "'");
    }
  }
  if (in.bad()) throw InputError(source_name + ": read error");

  SpdcConfig c{};
  auto take = [&](const char* key) -> std::optional<std::pair<std::string, std::string>> {
    const auto it = entries.find(key);
    if (it == entries.end()) return std::nullopt;
    auto out = std::make_pair(it->second.first, source_name + ":" + std::to_string(it->second.second));
    entries.erase(it);
    return out;
  };

  for (const auto& field : kRequired) {
    const auto entry = take(field.key);
    if (!entry) throw InputError(source_name + ": missing required key '" + field.key + "'");
    c.*field.member = parse_real(entry->first, entry->second);
  }
  if (const auto e = take("qpm_order")) c.qpm_order = parse_int(e->first, e->second);
  if (const auto e = take("qpm_period")) c.qpm_period = parse_real(e->first, e->second);
  if (const auto e = take("pump_bandwidth")) c.pump_bandwidth = parse_real(e->first, e->second);

  if (!entries.empty()) {
    throw InputError(source_name + ":" + std::to_string(entries.begin()->second.second) + ": unknown key '" +
                     entries.begin()->first + "'");
  }
  c.validate();
  return c;
}

SpdcConfig load_spdc_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config file '" + path.string() + "'");
  return parse_spdc_config(in, path.string());
}

std::string format_spdc_config(const SpdcConfig& c) {
  std::ostringstream out;
  for (const auto& field : kRequired) out << field.key << " = " << format_real(c.*field.member) << '\n';
  if (c.qpm_order) out << "qpm_order = " << *c.qpm_order << '\n';
  if (c.qpm_period) out << "qpm_period = " << format_real(*c.qpm_period) << '\n';
  if (c.pump_bandwidth) out << "pump_bandwidth = " << format_real(*c.pump_bandwidth) << '\n';
  return out.str();
}

}  // namespace tripent
