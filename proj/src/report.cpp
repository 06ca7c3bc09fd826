#include "tripent/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "tripent/error.hpp"

namespace tripent {

namespace {

void write_string(std::string& out, const std::string& s) {
  // nlohmann's dump() handles escaping for plain strings
  out += nlohmann::json(s).dump();
}

void write_value(std::string& out, const nlohmann::json& j, int depth) {
  const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(2 * depth), ' ');
  switch (j.type()) {
    case nlohmann::json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad;
        write_string(out, it.key());
        out += ": ";
        write_value(out, it.value(), depth + 1);
      }
      out += "\n" + close_pad + "}";
      return;
    }
    case nlohmann::json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[";
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += ", ";
        first = false;
        write_value(out, v, depth + 1);
      }
      out += "]";
      return;
    }
    case nlohmann::json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
        return;
      }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.16e", v);
      out += buf;
      return;
    }
    default:
      out += j.dump();
  }
}

double require_number(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    throw InputError(std::string("report: field '") + key + "' missing or not a number");
  }
  return j.at(key).get<double>();
}

std::optional<double> optional_number(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) throw InputError(std::string("report: field '") + key + "' missing");
  if (j.at(key).is_null()) return std::nullopt;
  if (!j.at(key).is_number()) throw InputError(std::string("report: field '") + key + "' is not a number");
  return j.at(key).get<double>();
}

}  // namespace

std::string tool_version() { return std::string("tripent ") + TRIPENT_VERSION; }

void EntanglementReport::set_witness(double bound) {
  witness_gebits = bound;
  certified_gebits = std::max(0.0, bound);
}

nlohmann::json to_json(const EntanglementReport& r) {
  nlohmann::json j;
  j["inputs"] = r.inputs;
  j["exact_e3f_gebits"] = r.exact_e3f_gebits ? nlohmann::json(*r.exact_e3f_gebits) : nlohmann::json(nullptr);
  j["witness_gebits"] = r.witness_gebits;
  j["certified_gebits"] = r.certified_gebits;
  j["entropy_x_bits"] = r.entropy_x_bits;
  j["entropy_k_bits"] = r.entropy_k_bits;
  j["bootstrap_se"] = r.bootstrap_se ? nlohmann::json(*r.bootstrap_se) : nlohmann::json(nullptr);
  j["tool_version"] = r.tool_version;
  return j;
}

EntanglementReport report_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InputError("report: top level must be an object");
  EntanglementReport r;
  if (!j.contains("inputs") || !j.at("inputs").is_object()) throw InputError("report: 'inputs' must be an object");
  r.inputs = j.at("inputs");
  r.exact_e3f_gebits = optional_number(j, "exact_e3f_gebits");
  r.witness_gebits = require_number(j, "witness_gebits");
  r.certified_gebits = require_number(j, "certified_gebits");
  r.entropy_x_bits = require_number(j, "entropy_x_bits");
  r.entropy_k_bits = require_number(j, "entropy_k_bits");
  r.bootstrap_se = optional_number(j, "bootstrap_se");
  if (!j.contains("tool_version") || !j.at("tool_version").is_string()) {
    throw InputError("report: 'tool_version' must be a string");
  }
  r.tool_version = j.at("tool_version").get<std::string>();
  return r;
}

std::string serialize_json(const nlohmann::json& j) {
  std::string out;
  write_value(out, j, 0);
  out += '\n';
  return out;
}

}  // namespace tripent
