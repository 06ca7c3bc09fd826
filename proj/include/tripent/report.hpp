#pragma once

#include <optional>
#include <string>

#include <json.hpp>

namespace tripent {

std::string tool_version();

/// Result record shared by the witness, simulation and CLI layers.
///
/// `inputs` echoes everything needed to reproduce the run (state or config,
/// coefficients, seeds, bin widths, defaults that were applied) plus
/// provenance such as sample counts and the coefficient-minimum convention.
struct EntanglementReport {
  nlohmann::json inputs = nlohmann::json::object();
  std::optional<double> exact_e3f_gebits;
  double witness_gebits = 0.0;
  double certified_gebits = 0.0;
  double entropy_x_bits = 0.0;
  double entropy_k_bits = 0.0;
  std::optional<double> bootstrap_se;
  std::string tool_version = tripent::tool_version();

  /// Stores the raw bound and certified = max(0, bound).
  void set_witness(double bound);

  friend bool operator==(const EntanglementReport&, const EntanglementReport&) = default;
};

nlohmann::json to_json(const EntanglementReport& r);

/// Throws InputError when a field is missing or has the wrong type.
EntanglementReport report_from_json(const nlohmann::json& j);

/// JSON text with every floating-point number written as %.16e (17
/// significant digits), so parse -> serialize reproduces the text exactly.
/// Non-finite numbers are written as null.
std::string serialize_json(const nlohmann::json& j);

inline std::string serialize_report(const EntanglementReport& r) { return serialize_json(to_json(r)); }

}  // namespace tripent
