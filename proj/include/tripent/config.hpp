#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "tripent/spdc.hpp"

// Flat `key = value` configuration files. Keys are the SpdcConfig field
// names, values are SI, `#` starts a comment. Required keys:
//
//   lambda_p L_z sigma_p n_p n_1 n_2 n_3 ng_p ng_1 ng_2 ng_3 chi3_eff kappa0 pump_power
//
// Optional keys: qpm_order (integer >= 1), qpm_period (m), pump_bandwidth (rad/s).

namespace tripent {

/// Throws InputError on unreadable files, syntax errors, unknown or duplicate
/// keys, and missing required keys; ValidationError on out-of-range values.
SpdcConfig parse_spdc_config(std::istream& in, const std::string& source_name = "<stream>");
SpdcConfig load_spdc_config(const std::filesystem::path& path);

/// Renders a config in the same format, one key per line, 17 significant digits.
std::string format_spdc_config(const SpdcConfig& c);

}  // namespace tripent
