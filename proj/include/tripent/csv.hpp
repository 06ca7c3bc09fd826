#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>

#include "tripent/spdc.hpp"
#include "tripent/triple_gaussian.hpp"

// CSV schemas:
//   sweep     sigma_p_m,witness_gebits,exact_gebits
//   samples   x1,x2,x3 (m) for position files, k1,k2,k3 (rad/m) for momentum files

namespace tripent {

struct LoadedSamples {
  Basis basis;
  SampleSet samples;
};

/// Reads a sample file; the header row decides the basis. Throws InputError
/// on a missing/unknown header, ragged rows or unparsable numbers.
LoadedSamples parse_samples_csv(std::istream& in, const std::string& source_name = "<stream>");
LoadedSamples load_samples_csv(const std::filesystem::path& path);

std::string format_samples_csv(const SampleSet& samples, Basis basis);
std::string format_sweep_csv(std::span<const SweepRow> rows);

/// Writes `path.tmp` and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace tripent
