#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace tripent::detail {

// Multinomial draw of n items over bins with the given (possibly fractional) weights.
std::vector<double> multinomial_resample(std::span<const double> weights, std::uint64_t n, std::mt19937_64& engine);

double sample_standard_deviation(std::span<const double> values);

}  // namespace tripent::detail
