#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

// Hand-rolled generators for the property tests.
namespace testgen {

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

// Random PMF table with some exact zeros.
inline std::vector<double> random_table(std::mt19937_64& g, std::size_t n, double zero_fraction = 0.2) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> t(n);
  double sum = 0.0;
  for (auto& x : t) {
    x = u(g) < zero_fraction ? 0.0 : u(g);
    sum += x;
  }
  if (sum == 0.0) {
    t[0] = 1.0;
    sum = 1.0;
  }
  for (auto& x : t) x /= sum;
  return t;
}

inline std::size_t random_dim(std::mt19937_64& g, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(g);
}

inline double log_uniform(std::mt19937_64& g, double lo, double hi) {
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  return std::exp(u(g));
}

}  // namespace testgen
