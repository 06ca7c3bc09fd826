#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

// Triple-Gaussian photon-triplet state: a three-mode Gaussian wavefunction that
// factorizes in the rotated coordinates
//
//   u = (x1 + x2 + x3) / sqrt(3)
//   v = (2 / sqrt(6)) (-x1 + (x2 + x3) / 2)
//   w = (x2 - x3) / sqrt(2)
//
// with probability-density standard deviations (sigma_u, sigma_v, sigma_w).
// Positions are in meters, transverse wavenumbers in rad/m.

namespace tripent {

using Vec3 = std::array<double, 3>;

struct TripleGaussianState {
  double sigma_u;
  double sigma_v;
  double sigma_w;

  /// Throws ValidationError unless all widths are positive and finite.
  TripleGaussianState(double sigma_u, double sigma_v, double sigma_w);

  /// Permutation-symmetric triplet (sigma_v == sigma_w), the only case with a closed-form E3F.
  static TripleGaussianState symmetric(double sigma_u, double sigma_v) { return {sigma_u, sigma_v, sigma_v}; }

  bool is_symmetric() const { return sigma_v == sigma_w; }
  Vec3 widths() const { return {sigma_u, sigma_v, sigma_w}; }

  friend bool operator==(const TripleGaussianState&, const TripleGaussianState&) = default;
};

/// Standard deviations of the two-photon sum/difference combinations for the
/// (B, C) marginal in position (m) and momentum (rad/m).
struct PairStatistics {
  double sd_x_sum;
  double sd_x_diff;
  double sd_k_sum;
  double sd_k_diff;
};

enum class Basis { position, momentum };

const char* to_string(Basis b);

/// Lab-frame triplet coordinates (x1, x2, x3), one row per detected triplet.
struct SampleSet {
  std::vector<Vec3> points;

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
};

Vec3 rotate_to_uvw(double x1, double x2, double x3);
Vec3 rotate_from_uvw(double xu, double xv, double xw);

/// Rotation applied to a coefficient vector: the (u, v, w) components of c
/// such that c . x = c_uvw . (xu, xv, xw).
inline Vec3 coefficients_in_uvw(const Vec3& c) { return rotate_to_uvw(c[0], c[1], c[2]); }

/// lambda_0 of the exact E3F formula. Requires the symmetric case.
double e3f_lambda0(const TripleGaussianState& s);

/// Exact tripartite entanglement of formation h2(lambda0) / lambda0, gebits.
/// Throws UnsupportedCaseError when sigma_v != sigma_w.
double exact_e3f(const TripleGaussianState& s);

PairStatistics pair_statistics(const TripleGaussianState& s);

/// Largest violation of the Mancini separability criterion over the two
/// sum/difference pairings, bits. Positive values witness two-party
/// inseparability; the value saturates at -log2 sqrt(1/3) ~ 0.7925.
double mancini_bound(const TripleGaussianState& s);

/// Fourier dual: sigma -> 1 / (2 sigma) on every axis.
TripleGaussianState to_momentum(const TripleGaussianState& s);

/// Triphoton birth zone (4/3) sigma(x1 - (x2 + x3)/2), meters.
double birth_zone(const TripleGaussianState& s);

/// Standard deviation of c . x under the state's density.
double linear_combination_sd(const TripleGaussianState& s, const Vec3& c);

/// n i.i.d. triplets drawn in (u, v, w) and rotated back to the lab frame.
///
/// Samples are generated in fixed-size blocks, each from its own substream
/// derived from `seed`; the output is bit-identical regardless of how many
/// worker threads fill the blocks.
SampleSet sample_positions(const TripleGaussianState& s, std::size_t n, std::uint64_t seed);

}  // namespace tripent
