#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "tripent/entropy.hpp"
#include "tripent/report.hpp"
#include "tripent/triple_gaussian.hpp"

// Entropic lower bounds on the tripartite entanglement of formation.
//
// Continuous variables:
//   E3F >= log2(2 pi |eta||beta|) - h(eta . x) - h(beta . k),
//   |eta||beta| = min_i |eta_i| |beta_i|   (minimum of the per-party products)
//
// Discrete variables, for two observables per party with overlap factor Omega_i:
//   E3F >= sum_i [log2 Omega_i - H(Q_i | Q_jk) - H(R_i | R_jk)] - 2 log2 D_max

namespace tripent {

/// Weights of the position (eta) and momentum (beta) linear combinations.
struct WitnessCoefficients {
  Vec3 eta;
  Vec3 beta;

  /// Throws ValidationError if any component is zero or non-finite.
  void validate() const;

  /// min_i |eta_i| |beta_i|.
  double min_product() const;

  /// (1, -1/2, -1/2) / (1, 1, 1), matched to photon triplets sharing a birth
  /// zone and conserving transverse momentum.
  static WitnessCoefficients triplet_default() { return {{1.0, -0.5, -0.5}, {1.0, 1.0, 1.0}}; }

  friend bool operator==(const WitnessCoefficients&, const WitnessCoefficients&) = default;
};

/// Records which reading of |eta||beta| is used; echoed into every report.
inline constexpr const char* kMinProductConvention = "min_i(|eta_i|*|beta_i|)";

/// Raw continuous-variable bound, gebits. h_x, h_k are the differential
/// entropies (bits) of eta . x and beta . k. May be negative.
double continuous_witness(const WitnessCoefficients& coeffs, double h_x, double h_k);

/// Bound obtained from the exact Gaussian entropies of a triple-Gaussian
/// position state `s` and its Fourier dual.
double analytic_witness(const TripleGaussianState& s, const WitnessCoefficients& coeffs);

std::vector<double> project(const SampleSet& samples, const Vec3& coefficients);

struct BootstrapOptions {
  std::size_t replicates = 64;
  std::uint64_t seed = 0x5EED;
};

/// Standard error of (log2(2 pi m) - H_x - H_k) under multinomial resampling
/// of both histograms' counts.
double bootstrap_witness_se(const Histogram1D& hx, const Histogram1D& hk, double min_product,
                            const BootstrapOptions& options);

/// Histograms eta . x and beta . k with the given bin widths, estimates both
/// entropies with differential_entropy_from_histogram and applies the bound.
EntanglementReport witness_from_samples(const SampleSet& samples_x, const SampleSet& samples_k,
                                        const WitnessCoefficients& coeffs, double bin_width_x,
                                        double bin_width_k, const BootstrapOptions& bootstrap = {});

struct OptimizerOptions {
  /// Histogram bin width as a fraction of each combination's sample standard
  /// deviation. Scale-relative bins make the objective invariant under a
  /// global rescaling of eta or beta.
  double bin_fraction = 0.1;
  /// Magnitude ratios |c_i / c_anchor| are searched in [1/max_ratio, max_ratio].
  double max_ratio = 8.0;
  /// Grid points per log-magnitude axis in the coarse stage.
  int grid_points = 7;
  int refinement_sweeps = 3;
  double golden_tolerance = 1e-4;  // in log-magnitude
};

struct OptimizationResult {
  WitnessCoefficients coefficients;
  double witness_gebits;       // objective at `coefficients`
  double init_witness_gebits;  // objective at the initial coefficients
  std::size_t evaluations;
  std::vector<std::string> warnings;
};

/// Objective used by optimize_coefficients: witness with scale-relative bins.
double sample_witness_objective(const SampleSet& samples_x, const SampleSet& samples_k,
                                const WitnessCoefficients& coeffs, const OptimizerOptions& options = {});

/// Derivative-free maximization of the sample witness.
///
/// Parties are first put into a canonical order (by marginal sample variance)
/// so the result does not depend on how they are labeled. Within that order
/// the first party anchors the scale of each vector; the search covers the
/// four sign patterns of each vector modulo global sign, a coarse grid of
/// magnitude ratios, then coordinate-wise golden-section refinement in
/// log-magnitude. The returned witness is never below the initial one.
///
/// A party whose x (or k) marginal has zero sample variance keeps its initial
/// eta (or beta) ratio and a warning is recorded.
OptimizationResult optimize_coefficients(const SampleSet& samples_x, const SampleSet& samples_k,
                                         const WitnessCoefficients& init, const OptimizerOptions& options = {});

struct DiscreteWitnessInput {
  DiscretePMF pmf_q;  // outcome statistics of (Q_A, Q_B, Q_C)
  DiscretePMF pmf_r;  // outcome statistics of (R_A, R_B, R_C)
  std::array<double, 3> omega;
  std::size_t d_max;

  /// Both PMFs 3-axis with equal shapes, 1 <= omega_i <= dim_i, d_max = max dim.
  void validate() const;
};

double discrete_witness(const DiscreteWitnessInput& input);

struct CorrelationCheckReport {
  std::size_t dim;
  std::size_t trials;
  std::uint64_t seed;
  /// max over trials of H(Q_A:Q_B) - E_F(AB) - min{S(AB), S(A), S(B)}
  double max_violation;
  double mean_mutual_information;
  double mean_entanglement;
  std::size_t violations_above_tolerance;  // trials with violation > 1e-9
};

/// Draws Haar-random pure states on C^dim (x) C^dim and Haar-random local
/// measurement bases, and checks H(Q_A:Q_B) <= E_F + min{S(AB), S(A), S(B)}.
/// For pure states S(AB) = 0 and E_F = S(A) (reduced-state entropy).
CorrelationCheckReport verify_correlation_relation(std::size_t dim, std::size_t trials, std::uint64_t seed);

}  // namespace tripent
