#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include "tripent/triple_gaussian.hpp"

// Third-order SPDC modeling: phase matching in one transverse dimension,
// the triple-Gaussian fit, the closed-form witness and the triplet rate.
// All quantities are SI.

namespace tripent {

struct SpdcConfig {
  double lambda_p;  // pump vacuum wavelength, m
  double L_z;       // medium length, m
  double sigma_p;   // pump beam radius, m (1/e^2 beam diameter is 4 sigma_p)
  double n_p, n_1, n_2, n_3;
  double ng_p, ng_1, ng_2, ng_3;
  double chi3_eff;    // m^2/V^2
  double kappa0;      // group-velocity dispersion |d^2k/dw^2| at the triplet central frequency, s^2/m
  double pump_power;  // W
  std::optional<int> qpm_order;
  std::optional<double> qpm_period;      // m, recorded for provenance only
  std::optional<double> pump_bandwidth;  // rad/s, rms of the pump spectral intensity

  /// Throws ValidationError on non-positive lengths/indices, chi3_eff <= 0,
  /// kappa0 == 0, negative power, or qpm_order < 1. kappa0 may be signed;
  /// only its magnitude enters the formulas. pump_power = 0 is allowed.
  void validate() const;
};

struct PhaseMatchGeometry {
  double a;    // 3 L_z / (4 k_p), m^2
  double k_p;  // rad/m
};

/// In-medium pump wavenumber 2 pi n_p / lambda_p.
double pump_wavenumber(const SpdcConfig& c);

PhaseMatchGeometry phase_match_geometry(const SpdcConfig& c);

/// sin(x)/x with sinc(0) = 1.
double sinc(double x);

/// Unnormalized 1D triphoton amplitude in rotated momentum coordinates:
/// alpha_p(sqrt(3) k_u) sinc(a (4 k_u^2 + k_v^2 + k_w^2)), with a Gaussian
/// pump of position-space radius sigma_p (alpha_p(q) = exp(-sigma_p^2 q^2)).
std::complex<double> triphoton_momentum_amplitude(const PhaseMatchGeometry& g, double sigma_p, double ku,
                                                  double kv, double kw);

/// Momentum-representation triple-Gaussian fitted to the phase-matching
/// amplitude: sigma_ku^2 = 1/(4(32a/9 + 3 sigma_p^2)), sigma_kv^2 = sigma_kw^2 = 9/(32a).
TripleGaussianState gaussian_fit_widths(const SpdcConfig& c);

/// Position-space widths of the same fit (Fourier dual of gaussian_fit_widths).
TripleGaussianState gaussian_fit_position_widths(const SpdcConfig& c);

/// 18 sigma_p^2 k_p / L_z, the dimensionless pump-size parameter of the witness.
double pump_size_parameter(const SpdcConfig& c);

/// 1/2 log2(16 + 18 sigma_p^2 k_p / L_z) - log2(3 sqrt(2) e), gebits.
/// Negative values certify nothing.
double closed_form_witness(const SpdcConfig& c);

struct SweepRange {
  double sigma_p_min;
  double sigma_p_max;
  std::size_t points;
};

struct SweepRow {
  double sigma_p;
  double witness_gebits;
  double exact_gebits;
};

/// Log-spaced sigma_p sweep of closed_form_witness and the exact E3F of the
/// fitted widths; every other config field is held fixed.
std::vector<SweepRow> witness_sweep(const SpdcConfig& c, const SweepRange& range);

/// 4 / (pi^2 n^2).
double qpm_penalty(int order);

/// Rate factor of a first-order Fourier component from modulating the index
/// by delta_n: m = chi3_sensitivity * delta_n, penalty = (m/2)^2 (4/pi^2).
double index_modulation_penalty(double delta_n, double chi3_sensitivity);

/// Triplets per second for a Gaussian pump in a single-mode geometry
/// (daughter modes with sigma = sqrt(3) sigma_p, perfect phase matching).
/// The QPM penalty multiplies in when qpm_order is set.
double triplet_rate(const SpdcConfig& c);

/// Triplet rate per unit (L_z P), the "simplified constant" of the config, 1/(m W s).
double rate_constant(const SpdcConfig& c);

/// Unnormalized joint spectral amplitude s(sqrt(3) dw_u) sinc((kappa0 L_z / 4)(dw_v^2 + dw_w^2)),
/// with a Gaussian pump spectrum of rms intensity width pump_bandwidth.
/// Throws UsageError when pump_bandwidth is unset.
std::complex<double> joint_spectral_amplitude(const SpdcConfig& c, double dw_u, double dw_v, double dw_w);

}  // namespace tripent
