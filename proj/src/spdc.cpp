#include "tripent/spdc.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "tripent/error.hpp"

namespace tripent {

namespace {

constexpr double kHbar = 1.054571817e-34;        // J s
constexpr double kEpsilon0 = 8.8541878128e-12;   // F/m
constexpr double kSpeedOfLight = 299792458.0;    // m/s
constexpr double kPi = std::numbers::pi;

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw ValidationError(std::string("SpdcConfig: ") + name + " must be positive and finite");
  }
}

}  // namespace

void SpdcConfig::validate() const {
  require_positive(lambda_p, "lambda_p");
  require_positive(L_z, "L_z");
  require_positive(sigma_p, "sigma_p");
  require_positive(n_p, "n_p");
  require_positive(n_1, "n_1");
  require_positive(n_2, "n_2");
  require_positive(n_3, "n_3");
  require_positive(ng_p, "ng_p");
  require_positive(ng_1, "ng_1");
  require_positive(ng_2, "ng_2");
  require_positive(ng_3, "ng_3");
  require_positive(chi3_eff, "chi3_eff");
  if (kappa0 == 0.0 || !std::isfinite(kappa0)) throw ValidationError("SpdcConfig: kappa0 must be nonzero and finite");
  if (!(pump_power >= 0.0) || !std::isfinite(pump_power)) {
    throw ValidationError("SpdcConfig: pump_power must be non-negative");
  }
  if (qpm_order && *qpm_order < 1) throw ValidationError("SpdcConfig: qpm_order must be >= 1");
  if (qpm_period) require_positive(*qpm_period, "qpm_period");
  if (pump_bandwidth) require_positive(*pump_bandwidth, "pump_bandwidth");
}

double pump_wavenumber(const SpdcConfig& c) {
  c.validate();
  return 2.0 * kPi * c.n_p / c.lambda_p;
}

PhaseMatchGeometry phase_match_geometry(const SpdcConfig& c) {
  const double k_p = pump_wavenumber(c);
  return {.a = 3.0 * c.L_z / (4.0 * k_p), .k_p = k_p};
}

double sinc(double x) {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

std::complex<double> triphoton_momentum_amplitude(const PhaseMatchGeometry& g, double sigma_p, double ku,
                                                  double kv, double kw) {
  const double q = std::sqrt(3.0) * ku;
  const double pump = std::exp(-sigma_p * sigma_p * q * q);
  return {pump * sinc(g.a * (4.0 * ku * ku + kv * kv + kw * kw)), 0.0};
}

TripleGaussianState gaussian_fit_widths(const SpdcConfig& c) {
  const double a = phase_match_geometry(c).a;
  const double var_ku = 1.0 / (4.0 * (32.0 * a / 9.0 + 3.0 * c.sigma_p * c.sigma_p));
  const double var_kv = 9.0 / (32.0 * a);
  return TripleGaussianState::symmetric(std::sqrt(var_ku), std::sqrt(var_kv));
}

TripleGaussianState gaussian_fit_position_widths(const SpdcConfig& c) {
  const double a = phase_match_geometry(c).a;
  return TripleGaussianState::symmetric(std::sqrt(32.0 * a / 9.0 + 3.0 * c.sigma_p * c.sigma_p),
                                        std::sqrt(8.0 * a / 9.0));
}

double pump_size_parameter(const SpdcConfig& c) {
  return 18.0 * c.sigma_p * c.sigma_p * pump_wavenumber(c) / c.L_z;
}

double closed_form_witness(const SpdcConfig& c) {
  return 0.5 * std::log2(16.0 + pump_size_parameter(c)) -
         std::log2(3.0 * std::numbers::sqrt2 * std::numbers::e);
}

std::vector<SweepRow> witness_sweep(const SpdcConfig& c, const SweepRange& range) {
  if (!(range.sigma_p_min > 0.0) || !(range.sigma_p_max > range.sigma_p_min) || !std::isfinite(range.sigma_p_max)) {
    throw UsageError("witness_sweep: need 0 < sigma_p_min < sigma_p_max");
  }
  if (range.points < 2) throw UsageError("witness_sweep: at least two points required");
  c.validate();

  std::vector<SweepRow> rows;
  rows.reserve(range.points);
  const double log_min = std::log(range.sigma_p_min);
  const double step = (std::log(range.sigma_p_max) - log_min) / static_cast<double>(range.points - 1);
  for (std::size_t i = 0; i < range.points; ++i) {
    SpdcConfig row_config = c;
    row_config.sigma_p = std::exp(log_min + step * static_cast<double>(i));
    if (i == 0) row_config.sigma_p = range.sigma_p_min;
    if (i + 1 == range.points) row_config.sigma_p = range.sigma_p_max;
    rows.push_back({.sigma_p = row_config.sigma_p,
                    .witness_gebits = closed_form_witness(row_config),
                    .exact_gebits = exact_e3f(gaussian_fit_widths(row_config))});
  }
  return rows;
}

double qpm_penalty(int order) {
  if (order < 1) throw UsageError("qpm_penalty: order must be >= 1");
  const double n = static_cast<double>(order);
  return 4.0 / (kPi * kPi * n * n);
}

double index_modulation_penalty(double delta_n, double chi3_sensitivity) {
  if (!(delta_n >= 0.0)) throw UsageError("index_modulation_penalty: delta_n must be non-negative");
  const double m = chi3_sensitivity * delta_n;
  return 0.25 * m * m * 4.0 / (kPi * kPi);
}

double rate_constant(const SpdcConfig& c) {
  c.validate();
  const double c2 = kSpeedOfLight * kSpeedOfLight;
  const double prefactor = kHbar / (2592.0 * std::sqrt(3.0) * kPi * kPi * kEpsilon0 * kEpsilon0 * c2 * c2);
  const double group = c.ng_1 * c.ng_2 * c.ng_3 * c.ng_p;
  const double phase = c.n_p * c.n_p * c.n_1 * c.n_1 * c.n_2 * c.n_2 * c.n_3 * c.n_3;
  const double omega_p = 2.0 * kPi * kSpeedOfLight / c.lambda_p;
  const double s2 = c.sigma_p * c.sigma_p;
  double k = prefactor * (group / phase) * c.chi3_eff * c.chi3_eff * omega_p * omega_p * omega_p /
             std::abs(c.kappa0) / (s2 * s2);
  if (c.qpm_order) k *= qpm_penalty(*c.qpm_order);
  return k;
}

double triplet_rate(const SpdcConfig& c) {
  if (c.kappa0 == 0.0) throw DomainError("triplet_rate: kappa0 = 0 makes the rate diverge");
  return rate_constant(c) * c.L_z * c.pump_power;
}

std::complex<double> joint_spectral_amplitude(const SpdcConfig& c, double dw_u, double dw_v, double dw_w) {
  c.validate();
  if (!c.pump_bandwidth) throw UsageError("joint_spectral_amplitude: pump_bandwidth is not set");
  const double dw_p = std::sqrt(3.0) * dw_u;
  const double bw = *c.pump_bandwidth;
  const double pump = std::exp(-dw_p * dw_p / (4.0 * bw * bw));
  return {pump * sinc(std::abs(c.kappa0) * c.L_z / 4.0 * (dw_v * dw_v + dw_w * dw_w)), 0.0};
}

}  // namespace tripent
