#include "tripent/witness.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "tripent/error.hpp"
#include "tripent/random.hpp"
#include "witness_internal.hpp"

namespace tripent {

void WitnessCoefficients::validate() const {
  for (double c : eta) {
    if (c == 0.0 || !std::isfinite(c)) throw ValidationError("WitnessCoefficients: eta components must be nonzero");
  }
  for (double c : beta) {
    if (c == 0.0 || !std::isfinite(c)) throw ValidationError("WitnessCoefficients: beta components must be nonzero");
  }
}

double WitnessCoefficients::min_product() const {
  double m = std::abs(eta[0] * beta[0]);
  for (std::size_t i = 1; i < 3; ++i) m = std::min(m, std::abs(eta[i] * beta[i]));
  return m;
}

double continuous_witness(const WitnessCoefficients& coeffs, double h_x, double h_k) {
  coeffs.validate();
  return std::log2(2.0 * std::numbers::pi * coeffs.min_product()) - h_x - h_k;
}

double analytic_witness(const TripleGaussianState& s, const WitnessCoefficients& coeffs) {
  const double hx = gaussian_differential_entropy(linear_combination_sd(s, coeffs.eta));
  const double hk = gaussian_differential_entropy(linear_combination_sd(to_momentum(s), coeffs.beta));
  return continuous_witness(coeffs, hx, hk);
}

std::vector<double> project(const SampleSet& samples, const Vec3& c) {
  std::vector<double> out(samples.size());
  std::transform(samples.points.begin(), samples.points.end(), out.begin(),
                 [&](const Vec3& p) { return c[0] * p[0] + c[1] * p[1] + c[2] * p[2]; });
  return out;
}

namespace detail {

std::vector<double> multinomial_resample(std::span<const double> weights, std::uint64_t n, std::mt19937_64& engine) {
  double remaining_mass = 0.0;
  for (double w : weights) remaining_mass += w;
  std::vector<double> out(weights.size(), 0.0);
  std::uint64_t remaining = n;
  for (std::size_t i = 0; i < weights.size() && remaining > 0; ++i) {
    if (weights[i] <= 0.0) continue;
    const double p = std::clamp(weights[i] / remaining_mass, 0.0, 1.0);
    std::uint64_t draw = remaining;
    if (p < 1.0) {
      std::binomial_distribution<std::uint64_t> binom(remaining, p);
      draw = binom(engine);
    }
    out[i] = static_cast<double>(draw);
    remaining -= draw;
    remaining_mass -= weights[i];
  }
  return out;
}

double sample_standard_deviation(std::span<const double> values) {
  if (values.size() < 2) return 0.0;
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

}  // namespace detail

double bootstrap_witness_se(const Histogram1D& hx, const Histogram1D& hk, double min_product,
                            const BootstrapOptions& options) {
  if (options.replicates < 2) return 0.0;
  auto engine = make_substream(options.seed, 0xB007);
  const auto nx = static_cast<std::uint64_t>(std::llround(hx.total()));
  const auto nk = static_cast<std::uint64_t>(std::llround(hk.total()));
  const double offset = std::log2(2.0 * std::numbers::pi * min_product);
  std::vector<double> values;
  values.reserve(options.replicates);
  for (std::size_t r = 0; r < options.replicates; ++r) {
    Histogram1D bx = hx;
    Histogram1D bk = hk;
    bx.counts = detail::multinomial_resample(hx.counts, nx, engine);
    bk.counts = detail::multinomial_resample(hk.counts, nk, engine);
    values.push_back(offset - differential_entropy_from_histogram(bx) - differential_entropy_from_histogram(bk));
  }
  return detail::sample_standard_deviation(values);
}

EntanglementReport witness_from_samples(const SampleSet& samples_x, const SampleSet& samples_k,
                                        const WitnessCoefficients& coeffs, double bin_width_x,
                                        double bin_width_k, const BootstrapOptions& bootstrap) {
  if (samples_x.empty() || samples_k.empty()) throw UsageError("witness_from_samples: empty sample set");
  if (!(bin_width_x > 0.0) || !(bin_width_k > 0.0)) throw UsageError("witness_from_samples: bin widths must be positive");
  coeffs.validate();

  const Histogram1D hx = histogram_from_values(project(samples_x, coeffs.eta), bin_width_x);
  const Histogram1D hk = histogram_from_values(project(samples_k, coeffs.beta), bin_width_k);

  EntanglementReport report;
  report.entropy_x_bits = differential_entropy_from_histogram(hx);
  report.entropy_k_bits = differential_entropy_from_histogram(hk);
  report.set_witness(continuous_witness(coeffs, report.entropy_x_bits, report.entropy_k_bits));
  report.bootstrap_se = bootstrap_witness_se(hx, hk, coeffs.min_product(), bootstrap);

  auto occupied = [](const Histogram1D& h) {
    return std::count_if(h.counts.begin(), h.counts.end(), [](double c) { return c > 0.0; });
  };
  report.inputs = {
      {"eta", coeffs.eta},
      {"beta", coeffs.beta},
      {"min_product_convention", kMinProductConvention},
      {"bin_width_x", bin_width_x},
      {"bin_width_k", bin_width_k},
      {"samples_x", samples_x.size()},
      {"samples_k", samples_k.size()},
      {"occupied_bins_x", occupied(hx)},
      {"occupied_bins_k", occupied(hk)},
      {"bootstrap_replicates", bootstrap.replicates},
      {"bootstrap_seed", bootstrap.seed},
  };
  return report;
}

void DiscreteWitnessInput::validate() const {
  if (pmf_q.axes() != 3 || pmf_r.axes() != 3) throw ValidationError("discrete_witness: PMFs must have three axes");
  if (!std::equal(pmf_q.shape().begin(), pmf_q.shape().end(), pmf_r.shape().begin(), pmf_r.shape().end())) {
    throw ValidationError("discrete_witness: Q and R statistics must have the same shape");
  }
  std::size_t largest = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    const auto dim = pmf_q.shape()[i];
    largest = std::max(largest, dim);
    if (!(omega[i] >= 1.0) || omega[i] > static_cast<double>(dim)) {
      throw ValidationError("discrete_witness: omega_i must lie in [1, dim_i]");
    }
  }
  if (d_max != largest) throw ValidationError("discrete_witness: d_max must equal the largest party dimension");
}

double discrete_witness(const DiscreteWitnessInput& input) {
  input.validate();
  double bound = -2.0 * std::log2(static_cast<double>(input.d_max));
  for (std::size_t i = 0; i < 3; ++i) {
    bound += std::log2(input.omega[i]) - conditional_entropy(input.pmf_q, i) - conditional_entropy(input.pmf_r, i);
  }
  return bound;
}

}  // namespace tripent
