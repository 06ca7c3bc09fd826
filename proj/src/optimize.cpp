#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>
#include <tuple>

#include "tripent/error.hpp"
#include "tripent/witness.hpp"
#include "witness_internal.hpp"

namespace tripent {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Differential entropy of c . x with bins a fixed fraction of the sample sd.
// +inf for a degenerate (zero-spread) combination.
double scaled_entropy(const SampleSet& samples, const Vec3& c, double bin_fraction) {
  const auto values = project(samples, c);
  const double sd = detail::sample_standard_deviation(values);
  if (!(sd > 0.0) || !std::isfinite(sd)) return std::numeric_limits<double>::infinity();
  return differential_entropy_from_histogram(histogram_from_values(values, bin_fraction * sd));
}

double witness_from_entropies(const Vec3& eta, const Vec3& beta, double hx, double hk) {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < 3; ++i) m = std::min(m, std::abs(eta[i] * beta[i]));
  if (!std::isfinite(hx) || !std::isfinite(hk)) return kNegInf;
  return std::log2(2.0 * std::numbers::pi * m) - hx - hk;
}

// One coefficient vector in canonical party order: slot 0 is the unit anchor,
// slots 1 and 2 are sign * exp(log_magnitude).
struct Direction {
  std::array<double, 2> sign{1.0, 1.0};
  std::array<double, 2> log_mag{0.0, 0.0};
  std::array<bool, 2> fixed{false, false};

  Vec3 vector() const {
    return {1.0, sign[0] * std::exp(log_mag[0]), sign[1] * std::exp(log_mag[1])};
  }

  static Direction from(const Vec3& c) {
    Direction d;
    for (std::size_t i = 0; i < 2; ++i) {
      const double ratio = c[i + 1] / c[0];
      d.sign[i] = ratio < 0.0 ? -1.0 : 1.0;
      d.log_mag[i] = std::log(std::abs(ratio));
    }
    return d;
  }
};

struct Candidate {
  Direction direction;
  double entropy;
};

// Coarse grid over sign patterns and log-magnitudes; fixed slots keep their value.
std::vector<Candidate> grid_candidates(const SampleSet& samples, const Direction& start, const OptimizerOptions& opt,
                                       std::size_t& evaluations) {
  const double bound = std::log(opt.max_ratio);
  std::vector<double> grid;
  for (int g = 0; g < opt.grid_points; ++g) {
    grid.push_back(opt.grid_points == 1 ? 0.0 : -bound + 2.0 * bound * g / (opt.grid_points - 1));
  }
  auto options_for = [&](std::size_t slot) {
    return start.fixed[slot] ? std::vector<double>{start.log_mag[slot]} : grid;
  };
  auto signs_for = [&](std::size_t slot) {
    return start.fixed[slot] ? std::vector<double>{start.sign[slot]} : std::vector<double>{1.0, -1.0};
  };

  std::vector<Candidate> out;
  for (double s0 : signs_for(0)) {
    for (double s1 : signs_for(1)) {
      for (double m0 : options_for(0)) {
        for (double m1 : options_for(1)) {
          Direction d = start;
          d.sign = {s0, s1};
          d.log_mag = {m0, m1};
          out.push_back({d, scaled_entropy(samples, d.vector(), opt.bin_fraction)});
          ++evaluations;
        }
      }
    }
  }
  return out;
}

// Golden-section maximization of f on [lo, hi]; returns the best abscissa seen.
template <typename F>
std::pair<double, double> golden_maximize(F&& f, double lo, double hi, double tol, std::size_t& evaluations) {
  constexpr double inv_phi = 0.61803398874989484820;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  evaluations += 2;
  while (hi - lo > tol) {
    if (fc >= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = f(d);
    }
    ++evaluations;
  }
  return fc >= fd ? std::pair{c, fc} : std::pair{d, fd};
}

SampleSet permuted(const SampleSet& in, const std::array<std::size_t, 3>& order) {
  SampleSet out;
  out.points.resize(in.size());
  for (std::size_t i = 0; i < in.size(); ++i) {
    const auto& p = in.points[i];
    out.points[i] = {p[order[0]], p[order[1]], p[order[2]]};
  }
  return out;
}

double column_variance(const SampleSet& s, std::size_t col) {
  std::vector<double> v(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) v[i] = s.points[i][col];
  const double sd = detail::sample_standard_deviation(v);
  return sd * sd;
}

}  // namespace

double sample_witness_objective(const SampleSet& samples_x, const SampleSet& samples_k,
                                const WitnessCoefficients& coeffs, const OptimizerOptions& options) {
  if (samples_x.empty() || samples_k.empty()) throw UsageError("sample_witness_objective: empty sample set");
  coeffs.validate();
  return witness_from_entropies(coeffs.eta, coeffs.beta, scaled_entropy(samples_x, coeffs.eta, options.bin_fraction),
                                scaled_entropy(samples_k, coeffs.beta, options.bin_fraction));
}

OptimizationResult optimize_coefficients(const SampleSet& samples_x, const SampleSet& samples_k,
                                         const WitnessCoefficients& init, const OptimizerOptions& options) {
  if (samples_x.empty() || samples_k.empty()) throw UsageError("optimize_coefficients: empty sample set");
  if (!(options.max_ratio > 1.0) || options.grid_points < 1 || !(options.bin_fraction > 0.0)) {
    throw UsageError("optimize_coefficients: invalid optimizer options");
  }
  init.validate();

  // Canonical party order: ascending (var x_i, var k_i), ties by label.
  std::array<double, 3> var_x{}, var_k{};
  for (std::size_t i = 0; i < 3; ++i) {
    var_x[i] = column_variance(samples_x, i);
    var_k[i] = column_variance(samples_k, i);
  }
  std::array<std::size_t, 3> order{0, 1, 2};
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::tie(var_x[a], var_k[a], a) < std::tie(var_x[b], var_k[b], b);
  });

  const SampleSet cx = permuted(samples_x, order);
  const SampleSet ck = permuted(samples_k, order);
  auto to_canonical = [&](const Vec3& c) { return Vec3{c[order[0]], c[order[1]], c[order[2]]}; };

  OptimizationResult result{init, 0.0, 0.0, 0, {}};
  const Vec3 init_eta = to_canonical(init.eta);
  const Vec3 init_beta = to_canonical(init.beta);
  Direction eta = Direction::from(init_eta);
  Direction beta = Direction::from(init_beta);
  for (std::size_t slot = 1; slot < 3; ++slot) {
    const std::size_t party = order[slot];
    if (!(var_x[party] > 0.0)) {
      eta.fixed[slot - 1] = true;
      result.warnings.push_back("party " + std::to_string(party) + ": zero position variance, eta held at init");
    }
    if (!(var_k[party] > 0.0)) {
      beta.fixed[slot - 1] = true;
      result.warnings.push_back("party " + std::to_string(party) + ": zero momentum variance, beta held at init");
    }
  }
  if (!(var_x[order[0]] > 0.0) || !(var_k[order[0]] > 0.0)) {
    result.warnings.push_back("party " + std::to_string(order[0]) + ": zero marginal variance in the anchor party");
  }

  const double init_hx = scaled_entropy(cx, init_eta, options.bin_fraction);
  const double init_hk = scaled_entropy(ck, init_beta, options.bin_fraction);
  result.init_witness_gebits = witness_from_entropies(init_eta, init_beta, init_hx, init_hk);
  result.evaluations = 2;

  // Coarse stage: entropies factor per vector, only the min-term couples them.
  const auto eta_grid = grid_candidates(cx, eta, options, result.evaluations);
  const auto beta_grid = grid_candidates(ck, beta, options, result.evaluations);
  double best = kNegInf;
  Candidate best_eta = eta_grid.front();
  Candidate best_beta = beta_grid.front();
  for (const auto& e : eta_grid) {
    for (const auto& b : beta_grid) {
      const double w = witness_from_entropies(e.direction.vector(), b.direction.vector(), e.entropy, b.entropy);
      if (w > best) {
        best = w;
        best_eta = e;
        best_beta = b;
      }
    }
  }

  // Refinement: golden section along each free log-magnitude in turn.
  const double bound = std::log(options.max_ratio);
  const double step = options.grid_points > 1 ? 2.0 * bound / (options.grid_points - 1) : bound;
  for (int sweep = 0; sweep < options.refinement_sweeps && std::isfinite(best); ++sweep) {
    for (int which = 0; which < 2; ++which) {
      Candidate& moving = which == 0 ? best_eta : best_beta;
      const Candidate& other = which == 0 ? best_beta : best_eta;
      const SampleSet& data = which == 0 ? cx : ck;
      for (std::size_t slot = 0; slot < 2; ++slot) {
        if (moving.direction.fixed[slot]) continue;
        auto eval = [&](double log_mag) {
          Direction d = moving.direction;
          d.log_mag[slot] = log_mag;
          const double h = scaled_entropy(data, d.vector(), options.bin_fraction);
          return which == 0 ? witness_from_entropies(d.vector(), other.direction.vector(), h, other.entropy)
                            : witness_from_entropies(other.direction.vector(), d.vector(), other.entropy, h);
        };
        const double centre = moving.direction.log_mag[slot];
        const double lo = std::max(-bound, centre - step);
        const double hi = std::min(bound, centre + step);
        const auto [x, fx] = golden_maximize(eval, lo, hi, options.golden_tolerance, result.evaluations);
        if (fx > best) {
          best = fx;
          moving.direction.log_mag[slot] = x;
          moving.entropy = scaled_entropy(data, moving.direction.vector(), options.bin_fraction);
          ++result.evaluations;
        }
      }
    }
  }

  Vec3 out_eta = init.eta;
  Vec3 out_beta = init.beta;
  result.witness_gebits = result.init_witness_gebits;
  if (best > result.init_witness_gebits) {
    const Vec3 ce = best_eta.direction.vector();
    const Vec3 cb = best_beta.direction.vector();
    for (std::size_t slot = 0; slot < 3; ++slot) {
      out_eta[order[slot]] = ce[slot];
      out_beta[order[slot]] = cb[slot];
    }
    result.witness_gebits = best;
  }
  result.coefficients = {out_eta, out_beta};
  return result;
}

}  // namespace tripent
