#include "tripent/triple_gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "parallel.hpp"
#include "tripent/entropy.hpp"
#include "tripent/error.hpp"
#include "tripent/random.hpp"

namespace tripent {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kInvSqrt3 = 0.57735026918962576451;
constexpr double kInvSqrt6 = 0.40824829046386301637;

// Above this width ratio h2(l)/l is evaluated by its small-l expansion.
constexpr double kAsymptoticRatio = 1e8;

constexpr std::size_t kSampleBlock = 1 << 16;

void require_symmetric(const TripleGaussianState& s, const char* what) {
  if (!s.is_symmetric()) {
    throw UnsupportedCaseError(std::string(what) + ": closed form requires sigma_v == sigma_w");
  }
}

// max(su, sv) / min(su, sv) >= 1
double width_ratio(const TripleGaussianState& s) {
  return std::max(s.sigma_u, s.sigma_v) / std::min(s.sigma_u, s.sigma_v);
}

}  // namespace

const char* to_string(Basis b) { return b == Basis::position ? "position" : "momentum"; }

TripleGaussianState::TripleGaussianState(double su, double sv, double sw) : sigma_u(su), sigma_v(sv), sigma_w(sw) {
  for (double s : {su, sv, sw}) {
    if (!(s > 0.0) || !std::isfinite(s)) {
      throw ValidationError("TripleGaussianState: widths must be positive and finite");
    }
  }
}

Vec3 rotate_to_uvw(double x1, double x2, double x3) {
  return {(x1 + x2 + x3) * kInvSqrt3, 2.0 * kInvSqrt6 * (-x1 + 0.5 * (x2 + x3)), (x2 - x3) * kInvSqrt2};
}

Vec3 rotate_from_uvw(double xu, double xv, double xw) {
  const double a = xu * kInvSqrt3;
  const double b = xv * kInvSqrt6;
  const double c = xw * kInvSqrt2;
  return {a - 2.0 * b, a + b + c, a + b - c};
}

double e3f_lambda0(const TripleGaussianState& s) {
  require_symmetric(s, "e3f_lambda0");
  // sqrt(5 + 2(r^2 + 1/r^2)) = r sqrt(2 + 5/r^2 + 2/r^4) with r >= 1 stays finite for any ratio.
  const double r = width_ratio(s);
  const double q2 = 1.0 / (r * r);
  const double root = r * std::sqrt(2.0 + 5.0 * q2 + 2.0 * q2 * q2);
  return std::min(1.0, 2.0 / (1.0 + root / 3.0));
}

double exact_e3f(const TripleGaussianState& s) {
  const double lambda = e3f_lambda0(s);
  if (lambda >= 1.0) return 0.0;
  constexpr double inv_ln2 = 1.0 / std::numbers::ln2;
  if (width_ratio(s) > kAsymptoticRatio) {
    return -std::log2(lambda) + inv_ln2 - 0.5 * lambda * inv_ln2;
  }
  // h2(l)/l with the (1 - l) log(1 - l) term through log1p.
  return -std::log2(lambda) - (1.0 - lambda) / lambda * std::log1p(-lambda) * inv_ln2;
}

PairStatistics pair_statistics(const TripleGaussianState& s) {
  require_symmetric(s, "pair_statistics");
  const double su2 = s.sigma_u * s.sigma_u;
  const double sv2 = s.sigma_v * s.sigma_v;
  return {
      .sd_x_sum = std::sqrt((4.0 * su2 + 2.0 * sv2) / 3.0),
      .sd_x_diff = s.sigma_v * std::numbers::sqrt2,
      .sd_k_sum = std::sqrt(1.0 / (3.0 * su2) + 1.0 / (6.0 * sv2)),
      .sd_k_diff = 1.0 / (s.sigma_v * std::numbers::sqrt2),
  };
}

double mancini_bound(const TripleGaussianState& s) {
  require_symmetric(s, "mancini_bound");
  const double rv = s.sigma_v / s.sigma_u;
  const double ru = s.sigma_u / s.sigma_v;
  const double first = -0.5 * std::log2(2.0 * rv * rv / 3.0 + 1.0 / 3.0);
  const double second = -0.5 * std::log2(2.0 * ru * ru / 3.0 + 1.0 / 3.0);
  return std::max(first, second);
}

TripleGaussianState to_momentum(const TripleGaussianState& s) {
  return {0.5 / s.sigma_u, 0.5 / s.sigma_v, 0.5 / s.sigma_w};
}

double birth_zone(const TripleGaussianState& s) {
  require_symmetric(s, "birth_zone");
  // x1 - (x2 + x3)/2 = -sqrt(3/2) x_v
  return 4.0 / 3.0 * std::sqrt(1.5) * s.sigma_v;
}

double linear_combination_sd(const TripleGaussianState& s, const Vec3& c) {
  const Vec3 cu = coefficients_in_uvw(c);
  return std::hypot(cu[0] * s.sigma_u, cu[1] * s.sigma_v, cu[2] * s.sigma_w);
}

SampleSet sample_positions(const TripleGaussianState& s, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw UsageError("sample_positions: n must be at least 1");
  SampleSet out;
  out.points.resize(n);
  const std::size_t blocks = (n + kSampleBlock - 1) / kSampleBlock;
  detail::parallel_for(blocks, [&](std::size_t b) {
    auto engine = make_substream(seed, b);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const std::size_t begin = b * kSampleBlock;
    const std::size_t end = std::min(n, begin + kSampleBlock);
    for (std::size_t i = begin; i < end; ++i) {
      const double u = gauss(engine) * s.sigma_u;
      const double v = gauss(engine) * s.sigma_v;
      const double w = gauss(engine) * s.sigma_w;
      out.points[i] = rotate_from_uvw(u, v, w);
    }
  });
  return out;
}

}  // namespace tripent
