#include "tripent/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <numeric>
#include <string>

#include "tripent/error.hpp"

namespace tripent {

namespace {

double plogp_sum(std::span<const double> p) {
  double h = 0.0;
  for (double x : p) {
    if (x > 0.0) h -= x * std::log2(x);
  }
  return h;
}

}  // namespace

DiscretePMF::DiscretePMF(std::vector<double> probabilities, std::vector<std::size_t> shape)
    : probabilities_(std::move(probabilities)), shape_(std::move(shape)) {
  if (shape_.empty() || shape_.size() > 3) {
    throw ValidationError("DiscretePMF: 1 to 3 axes required, got " + std::to_string(shape_.size()));
  }
  const std::size_t expected =
      std::accumulate(shape_.begin(), shape_.end(), std::size_t{1}, std::multiplies<>());
  if (expected != probabilities_.size() || expected == 0) {
    throw ValidationError("DiscretePMF: shape product " + std::to_string(expected) +
                          " does not match entry count " + std::to_string(probabilities_.size()));
  }
  double total = 0.0;
  for (double x : probabilities_) {
    if (!(x >= 0.0) || !std::isfinite(x)) throw ValidationError("DiscretePMF: negative or non-finite entry");
    total += x;
  }
  if (std::abs(total - 1.0) > kNormalizationTolerance) {
    throw ValidationError("DiscretePMF: entries sum to " + std::to_string(total) + ", not 1");
  }
  for (double& x : probabilities_) x /= total;
}

DiscretePMF DiscretePMF::from_counts(std::span<const double> counts, std::vector<std::size_t> shape) {
  double total = 0.0;
  for (double c : counts) {
    if (!(c >= 0.0)) throw ValidationError("DiscretePMF::from_counts: negative count");
    total += c;
  }
  if (total <= 0.0) throw UsageError("DiscretePMF::from_counts: no counts");
  std::vector<double> p(counts.begin(), counts.end());
  for (double& x : p) x /= total;
  return DiscretePMF(std::move(p), std::move(shape));
}

double DiscretePMF::at(std::span<const std::size_t> index) const {
  if (index.size() != shape_.size()) throw UsageError("DiscretePMF::at: wrong index rank");
  std::size_t flat = 0;
  for (std::size_t a = 0; a < shape_.size(); ++a) {
    if (index[a] >= shape_[a]) throw UsageError("DiscretePMF::at: index out of range");
    flat = flat * shape_[a] + index[a];
  }
  return probabilities_[flat];
}

DiscretePMF DiscretePMF::marginal(std::vector<std::size_t> keep_axes) const {
  std::sort(keep_axes.begin(), keep_axes.end());
  keep_axes.erase(std::unique(keep_axes.begin(), keep_axes.end()), keep_axes.end());
  if (keep_axes.empty()) throw UsageError("DiscretePMF::marginal: no axes kept");
  for (std::size_t a : keep_axes) {
    if (a >= shape_.size()) throw UsageError("DiscretePMF::marginal: axis out of range");
  }

  std::vector<std::size_t> out_shape;
  for (std::size_t a : keep_axes) out_shape.push_back(shape_[a]);
  const std::size_t out_size =
      std::accumulate(out_shape.begin(), out_shape.end(), std::size_t{1}, std::multiplies<>());
  std::vector<double> out(out_size, 0.0);

  std::vector<std::size_t> idx(shape_.size(), 0);
  for (double p : probabilities_) {
    std::size_t flat = 0;
    for (std::size_t k = 0; k < keep_axes.size(); ++k) flat = flat * out_shape[k] + idx[keep_axes[k]];
    out[flat] += p;
    // odometer increment, last axis fastest
    for (std::size_t a = shape_.size(); a-- > 0;) {
      if (++idx[a] < shape_[a]) break;
      idx[a] = 0;
    }
  }
  // Summation can drift from 1 by a few ulps; renormalize inside the constructor's tolerance.
  return DiscretePMF(std::move(out), std::move(out_shape));
}

double Histogram1D::total() const { return std::accumulate(counts.begin(), counts.end(), 0.0); }

double shannon_entropy(const DiscretePMF& p) { return plogp_sum(p.probabilities()); }

double conditional_entropy(const DiscretePMF& p, std::size_t target_axis) {
  if (p.axes() < 2) throw UsageError("conditional_entropy: at least two axes required");
  if (target_axis >= p.axes()) throw UsageError("conditional_entropy: target axis out of range");
  std::vector<std::size_t> others;
  for (std::size_t a = 0; a < p.axes(); ++a) {
    if (a != target_axis) others.push_back(a);
  }
  const double h = shannon_entropy(p) - shannon_entropy(p.marginal(others));
  return std::max(h, 0.0);
}

double mutual_information(const DiscretePMF& p) {
  if (p.axes() != 2) throw UsageError("mutual_information: exactly two axes required");
  const double mi = shannon_entropy(p.marginal({0})) + shannon_entropy(p.marginal({1})) - shannon_entropy(p);
  return std::max(mi, 0.0);
}

double binary_entropy(double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw DomainError("binary_entropy: lambda must lie in [0, 1]");
  }
  if (lambda == 0.0 || lambda == 1.0) return 0.0;
  return -lambda * std::log2(lambda) - (1.0 - lambda) * std::log2(1.0 - lambda);
}

double gaussian_differential_entropy(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw DomainError("gaussian_differential_entropy: sigma must be positive and finite");
  }
  return 0.5 * std::log2(2.0 * std::numbers::pi * std::numbers::e) + std::log2(sigma);
}

double differential_entropy_from_histogram(const Histogram1D& h) {
  if (!(h.bin_width > 0.0)) throw UsageError("differential_entropy_from_histogram: bin width must be positive");
  const double total = h.total();
  if (!(total > 0.0)) throw UsageError("differential_entropy_from_histogram: empty histogram");
  double H = 0.0;
  for (double c : h.counts) {
    if (c < 0.0) throw ValidationError("differential_entropy_from_histogram: negative count");
    if (c > 0.0) {
      const double p = c / total;
      H -= p * std::log2(p);
    }
  }
  return H + std::log2(h.bin_width);
}

Histogram1D histogram_from_values(std::span<const double> values, double bin_width) {
  if (!(bin_width > 0.0)) throw UsageError("histogram_from_values: bin width must be positive");
  if (values.empty()) throw UsageError("histogram_from_values: no values");
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  if (!std::isfinite(*lo_it) || !std::isfinite(*hi_it)) throw ValidationError("histogram_from_values: non-finite value");
  const double first = std::floor(*lo_it / bin_width);
  const double span = std::floor(*hi_it / bin_width) - first + 1.0;
  if (span > 1e8) throw UsageError("histogram_from_values: bin width too fine for the data range");

  Histogram1D h;
  h.bin_width = bin_width;
  h.origin = first * bin_width;
  h.counts.assign(static_cast<std::size_t>(span), 0.0);
  for (double v : values) {
    auto i = static_cast<std::ptrdiff_t>(std::floor(v / bin_width) - first);
    i = std::clamp<std::ptrdiff_t>(i, 0, static_cast<std::ptrdiff_t>(h.counts.size()) - 1);
    h.counts[static_cast<std::size_t>(i)] += 1.0;
  }
  return h;
}

Histogram1D coarsen_by_two(const Histogram1D& h) {
  Histogram1D out;
  out.bin_width = 2.0 * h.bin_width;
  out.origin = h.origin;
  out.counts.assign((h.counts.size() + 1) / 2, 0.0);
  for (std::size_t i = 0; i < h.counts.size(); ++i) out.counts[i / 2] += h.counts[i];
  return out;
}

}  // namespace tripent
