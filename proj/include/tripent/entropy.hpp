#pragma once

#include <cstddef>
#include <span>
#include <vector>

// Entropy kernels. Every quantity is in bits, differential entropies included.

namespace tripent {

/// Joint probability mass function over 1-3 discrete axes, stored row-major
/// (last axis fastest).
///
/// Construction validates the table: entries must be non-negative, the shape
/// product must equal the entry count, and the total must be within 1e-12 of
/// one. Tables inside that tolerance are renormalized exactly.
class DiscretePMF {
 public:
  static constexpr double kNormalizationTolerance = 1e-12;

  DiscretePMF(std::vector<double> probabilities, std::vector<std::size_t> shape);

  /// Normalizes non-negative counts (or weights) into a PMF.
  static DiscretePMF from_counts(std::span<const double> counts, std::vector<std::size_t> shape);

  std::span<const double> probabilities() const { return probabilities_; }
  std::span<const std::size_t> shape() const { return shape_; }
  std::size_t axes() const { return shape_.size(); }
  std::size_t size() const { return probabilities_.size(); }

  double at(std::span<const std::size_t> index) const;

  /// Marginal over the listed axes (kept in ascending order).
  DiscretePMF marginal(std::vector<std::size_t> keep_axes) const;

 private:
  std::vector<double> probabilities_;
  std::vector<std::size_t> shape_;
};

/// Binned 1D data. `counts` are non-negative weights; integer counts for
/// sample histograms, fractional when a coarse cell is spread over bins.
struct Histogram1D {
  double bin_width = 1.0;
  double origin = 0.0;  // left edge of bin 0
  std::vector<double> counts;

  double total() const;
  double bin_center(std::size_t i) const { return origin + (static_cast<double>(i) + 0.5) * bin_width; }
};

double shannon_entropy(const DiscretePMF& p);

/// H(target | all other axes) = H(joint) - H(marginal over the other axes).
double conditional_entropy(const DiscretePMF& p, std::size_t target_axis);

/// H(A) + H(B) - H(AB) for a two-axis PMF.
double mutual_information(const DiscretePMF& p);

double binary_entropy(double lambda);

/// 1/2 log2(2 pi e sigma^2).
double gaussian_differential_entropy(double sigma);

/// Plug-in estimate H(normalized counts) + log2(bin_width).
///
/// No bias correction is applied. Coarse binning can only raise the value
/// (merging two bins costs at most one bit of H and adds exactly one bit of
/// log2 width), so the estimate errs high, which keeps witness bounds
/// conservative.
double differential_entropy_from_histogram(const Histogram1D& h);

/// Bins values into width `bin_width` with edges at origin + i * bin_width.
/// The origin is snapped to the grid floor(min / w) * w, so histograms of
/// different data with the same width share edges.
Histogram1D histogram_from_values(std::span<const double> values, double bin_width);

/// Merges adjacent bin pairs (bin 2i with 2i+1), doubling the width.
Histogram1D coarsen_by_two(const Histogram1D& h);

}  // namespace tripent
