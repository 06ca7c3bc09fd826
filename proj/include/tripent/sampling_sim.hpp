#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "tripent/entropy.hpp"
#include "tripent/report.hpp"
#include "tripent/triple_gaussian.hpp"
#include "tripent/witness.hpp"

// Simulated multiresolution coincidence scan. A joint (x1, x2, x3) distribution
// is measured as counts in axis-aligned cells, i.e. products of one region per
// detector. Each cell whose count reaches the threshold is bisected along every
// axis and re-measured, down to max_depth.

namespace tripent {

struct TreeCell {
  Vec3 lower;  // lower corner
  double side;
  std::uint64_t count;
  int depth;
  std::int64_t first_child = -1;  // index of 8 consecutive children, -1 for a leaf

  bool is_leaf() const { return first_child < 0; }
  Vec3 center() const { return {lower[0] + 0.5 * side, lower[1] + 0.5 * side, lower[2] + 0.5 * side}; }
};

/// One measured cell. The path lists octant indices from the root; octant
/// bit 0 selects the upper half along x1, bit 1 along x2, bit 2 along x3.
/// The root has an empty path.
struct CoincidenceRecord {
  std::string path;
  std::uint64_t count;
  Basis measurement_basis;
};

class PartitionTree {
 public:
  /// Bins the samples into the cube [-half_width, half_width)^3 (points
  /// outside are dropped and counted) and refines every cell whose count is
  /// at least `threshold` until depth `max_depth`. The result depends only on
  /// the multiset of samples, not on their order.
  static PartitionTree build(const SampleSet& samples, Basis basis, double half_width, std::uint64_t threshold,
                             int max_depth);

  Basis basis() const { return basis_; }
  double half_width() const { return half_width_; }
  std::uint64_t threshold() const { return threshold_; }
  int max_depth() const { return max_depth_; }
  std::uint64_t dropped() const { return dropped_; }
  std::uint64_t total() const { return cells_.front().count; }

  const std::vector<TreeCell>& cells() const { return cells_; }
  const TreeCell& root() const { return cells_.front(); }

  /// Indices of leaves with a nonzero count.
  std::vector<std::size_t> occupied_leaves() const;
  int finest_occupied_depth() const;
  int coarsest_occupied_depth() const;

  /// All cells in depth-first order (children in octant order).
  std::vector<CoincidenceRecord> records() const;

  /// Throws std::logic_error if a child set does not partition its parent's
  /// count or a leaf is deeper than max_depth.
  void check_invariants() const;

  /// Same tree with leaf counts replaced (internal counts re-summed). Used by
  /// the bootstrap; `leaf_counts` follows occupied_leaves() order.
  PartitionTree with_leaf_counts(const std::vector<std::uint64_t>& leaf_counts) const;

 private:
  PartitionTree() = default;

  Basis basis_ = Basis::position;
  double half_width_ = 0.0;
  std::uint64_t threshold_ = 0;
  int max_depth_ = 0;
  std::uint64_t dropped_ = 0;
  std::vector<TreeCell> cells_;
};

/// `path,count` lines with a header row, depth-first.
std::string format_tree_records(const PartitionTree& tree);

/// max(16, n / 4096): keeps the relative Poisson error of any refined cell below 25%.
std::uint64_t default_refinement_threshold(std::size_t n_samples);

/// Support half-width used by the scans: 6 x the largest width of the state.
double scan_half_width(const TripleGaussianState& widths);

/// Draws n triplets in the requested basis (momentum via the Fourier-dual
/// widths) and builds the adaptive tree over [-B, B)^3, B = scan_half_width.
PartitionTree simulate_adaptive_scan(const TripleGaussianState& s, Basis basis, std::size_t n_samples,
                                     std::uint64_t threshold, int max_depth, std::uint64_t seed);

/// Projects the cell-level counts onto c . x.
///
/// Every occupied leaf's count is spread uniformly over the leaf's projected
/// interval (width side * sum|c_i|, centred on c . centre). The bin width is
/// the projected width of the finest occupied leaves and the grid starts at
/// the lowest interval edge, so a single-leaf tree gives one bin and a
/// uniform-depth tree gives a regular histogram of the cell centres.
Histogram1D tree_to_linear_histogram(const PartitionTree& tree, const Vec3& coefficients);

/// Chooses eta for a position tree and beta for a momentum tree.
Histogram1D tree_to_linear_histogram(const PartitionTree& tree, const WitnessCoefficients& coeffs);

struct ScanSettings {
  std::size_t n_samples = 1'000'000;
  std::uint64_t threshold = 0;  // 0 selects default_refinement_threshold(n_samples)
  int max_depth = 8;
  std::uint64_t seed = 1;
  std::size_t bootstrap_replicates = 32;
};

/// Witness from a position scan and a momentum scan of the same state.
/// `exact_e3f_gebits` is filled for symmetric states; the analytic witness,
/// drop counts, tree sizes and every setting are echoed in `inputs`.
EntanglementReport witness_from_trees(const PartitionTree& position_tree, const PartitionTree& momentum_tree,
                                      const WitnessCoefficients& coeffs, std::size_t bootstrap_replicates,
                                      std::uint64_t bootstrap_seed);

struct EndToEndRun {
  PartitionTree position_tree;
  PartitionTree momentum_tree;
  EntanglementReport report;
};

/// Position scan on seed substream 1, momentum scan on substream 2,
/// bootstrap on substream 3.
EndToEndRun run_end_to_end(const TripleGaussianState& s, const WitnessCoefficients& coeffs,
                           const ScanSettings& settings);

inline EntanglementReport end_to_end_witness(const TripleGaussianState& s, const WitnessCoefficients& coeffs,
                                             const ScanSettings& settings) {
  return run_end_to_end(s, coeffs, settings).report;
}

}  // namespace tripent
