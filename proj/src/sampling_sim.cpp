#include "tripent/sampling_sim.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numeric>
#include <span>
#include <limits>
#include <stdexcept>
#include <utility>

#include "tripent/error.hpp"
#include "tripent/random.hpp"
#include "witness_internal.hpp"

namespace tripent {

namespace {

constexpr int kDepthLimit = 40;

int octant_of(const Vec3& p, const Vec3& mid) {
  return (p[0] >= mid[0] ? 1 : 0) | (p[1] >= mid[1] ? 2 : 0) | (p[2] >= mid[2] ? 4 : 0);
}

struct Builder {
  const std::vector<Vec3>& points;
  std::uint64_t threshold;
  int max_depth;
  std::vector<TreeCell>& cells;
  std::vector<std::uint32_t> scratch;

  void refine(std::size_t cell_index, std::span<std::uint32_t> members) {
    const TreeCell cell = cells[cell_index];
    if (cell.count < threshold || cell.depth >= max_depth) return;

    const double half = 0.5 * cell.side;
    const Vec3 mid{cell.lower[0] + half, cell.lower[1] + half, cell.lower[2] + half};

    // Counting sort of the members into octants.
    std::array<std::size_t, 9> offset{};
    for (std::uint32_t m : members) ++offset[static_cast<std::size_t>(octant_of(points[m], mid)) + 1];
    std::partial_sum(offset.begin(), offset.end(), offset.begin());
    std::array<std::size_t, 8> cursor{};
    std::copy(offset.begin(), offset.end() - 1, cursor.begin());
    std::span<std::uint32_t> tmp(scratch.data(), members.size());
    for (std::uint32_t m : members) tmp[cursor[static_cast<std::size_t>(octant_of(points[m], mid))]++] = m;
    std::copy(tmp.begin(), tmp.end(), members.begin());

    const auto first = static_cast<std::int64_t>(cells.size());
    cells[cell_index].first_child = first;
    for (int o = 0; o < 8; ++o) {
      const Vec3 lower{(o & 1) ? mid[0] : cell.lower[0], (o & 2) ? mid[1] : cell.lower[1],
                       (o & 4) ? mid[2] : cell.lower[2]};
      cells.push_back({lower, half, offset[o + 1] - offset[o], cell.depth + 1, -1});
    }
    for (int o = 0; o < 8; ++o) {
      refine(static_cast<std::size_t>(first + o), members.subspan(offset[o], offset[o + 1] - offset[o]));
    }
  }
};

double sum_abs(const Vec3& c) { return std::abs(c[0]) + std::abs(c[1]) + std::abs(c[2]); }

}  // namespace

PartitionTree PartitionTree::build(const SampleSet& samples, Basis basis, double half_width, std::uint64_t threshold,
                                   int max_depth) {
  if (!(half_width > 0.0) || !std::isfinite(half_width)) throw UsageError("PartitionTree: half width must be positive");
  if (threshold < 1) throw UsageError("PartitionTree: threshold must be >= 1");
  if (max_depth < 1 || max_depth > kDepthLimit) throw UsageError("PartitionTree: max_depth must lie in [1, 40]");
  if (samples.size() > std::numeric_limits<std::uint32_t>::max()) throw UsageError("PartitionTree: too many samples");

  PartitionTree tree;
  tree.basis_ = basis;
  tree.half_width_ = half_width;
  tree.threshold_ = threshold;
  tree.max_depth_ = max_depth;

  std::vector<std::uint32_t> members;
  members.reserve(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& p = samples.points[i];
    const bool inside = std::all_of(p.begin(), p.end(), [&](double x) { return x >= -half_width && x < half_width; });
    if (inside) {
      members.push_back(static_cast<std::uint32_t>(i));
    } else {
      ++tree.dropped_;
    }
  }
  tree.cells_.push_back({{-half_width, -half_width, -half_width}, 2.0 * half_width, members.size(), 0, -1});

  Builder builder{samples.points, threshold, max_depth, tree.cells_, std::vector<std::uint32_t>(members.size())};
  builder.refine(0, members);
  return tree;
}

std::vector<std::size_t> PartitionTree::occupied_leaves() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    if (cells_[i].is_leaf() && cells_[i].count > 0) out.push_back(i);
  }
  return out;
}

int PartitionTree::finest_occupied_depth() const {
  int d = 0;
  for (std::size_t i : occupied_leaves()) d = std::max(d, cells_[i].depth);
  return d;
}

int PartitionTree::coarsest_occupied_depth() const {
  int d = kDepthLimit;
  for (std::size_t i : occupied_leaves()) d = std::min(d, cells_[i].depth);
  return d;
}

std::vector<CoincidenceRecord> PartitionTree::records() const {
  std::vector<CoincidenceRecord> out;
  out.reserve(cells_.size());
  std::function<void(std::size_t, std::string&)> visit = [&](std::size_t i, std::string& path) {
    out.push_back({path, cells_[i].count, basis_});
    if (cells_[i].is_leaf()) return;
    for (int o = 0; o < 8; ++o) {
      path.push_back(static_cast<char>('0' + o));
      visit(static_cast<std::size_t>(cells_[i].first_child + o), path);
      path.pop_back();
    }
  };
  std::string path;
  visit(0, path);
  return out;
}

void PartitionTree::check_invariants() const {
  for (const auto& cell : cells_) {
    if (cell.is_leaf()) {
      if (cell.depth > max_depth_) throw std::logic_error("PartitionTree: leaf deeper than max_depth");
      continue;
    }
    std::uint64_t sum = 0;
    for (int o = 0; o < 8; ++o) {
      const auto& child = cells_[static_cast<std::size_t>(cell.first_child + o)];
      if (child.depth != cell.depth + 1 || child.side * 2.0 != cell.side) {
        throw std::logic_error("PartitionTree: child geometry does not bisect its parent");
      }
      sum += child.count;
    }
    if (sum != cell.count) throw std::logic_error("PartitionTree: child counts do not sum to parent count");
  }
}

PartitionTree PartitionTree::with_leaf_counts(const std::vector<std::uint64_t>& leaf_counts) const {
  const auto leaves = occupied_leaves();
  if (leaf_counts.size() != leaves.size()) throw UsageError("PartitionTree::with_leaf_counts: size mismatch");
  PartitionTree out = *this;
  for (auto& c : out.cells_) {
    if (c.is_leaf()) c.count = 0;
  }
  for (std::size_t i = 0; i < leaves.size(); ++i) out.cells_[leaves[i]].count = leaf_counts[i];
  // Children are always appended after their parent, so a reverse sweep re-sums bottom-up.
  for (std::size_t i = out.cells_.size(); i-- > 0;) {
    auto& c = out.cells_[i];
    if (c.is_leaf()) continue;
    std::uint64_t sum = 0;
    for (int o = 0; o < 8; ++o) sum += out.cells_[static_cast<std::size_t>(c.first_child + o)].count;
    c.count = sum;
  }
  return out;
}

std::string format_tree_records(const PartitionTree& tree) {
  std::string out = "path,count\n";
  for (const auto& r : tree.records()) {
    out += r.path;
    out += ',';
    out += std::to_string(r.count);
    out += '\n';
  }
  return out;
}

std::uint64_t default_refinement_threshold(std::size_t n_samples) {
  return std::max<std::uint64_t>(16, n_samples / 4096);
}

double scan_half_width(const TripleGaussianState& widths) {
  return 6.0 * std::max({widths.sigma_u, widths.sigma_v, widths.sigma_w});
}

PartitionTree simulate_adaptive_scan(const TripleGaussianState& s, Basis basis, std::size_t n_samples,
                                     std::uint64_t threshold, int max_depth, std::uint64_t seed) {
  if (n_samples < 1) throw UsageError("simulate_adaptive_scan: n_samples must be >= 1");
  if (threshold < 1) throw UsageError("simulate_adaptive_scan: threshold must be >= 1");
  if (max_depth < 1) throw UsageError("simulate_adaptive_scan: max_depth must be >= 1");
  const TripleGaussianState widths = basis == Basis::position ? s : to_momentum(s);
  const SampleSet samples = sample_positions(widths, n_samples, seed);
  return PartitionTree::build(samples, basis, scan_half_width(widths), threshold, max_depth);
}

Histogram1D tree_to_linear_histogram(const PartitionTree& tree, const Vec3& c) {
  const auto leaves = tree.occupied_leaves();
  if (leaves.empty()) throw UsageError("tree_to_linear_histogram: tree has no counts");
  const double scale = sum_abs(c);
  if (!(scale > 0.0) || !std::isfinite(scale)) throw ValidationError("tree_to_linear_histogram: zero coefficients");

  const auto& cells = tree.cells();
  double finest_side = cells[leaves.front()].side;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i : leaves) {
    const auto& cell = cells[i];
    finest_side = std::min(finest_side, cell.side);
    const Vec3 centre = cell.center();
    const double mid = c[0] * centre[0] + c[1] * centre[1] + c[2] * centre[2];
    const double half = 0.5 * cell.side * scale;
    lo = std::min(lo, mid - half);
    hi = std::max(hi, mid + half);
  }

  Histogram1D h;
  h.bin_width = finest_side * scale;
  h.origin = lo;
  const double span = std::ceil((hi - lo) / h.bin_width - 1e-9);
  if (span > 1e8) throw UsageError("tree_to_linear_histogram: projected range too wide for the finest cells");
  h.counts.assign(static_cast<std::size_t>(std::max(1.0, span)), 0.0);

  const auto last = static_cast<std::ptrdiff_t>(h.counts.size()) - 1;
  for (std::size_t i : leaves) {
    const auto& cell = cells[i];
    const Vec3 centre = cell.center();
    const double mid = c[0] * centre[0] + c[1] * centre[1] + c[2] * centre[2];
    const double width = cell.side * scale;
    const double a = (mid - 0.5 * width - h.origin) / h.bin_width;  // interval in bin units
    const double b = a + width / h.bin_width;
    const double density = static_cast<double>(cell.count) / (b - a);
    auto first = std::clamp<std::ptrdiff_t>(static_cast<std::ptrdiff_t>(std::floor(a)), 0, last);
    auto final = std::clamp<std::ptrdiff_t>(static_cast<std::ptrdiff_t>(std::ceil(b)) - 1, 0, last);
    for (auto k = first; k <= final; ++k) {
      const double overlap = std::min(b, static_cast<double>(k + 1)) - std::max(a, static_cast<double>(k));
      if (overlap > 0.0) h.counts[static_cast<std::size_t>(k)] += density * overlap;
    }
  }
  return h;
}

Histogram1D tree_to_linear_histogram(const PartitionTree& tree, const WitnessCoefficients& coeffs) {
  return tree_to_linear_histogram(tree, tree.basis() == Basis::position ? coeffs.eta : coeffs.beta);
}

EntanglementReport witness_from_trees(const PartitionTree& position_tree, const PartitionTree& momentum_tree,
                                      const WitnessCoefficients& coeffs, std::size_t bootstrap_replicates,
                                      std::uint64_t bootstrap_seed) {
  if (position_tree.basis() != Basis::position || momentum_tree.basis() != Basis::momentum) {
    throw UsageError("witness_from_trees: expected a position tree and a momentum tree");
  }
  coeffs.validate();

  const Histogram1D hx = tree_to_linear_histogram(position_tree, coeffs.eta);
  const Histogram1D hk = tree_to_linear_histogram(momentum_tree, coeffs.beta);

  EntanglementReport report;
  report.entropy_x_bits = differential_entropy_from_histogram(hx);
  report.entropy_k_bits = differential_entropy_from_histogram(hk);
  report.set_witness(continuous_witness(coeffs, report.entropy_x_bits, report.entropy_k_bits));

  // Bootstrap over the measured leaf counts with the tree geometry held fixed.
  if (bootstrap_replicates >= 2) {
    auto engine = make_substream(bootstrap_seed, 0xB007);
    auto leaf_weights = [](const PartitionTree& t) {
      std::vector<double> w;
      for (std::size_t i : t.occupied_leaves()) w.push_back(static_cast<double>(t.cells()[i].count));
      return w;
    };
    const auto wx = leaf_weights(position_tree);
    const auto wk = leaf_weights(momentum_tree);
    auto resample = [&](const PartitionTree& t, const std::vector<double>& w) {
      const auto draw = detail::multinomial_resample(w, t.total(), engine);
      std::vector<std::uint64_t> counts(draw.size());
      std::transform(draw.begin(), draw.end(), counts.begin(), [](double x) { return static_cast<std::uint64_t>(x); });
      return t.with_leaf_counts(counts);
    };
    std::vector<double> values;
    for (std::size_t r = 0; r < bootstrap_replicates; ++r) {
      const double bx = differential_entropy_from_histogram(tree_to_linear_histogram(resample(position_tree, wx), coeffs.eta));
      const double bk = differential_entropy_from_histogram(tree_to_linear_histogram(resample(momentum_tree, wk), coeffs.beta));
      values.push_back(continuous_witness(coeffs, bx, bk));
    }
    report.bootstrap_se = detail::sample_standard_deviation(values);
  }

  auto describe = [](const PartitionTree& t, const Histogram1D& h) {
    return nlohmann::json{
        {"half_width", t.half_width()},
        {"threshold", t.threshold()},
        {"max_depth", t.max_depth()},
        {"counted", t.total()},
        {"dropped", t.dropped()},
        {"cells", t.cells().size()},
        {"occupied_leaves", t.occupied_leaves().size()},
        {"finest_leaf_depth", t.finest_occupied_depth()},
        {"coarsest_leaf_depth", t.coarsest_occupied_depth()},
        {"bin_width", h.bin_width},
    };
  };
  report.inputs = {
      {"eta", coeffs.eta},
      {"beta", coeffs.beta},
      {"min_product_convention", kMinProductConvention},
      {"position_scan", describe(position_tree, hx)},
      {"momentum_scan", describe(momentum_tree, hk)},
      {"bootstrap_replicates", bootstrap_replicates},
      {"bootstrap_seed", bootstrap_seed},
  };
  return report;
}

EndToEndRun run_end_to_end(const TripleGaussianState& s, const WitnessCoefficients& coeffs,
                           const ScanSettings& settings) {
  coeffs.validate();
  const std::uint64_t threshold =
      settings.threshold == 0 ? default_refinement_threshold(settings.n_samples) : settings.threshold;
  const auto position = simulate_adaptive_scan(s, Basis::position, settings.n_samples, threshold, settings.max_depth,
                                               substream_seed(settings.seed, 1));
  const auto momentum = simulate_adaptive_scan(s, Basis::momentum, settings.n_samples, threshold, settings.max_depth,
                                               substream_seed(settings.seed, 2));
  EntanglementReport report =
      witness_from_trees(position, momentum, coeffs, settings.bootstrap_replicates, substream_seed(settings.seed, 3));

  if (s.is_symmetric()) report.exact_e3f_gebits = exact_e3f(s);
  report.inputs["state"] = {{"sigma_u", s.sigma_u}, {"sigma_v", s.sigma_v}, {"sigma_w", s.sigma_w}};
  report.inputs["n_samples"] = settings.n_samples;
  report.inputs["threshold"] = threshold;
  report.inputs["threshold_rule"] = settings.threshold == 0 ? "max(16, n/4096)" : "user";
  report.inputs["max_depth"] = settings.max_depth;
  report.inputs["seed"] = settings.seed;
  report.inputs["analytic_witness_gebits"] = analytic_witness(s, coeffs);
  return {position, momentum, std::move(report)};
}

}  // namespace tripent
