#include <algorithm>
#include <cmath>
#include <numeric>

#include "evwin/anomaly.hpp"
#include "evwin/descriptive.hpp"
#include "evwin/error.hpp"
#include "evwin/rng.hpp"

namespace evwin {
namespace {

struct Node {
  int feature = -1;  // -1 marks a leaf
  double split = 0.0;
  int left = -1;
  int right = -1;
  std::size_t size = 0;
};

class IsolationTree {
 public:
  IsolationTree(const FeatureMatrix& x, std::vector<std::size_t> sample, std::size_t height_limit, SplitMix64& rng)
      : x_(x) {
    build(sample, 0, sample.size(), 0, height_limit, rng);
  }

  double path_length(std::span<const double> row) const {
    int node = 0;
    double depth = 0.0;
    while (nodes_[static_cast<std::size_t>(node)].feature >= 0) {
      const Node& n = nodes_[static_cast<std::size_t>(node)];
      node = row[static_cast<std::size_t>(n.feature)] <= n.split ? n.left : n.right;
      depth += 1.0;
    }
    return depth + average_path_length(nodes_[static_cast<std::size_t>(node)].size);
  }

 private:
  int build(std::vector<std::size_t>& idx, std::size_t begin, std::size_t end, std::size_t depth,
            std::size_t limit, SplitMix64& rng) {
    const int id = static_cast<int>(nodes_.size());
    nodes_.push_back(Node{});
    nodes_.back().size = end - begin;
    if (depth >= limit || end - begin <= 1) return id;

    // Attributes that still vary inside this node.
    std::vector<std::size_t> candidates;
    std::vector<double> lo(x_.dims), hi(x_.dims);
    for (std::size_t f = 0; f < x_.dims; ++f) {
      lo[f] = hi[f] = x_.row(idx[begin])[f];
      for (std::size_t k = begin + 1; k < end; ++k) {
        const double v = x_.row(idx[k])[f];
        lo[f] = std::min(lo[f], v);
        hi[f] = std::max(hi[f], v);
      }
      if (hi[f] > lo[f]) candidates.push_back(f);
    }
    if (candidates.empty()) return id;

    const std::size_t f = candidates[rng.below(candidates.size())];
    // Uniform in [lo, hi); rows <= split go left, so both sides are non-empty.
    double split = lo[f] + rng.uniform() * (hi[f] - lo[f]);
    if (split >= hi[f]) split = lo[f];
    const auto mid = std::partition(idx.begin() + static_cast<std::ptrdiff_t>(begin),
                                    idx.begin() + static_cast<std::ptrdiff_t>(end),
                                    [&](std::size_t r) { return x_.row(r)[f] <= split; }) -
                     idx.begin();

    const int left = build(idx, begin, static_cast<std::size_t>(mid), depth + 1, limit, rng);
    const int right = build(idx, static_cast<std::size_t>(mid), end, depth + 1, limit, rng);
    Node& n = nodes_[static_cast<std::size_t>(id)];
    n.feature = static_cast<int>(f);
    n.split = split;
    n.left = left;
    n.right = right;
    return id;
  }

  const FeatureMatrix& x_;
  std::vector<Node> nodes_;
};

}  // namespace

double average_path_length(std::size_t n) {
  if (n <= 1) return 0.0;
  const double m = static_cast<double>(n - 1);
  double harmonic = 0.0;
  if (n - 1 <= 4096) {
    for (std::size_t i = 1; i <= n - 1; ++i) harmonic += 1.0 / static_cast<double>(i);
  } else {
    harmonic = std::log(m) + 0.57721566490153286 + 1.0 / (2.0 * m) - 1.0 / (12.0 * m * m);
  }
  return 2.0 * harmonic - 2.0 * m / static_cast<double>(n);
}

IsolationForestResult isolation_forest(const FeatureMatrix& features, const IsolationForestParams& params) {
  const std::size_t n = features.rows();
  if (n < 8) throw Error(ErrorKind::InsufficientData, "isolation forest needs at least 8 rows");
  if (params.trees < 1 || params.subsample < 2) throw Error(ErrorKind::InvalidArgument, "need >= 1 tree, subsample >= 2");
  if (!(params.contamination > 0.0 && params.contamination < 0.5)) {
    throw Error(ErrorKind::InvalidArgument, "contamination must be in (0, 0.5)");
  }
  const std::size_t psi = std::min(params.subsample, n);
  const auto height_limit = static_cast<std::size_t>(std::ceil(std::log2(static_cast<double>(psi))));

  // One row of path lengths per tree; summed afterwards in tree order.
  const auto per_tree = kernels::map_indices<std::vector<double>>(
      params.trees,
      [&](std::size_t t) {
        SplitMix64 rng(derive_seed(params.seed, t, 0x1f0e57));
        std::vector<std::size_t> all(n);
        std::iota(all.begin(), all.end(), 0);
        for (std::size_t i = 0; i < psi; ++i) std::swap(all[i], all[i + rng.below(n - i)]);
        all.resize(psi);
        IsolationTree tree(features, std::move(all), height_limit, rng);
        std::vector<double> lengths(n);
        for (std::size_t r = 0; r < n; ++r) lengths[r] = tree.path_length(features.row(r));
        return lengths;
      },
      params.execution);

  IsolationForestResult out;
  out.subsample = psi;
  out.mean_path_length.assign(n, 0.0);
  for (const auto& lengths : per_tree)
    for (std::size_t r = 0; r < n; ++r) out.mean_path_length[r] += lengths[r];
  const double c = average_path_length(psi);
  out.scores.resize(n);
  for (std::size_t r = 0; r < n; ++r) {
    out.mean_path_length[r] /= static_cast<double>(params.trees);
    out.scores[r] = std::exp2(-out.mean_path_length[r] / c);
  }
  out.threshold = quantile(out.scores, 1.0 - params.contamination);
  out.votes.resize(n);
  for (std::size_t r = 0; r < n; ++r) out.votes[r] = out.scores[r] > out.threshold ? -1 : 1;
  return out;
}

}  // namespace evwin
