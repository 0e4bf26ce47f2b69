#pragma once

#include <span>
#include <vector>

#include "dchsbm/hypergraph.hpp"

namespace dchsbm {

struct WeightedPair {
  int u = 0;
  int v = 0;
  double weight = 0.0;
};

/// Undirected weighted graph with merged parallel pairs. A self-loop of
/// weight w adds 2w to its node's degree, so degrees are the row sums of the
/// symmetric adjacency matrix with loops counted at both endpoints.
class WeightedGraph {
 public:
  WeightedGraph() = default;
  /// 0-based endpoints; weights must be nonnegative. Zero-weight pairs are dropped.
  WeightedGraph(int node_count, std::vector<WeightedPair> pairs);

  int node_count() const { return node_count_; }
  std::span<const WeightedPair> pairs() const { return pairs_; }
  std::span<const double> degrees() const { return degrees_; }
  double degree(int i) const { return degrees_[i]; }
  double total_weight() const { return total_weight_; }

  /// Lookup of w_uv (0 when absent).
  double weight(int u, int v) const;

  /// The same graph as a hypergraph of 2-edges with real weights.
  Hypergraph to_hypergraph() const;

 private:
  int node_count_ = 0;
  std::vector<WeightedPair> pairs_;
  std::vector<double> degrees_;
  double total_weight_ = 0.0;
};

}  // namespace dchsbm
