#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace dchsbm {

class WeightedGraph;

/// One input hyperedge with 1-based node ids (repeats allowed).
struct EdgeInput {
  std::vector<int> nodes;
  double weight = 1.0;
};

/// Immutable weighted hypergraph. Nodes are 0-based internally; each edge is a
/// sorted node multiset, and identical multisets are merged with summed
/// weight on construction.
class Hypergraph {
 public:
  Hypergraph() = default;

  /// `edges` hold 0-based node ids in [0, node_count). Weights must be
  /// positive, and integral unless `real_weights` is set. An empty edge list
  /// is allowed here; `build_hypergraph` is the validating entry point for
  /// external data.
  Hypergraph(int node_count, std::vector<std::vector<int>> edges, std::vector<double> weights,
             bool real_weights = false);

  int node_count() const { return node_count_; }
  std::size_t edge_count() const { return weights_.size(); }
  bool empty() const { return weights_.empty(); }

  std::span<const int> edge(std::size_t e) const {
    return {edge_nodes_.data() + edge_offsets_[e], edge_offsets_[e + 1] - edge_offsets_[e]};
  }
  int edge_size(std::size_t e) const {
    return static_cast<int>(edge_offsets_[e + 1] - edge_offsets_[e]);
  }
  double weight(std::size_t e) const { return weights_[e]; }

  /// Edges containing node i, each listed once.
  std::span<const std::size_t> incident_edges(int i) const {
    return {incidence_.data() + incidence_offsets_[i],
            incidence_offsets_[i + 1] - incidence_offsets_[i]};
  }

  /// d_i: multiplicity of i in each edge times the edge weight, summed.
  std::span<const double> degrees() const { return degrees_; }
  double degree(int i) const { return degrees_[i]; }

  /// m_k, the weighted number of size-k edges (0 outside [1, max_edge_size]).
  double size_count(int k) const {
    return k >= 0 && k < static_cast<int>(size_counts_.size()) ? size_counts_[k] : 0.0;
  }
  int max_edge_size() const { return static_cast<int>(size_counts_.size()) - 1; }
  /// Sizes k with m_k > 0, ascending.
  std::vector<int> realized_sizes() const;

  /// vol(H) = sum of degrees.
  double volume() const { return volume_; }
  /// Sum over k of m_k.
  double total_weight() const { return total_weight_; }
  bool real_weights() const { return real_weights_; }

 private:
  int node_count_ = 0;
  std::vector<std::size_t> edge_offsets_{0};
  std::vector<int> edge_nodes_;
  std::vector<double> weights_;
  std::vector<std::size_t> incidence_offsets_{0};
  std::vector<std::size_t> incidence_;
  std::vector<double> degrees_;
  std::vector<double> size_counts_{0.0};
  double volume_ = 0.0;
  double total_weight_ = 0.0;
  bool real_weights_ = false;
};

struct BuildOptions {
  bool real_weights = false;
  /// Node count is max(largest id, min_nodes).
  int min_nodes = 0;
};

/// Builds a hypergraph from 1-based edge input. Throws std::invalid_argument
/// on an empty edge list, an empty edge, a node id <= 0 or a weight <= 0 (or
/// non-integral without `real_weights`).
Hypergraph build_hypergraph(std::span<const EdgeInput> edges, const BuildOptions& options = {});

struct CoreResult {
  Hypergraph core;
  /// original_node[i] is the 0-based id in the input hypergraph of core node i.
  std::vector<int> original_node;
};

/// Largest sub-hypergraph whose nodes all have degree >= c. Removed nodes are
/// dropped from their edges; edges that shrink below two nodes are dropped.
CoreResult c_core(const Hypergraph& h, int c);

/// Dyadic projection: every pair of positions in an edge contributes the edge
/// weight, divided by (k - 1) when `normalized`. Size-1 edges are ignored.
WeightedGraph clique_projection(const Hypergraph& h, bool normalized);

/// Sub-hypergraph keeping only edges of size <= kmax (node set unchanged).
Hypergraph filter_max_edge_size(const Hypergraph& h, int kmax);

}  // namespace dchsbm
