#include "dchsbm/hypergraph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "dchsbm/weighted_graph.hpp"

namespace dchsbm {

Hypergraph::Hypergraph(int node_count, std::vector<std::vector<int>> edges,
                       std::vector<double> weights, bool real_weights)
    : node_count_(node_count), real_weights_(real_weights) {
  if (node_count < 0) throw std::invalid_argument("node count must be nonnegative");
  if (edges.size() != weights.size())
    throw std::invalid_argument("edge and weight lists differ in length");
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (edges[e].empty()) throw std::invalid_argument("empty hyperedge");
    for (int v : edges[e])
      if (v < 0 || v >= node_count) throw std::invalid_argument("node id out of range");
    if (!(weights[e] > 0.0) || !std::isfinite(weights[e]))
      throw std::invalid_argument("edge weights must be positive");
    if (!real_weights && weights[e] != std::floor(weights[e]))
      throw std::invalid_argument("edge weights must be integers");
    std::sort(edges[e].begin(), edges[e].end());
  }

  std::vector<std::size_t> order(edges.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (edges[a].size() != edges[b].size()) return edges[a].size() < edges[b].size();
    return edges[a] < edges[b];
  });

  for (std::size_t pos = 0; pos < order.size();) {
    const auto& nodes = edges[order[pos]];
    double w = 0.0;
    std::size_t next = pos;
    while (next < order.size() && edges[order[next]] == nodes) w += weights[order[next++]];
    edge_nodes_.insert(edge_nodes_.end(), nodes.begin(), nodes.end());
    edge_offsets_.push_back(edge_nodes_.size());
    weights_.push_back(w);
    pos = next;
  }

  degrees_.assign(node_count_, 0.0);
  std::vector<std::size_t> incident_count(node_count_, 0);
  for (std::size_t e = 0; e < weights_.size(); ++e) {
    auto nodes = edge(e);
    const int k = static_cast<int>(nodes.size());
    if (k >= static_cast<int>(size_counts_.size())) size_counts_.resize(k + 1, 0.0);
    size_counts_[k] += weights_[e];
    total_weight_ += weights_[e];
    for (std::size_t j = 0; j < nodes.size(); ++j) {
      degrees_[nodes[j]] += weights_[e];
      if (j == 0 || nodes[j] != nodes[j - 1]) ++incident_count[nodes[j]];
    }
  }
  volume_ = std::accumulate(degrees_.begin(), degrees_.end(), 0.0);

  incidence_offsets_.assign(node_count_ + 1, 0);
  for (int i = 0; i < node_count_; ++i)
    incidence_offsets_[i + 1] = incidence_offsets_[i] + incident_count[i];
  incidence_.resize(incidence_offsets_.back());
  std::vector<std::size_t> fill(incidence_offsets_.begin(), incidence_offsets_.end() - 1);
  for (std::size_t e = 0; e < weights_.size(); ++e) {
    auto nodes = edge(e);
    for (std::size_t j = 0; j < nodes.size(); ++j)
      if (j == 0 || nodes[j] != nodes[j - 1]) incidence_[fill[nodes[j]]++] = e;
  }
}

std::vector<int> Hypergraph::realized_sizes() const {
  std::vector<int> sizes;
  for (int k = 1; k < static_cast<int>(size_counts_.size()); ++k)
    if (size_counts_[k] > 0.0) sizes.push_back(k);
  return sizes;
}

Hypergraph build_hypergraph(std::span<const EdgeInput> edges, const BuildOptions& options) {
  if (edges.empty()) throw std::invalid_argument("hypergraph has no edges");
  int max_id = 0;
  std::vector<std::vector<int>> nodes;
  std::vector<double> weights;
  nodes.reserve(edges.size());
  weights.reserve(edges.size());
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto& input = edges[e];
    if (input.nodes.empty())
      throw std::invalid_argument("empty hyperedge at position " + std::to_string(e));
    std::vector<int> zero_based;
    zero_based.reserve(input.nodes.size());
    for (int v : input.nodes) {
      if (v <= 0) throw std::invalid_argument("node ids must be positive, got " + std::to_string(v));
      max_id = std::max(max_id, v);
      zero_based.push_back(v - 1);
    }
    if (!(input.weight > 0.0))
      throw std::invalid_argument("edge weights must be positive at position " + std::to_string(e));
    nodes.push_back(std::move(zero_based));
    weights.push_back(input.weight);
  }
  return Hypergraph(std::max(max_id, options.min_nodes), std::move(nodes), std::move(weights),
                    options.real_weights);
}

CoreResult c_core(const Hypergraph& h, int c) {
  if (c < 0) throw std::invalid_argument("c_core: c must be nonnegative");
  const int n = h.node_count();
  std::vector<char> alive(n, 1);
  std::vector<char> edge_alive(h.edge_count(), 1);

  // edges[e] shrinks as nodes are removed; degrees are recomputed each round.
  std::vector<std::vector<int>> edges(h.edge_count());
  for (std::size_t e = 0; e < h.edge_count(); ++e) {
    auto nodes = h.edge(e);
    edges[e].assign(nodes.begin(), nodes.end());
  }

  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<double> degree(n, 0.0);
    for (std::size_t e = 0; e < edges.size(); ++e)
      if (edge_alive[e])
        for (int v : edges[e]) degree[v] += h.weight(e);
    for (int i = 0; i < n; ++i) {
      if (alive[i] && degree[i] < c) {
        alive[i] = 0;
        changed = true;
      }
    }
    if (!changed) break;
    for (std::size_t e = 0; e < edges.size(); ++e) {
      if (!edge_alive[e]) continue;
      const std::size_t before = edges[e].size();
      std::erase_if(edges[e], [&](int v) { return !alive[v]; });
      if (edges[e].size() != before && edges[e].size() < 2) edge_alive[e] = 0;
    }
  }

  CoreResult result;
  std::vector<int> new_id(n, -1);
  for (int i = 0; i < n; ++i) {
    if (alive[i]) {
      new_id[i] = static_cast<int>(result.original_node.size());
      result.original_node.push_back(i);
    }
  }
  std::vector<std::vector<int>> kept;
  std::vector<double> weights;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (!edge_alive[e]) continue;
    std::vector<int> mapped;
    for (int v : edges[e]) mapped.push_back(new_id[v]);
    kept.push_back(std::move(mapped));
    weights.push_back(h.weight(e));
  }
  result.core = Hypergraph(static_cast<int>(result.original_node.size()), std::move(kept),
                           std::move(weights), h.real_weights());
  return result;
}

WeightedGraph clique_projection(const Hypergraph& h, bool normalized) {
  std::vector<WeightedPair> pairs;
  for (std::size_t e = 0; e < h.edge_count(); ++e) {
    auto nodes = h.edge(e);
    const int k = static_cast<int>(nodes.size());
    if (k < 2) continue;
    const double w = normalized ? h.weight(e) / (k - 1) : h.weight(e);
    for (int a = 0; a < k; ++a)
      for (int b = a + 1; b < k; ++b) pairs.push_back({nodes[a], nodes[b], w});
  }
  return WeightedGraph(h.node_count(), std::move(pairs));
}

Hypergraph filter_max_edge_size(const Hypergraph& h, int kmax) {
  std::vector<std::vector<int>> kept;
  std::vector<double> weights;
  for (std::size_t e = 0; e < h.edge_count(); ++e) {
    if (h.edge_size(e) > kmax) continue;
    auto nodes = h.edge(e);
    kept.emplace_back(nodes.begin(), nodes.end());
    weights.push_back(h.weight(e));
  }
  return Hypergraph(h.node_count(), std::move(kept), std::move(weights), h.real_weights());
}

}  // namespace dchsbm
