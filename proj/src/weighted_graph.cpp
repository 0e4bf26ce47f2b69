#include "dchsbm/weighted_graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace dchsbm {

WeightedGraph::WeightedGraph(int node_count, std::vector<WeightedPair> pairs)
    : node_count_(node_count), degrees_(node_count, 0.0) {
  for (auto& p : pairs) {
    if (p.u < 0 || p.v < 0 || p.u >= node_count || p.v >= node_count)
      throw std::invalid_argument("graph endpoint out of range");
    if (p.weight < 0.0) throw std::invalid_argument("graph weights must be nonnegative");
    if (p.u > p.v) std::swap(p.u, p.v);
  }
  std::sort(pairs.begin(), pairs.end(), [](const WeightedPair& a, const WeightedPair& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
  for (const auto& p : pairs) {
    if (!pairs_.empty() && pairs_.back().u == p.u && pairs_.back().v == p.v)
      pairs_.back().weight += p.weight;
    else
      pairs_.push_back(p);
  }
  std::erase_if(pairs_, [](const WeightedPair& p) { return p.weight == 0.0; });
  for (const auto& p : pairs_) {
    degrees_[p.u] += p.weight;
    degrees_[p.v] += p.weight;
    total_weight_ += p.weight;
  }
}

double WeightedGraph::weight(int u, int v) const {
  if (u > v) std::swap(u, v);
  auto it = std::lower_bound(pairs_.begin(), pairs_.end(), WeightedPair{u, v, 0.0},
                             [](const WeightedPair& a, const WeightedPair& b) {
                               return a.u != b.u ? a.u < b.u : a.v < b.v;
                             });
  return it != pairs_.end() && it->u == u && it->v == v ? it->weight : 0.0;
}

Hypergraph WeightedGraph::to_hypergraph() const {
  std::vector<std::vector<int>> edges;
  std::vector<double> weights;
  edges.reserve(pairs_.size());
  weights.reserve(pairs_.size());
  for (const auto& p : pairs_) {
    edges.push_back({p.u, p.v});
    weights.push_back(p.weight);
  }
  return Hypergraph(node_count_, std::move(edges), std::move(weights), /*real_weights=*/true);
}

}  // namespace dchsbm
