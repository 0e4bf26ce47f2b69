#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dchsbm/affinity.hpp"
#include "dchsbm/hypergraph.hpp"
#include "dchsbm/louvain.hpp"

namespace dchsbm {

/// Hypergraph over supernodes (the clusters of a labeling). Each edge keeps
/// its distinct supernodes, its original size and its weight; edges lying
/// inside one supernode are moved to `fixed_internal`, by original size.
struct CollapsedHypergraph {
  int supernode_count = 0;
  std::vector<std::size_t> edge_offsets{0};
  std::vector<int> edge_nodes;
  std::vector<int> original_size;
  std::vector<double> weight;
  std::vector<double> degrees;
  std::vector<int> member_count;
  std::vector<double> fixed_internal;
  std::vector<std::size_t> incidence_offsets;
  std::vector<std::size_t> incidence;
  /// Compact labels the supernodes came from (node -> supernode).
  std::vector<int> node_to_supernode;

  std::size_t edge_count() const { return weight.size(); }
  std::span<const int> edge(std::size_t e) const {
    return {edge_nodes.data() + edge_offsets[e], edge_offsets[e + 1] - edge_offsets[e]};
  }
  std::span<const std::size_t> incident_edges(int s) const {
    return {incidence.data() + incidence_offsets[s], incidence_offsets[s + 1] - incidence_offsets[s]};
  }
};

CollapsedHypergraph collapse(const Hypergraph& h, std::span<const int> z);

/// z'_i = zbar[supernode of i], compacted.
std::vector<int> expand(const CollapsedHypergraph& c, std::span<const int> zbar);

/// AON objective of a supernode labeling, cut form: -sum_e w_e beta_{s_e}
/// [e split] - sum_k beta_k gamma_k sum_l vol(l)^k. Internal edges are never
/// cut, so this equals objective_q_aon(H, expand(c, zbar)).
double objective_aon_collapsed(const CollapsedHypergraph& c, std::span<const int> zbar,
                               const AonWeights& weights);

/// Gain of moving supernode i to cluster `target` under zbar.
double delta_q_aon(const CollapsedHypergraph& c, std::span<const int> zbar, int i, int target,
                   const AonWeights& weights, bool regularize = false, int node_count = 0);

/// Greedy pass from supernode singletons. Returns compact supernode labels.
std::vector<int> aon_louvain_step(const CollapsedHypergraph& c, const AonWeights& weights,
                                  int node_count, const LouvainOptions& options = {},
                                  LouvainStats* stats = nullptr);

/// Collapse, step and expand until the labels stop changing. Starts from
/// singletons unless `initial` is given.
LouvainResult aon_hmll(const Hypergraph& h, const AonWeights& weights,
                       const LouvainOptions& options = {}, std::span<const int> initial = {});
/// Convenience: weights from an AON model with scale vol(H).
LouvainResult aon_hmll(const Hypergraph& h, const AffinityModel& model,
                       const LouvainOptions& options = {}, std::span<const int> initial = {});

}  // namespace dchsbm
