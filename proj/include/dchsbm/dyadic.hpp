#pragma once

#include <cstdint>
#include <vector>

#include "dchsbm/estimation.hpp"
#include "dchsbm/hypergraph.hpp"
#include "dchsbm/weighted_graph.hpp"

namespace dchsbm {

struct DyadicOptions {
  int rounds = 1;
  bool regularize = false;
  std::uint64_t seed = 0;
  bool shuffle = false;
  /// Partition on which the first resolution is fitted; strict modularity when empty.
  std::vector<int> initial_labels;
};

/// Graph maximum-likelihood Louvain: alternates dyadic Louvain at resolution
/// gamma (the AON optimizer on the graph's 2-edges) with the ML estimate of
/// gamma, returning the round of highest likelihood. Throws
/// std::invalid_argument on a graph without edges.
FitReport gmll(const WeightedGraph& g, const DyadicOptions& options = {});

/// Projects h (normalized or not) and runs gmll. Labels refer to h's nodes.
FitReport gmll(const Hypergraph& h, bool normalized, const DyadicOptions& options = {});

/// Same alternation, but the returned round maximizes classical modularity.
FitReport graph_louvain_modularity(const WeightedGraph& g, const DyadicOptions& options = {});

}  // namespace dchsbm
