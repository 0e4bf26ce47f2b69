#pragma once

#include <span>
#include <vector>

#include "dchsbm/affinity.hpp"
#include "dchsbm/hypergraph.hpp"
#include "dchsbm/louvain.hpp"

namespace dchsbm {

/// Exact change of the symmetric objective (plus the -n log l term when
/// `regularize`) from relabeling every node of `set` to `target`. All nodes
/// of `set` must share one label in z.
double delta_q_symmetric(const Hypergraph& h, const AffinityModel& omega, std::span<const int> z,
                         std::span<const int> set, int target, bool regularize = false);

/// One greedy pass: the clusters of z are the movable units; each is moved
/// whole to the adjacent cluster with the largest positive gain until a
/// full sweep moves nothing. Returns compact labels.
std::vector<int> symmetric_hmll_step(const Hypergraph& h, const AffinityModel& omega,
                                     std::span<const int> z, const LouvainOptions& options = {},
                                     LouvainStats* stats = nullptr);

/// Starts from singletons and repeats steps until the labels stop changing.
LouvainResult symmetric_hmll(const Hypergraph& h, const AffinityModel& omega,
                             const LouvainOptions& options = {});

}  // namespace dchsbm
