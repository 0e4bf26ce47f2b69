#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace dchsbm {

/// One accepted greedy move. `mover` is the origin cluster (symmetric) or
/// supernode (AON) that moved. The clustering after the move is
/// level_labels[node_to_unit[i]] for each original node i; the symmetric
/// optimizer works on nodes directly, so its node_to_unit is the identity.
struct MoveEvent {
  int mover = 0;
  int from = 0;
  int to = 0;
  double gain = 0.0;
  /// Labels of the current level after the move.
  std::span<const int> level_labels;
  /// Map from original nodes to level units (origin cluster or supernode).
  std::span<const int> node_to_unit;
};

struct LouvainOptions {
  bool regularize = false;
  bool shuffle = false;
  std::uint64_t seed = 0;
  /// Cap on sweeps per step; hitting it is reported in the stats.
  int max_sweeps = 10000;
  /// Moves need a gain above this.
  double min_gain = 1e-9;
  std::function<void(const MoveEvent&)> on_move;
};

struct LouvainStats {
  int outer_iterations = 0;
  int sweeps = 0;
  int moves = 0;
  bool hit_sweep_cap = false;
};

struct LouvainResult {
  std::vector<int> labels;
  LouvainStats stats;
};

}  // namespace dchsbm
