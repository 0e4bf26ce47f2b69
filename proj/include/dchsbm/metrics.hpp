#pragma once

#include <optional>
#include <span>

#include "dchsbm/hypergraph.hpp"

namespace dchsbm {

/// Adjusted Rand Index. Throws std::invalid_argument on a length mismatch
/// or fewer than two items. Two single-cluster partitions score 1.
double ari(std::span<const int> a, std::span<const int> b);

struct SummaryStats {
  int nodes = 0;
  double edges = 0.0;
  double mean_degree = 0.0;
  double sd_degree = 0.0;
  double mean_edge_size = 0.0;
  double sd_edge_size = 0.0;
  std::optional<int> clusters;
};

/// Weighted edge counts; standard deviations are population unless `sample`.
SummaryStats summary_stats(const Hypergraph& h, std::span<const int> labels = {}, bool sample = false);

}  // namespace dchsbm
