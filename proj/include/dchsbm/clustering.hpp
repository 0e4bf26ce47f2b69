#pragma once

#include <span>
#include <vector>

#include "dchsbm/hypergraph.hpp"

namespace dchsbm {

/// Relabels to 0..L-1 in order of first occurrence.
std::vector<int> compact_labels(std::span<const int> labels);

/// Number of distinct labels.
int count_clusters(std::span<const int> labels);

/// A node labeling with its per-cluster volumes. Labels are always compact.
class Clustering {
 public:
  Clustering() = default;
  /// Throws std::invalid_argument if labels.size() != h.node_count().
  Clustering(const Hypergraph& h, std::span<const int> labels);

  std::span<const int> labels() const { return labels_; }
  int label(int i) const { return labels_[i]; }
  int cluster_count() const { return static_cast<int>(volumes_.size()); }
  /// vol(l) = sum of degrees of the nodes labeled l.
  std::span<const double> volumes() const { return volumes_; }

 private:
  std::vector<int> labels_;
  std::vector<double> volumes_;
};

inline Clustering cluster_volumes(const Hypergraph& h, std::span<const int> labels) {
  return Clustering(h, labels);
}

/// Every node in its own cluster.
std::vector<int> singleton_labels(int n);

}  // namespace dchsbm
