#pragma once

#include <map>
#include <span>
#include <vector>

#include "dchsbm/hypergraph.hpp"
#include "dchsbm/partition.hpp"

namespace dchsbm {

/// Weighted edge count per profile: cut_p for every p realized by some edge.
using ProfileCounts = std::map<PartitionVector, double>;

/// One pass over the edges; z is any integer labeling of length n.
ProfileCounts cut_profiles(const Hypergraph& h, std::span<const int> z);

double cut_p(const Hypergraph& h, std::span<const int> z, const PartitionVector& p);

/// Weight of size-k edges spanning two or more clusters.
double cut_k(const Hypergraph& h, std::span<const int> z, int k);

/// cut_k for k = 0..max_edge_size in one pass.
std::vector<double> cut_sizes(const Hypergraph& h, std::span<const int> z);

/// mu_k = sum_l vol(l)^k for k = 0..kmax, where mu_0 counts clusters with
/// positive volume.
std::vector<double> moments(std::span<const double> volumes, int kmax);

}  // namespace dchsbm
