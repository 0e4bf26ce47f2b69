#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dchsbm/hypergraph.hpp"
#include "dchsbm/partition.hpp"

namespace dchsbm {

struct PlantedInstance {
  Hypergraph hypergraph;
  std::vector<int> labels;
  std::string kind;
  std::map<std::string, std::string> parameters;
  std::uint64_t seed = 0;
};

/// Planted-partition generator with contiguous clusters. Each of `edges`
/// edges draws its size k from size_weights (index = k), then with
/// probability within[k] lands on k distinct nodes of one uniformly chosen
/// cluster, else on k distinct nodes chosen from all nodes.
struct PlantedSpec {
  std::vector<int> cluster_sizes;
  long long edges = 0;
  std::vector<double> size_weights;
  std::vector<double> within;
};

PlantedInstance generate_planted(const PlantedSpec& spec, std::uint64_t seed);

/// n/200 clusters of 200 nodes, 10n edges with k uniform on {2, 3, 4}.
/// Default within-cluster probabilities are p2 = 3/5, p3 = 1/n^3, p4 = 1/n^4.
/// Throws std::invalid_argument unless n is a positive multiple of 200.
PlantedInstance generate_runtime_testbed(int n, std::uint64_t seed, std::vector<double> within = {});

/// Two clusters of n/2. Size-k edge count is round(n c_k / k); a
/// binomial(p_k) share lies inside a uniformly chosen cluster and the rest
/// spans both clusters uniformly over mixed tuples.
PlantedInstance generate_detectability(int n, double p2, double p3, double c2, double c3,
                                       std::uint64_t seed);

/// Affinity on label profiles for the exact sampler.
using ProfileAffinity = std::function<double(const PartitionVector&)>;

class EnumerationTooLarge : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Exact DCHSBM draw: every node multiset R with min_size <= |R| <= kmax
/// gets a_R ~ Poisson(b_R prod_{i in R} theta_i Omega(z_R)), b_R = k!/prod mult!.
/// Throws EnumerationTooLarge when more than 10^6 multisets would be visited.
Hypergraph sample_dchsbm_exact(int n, std::span<const int> z, std::span<const double> theta,
                               const ProfileAffinity& omega, int kmax, std::uint64_t seed,
                               int min_size = 2);

/// Number of multisets sample_dchsbm_exact enumerates.
double exact_enumeration_size(int n, int kmax, int min_size = 2);

struct Detectability {
  double value = 0.0;
  bool detectable = false;
};

/// (c_i - c_o)^2 / (2 (c_i + c_o)), detectable when >= 1. Throws
/// std::invalid_argument when c_i + c_o <= 0.
Detectability dyadic_detectability(double c_in, double c_out);

/// Expected mean within/between degrees of the unnormalized clique
/// projection of a detectability instance. A 2-edge contributes one pair;
/// a 3-edge three pairs, all inside its cluster or two of three crossing.
struct ProjectedDegrees {
  double c_in = 0.0;
  double c_out = 0.0;
};
ProjectedDegrees projected_degrees(double p2, double p3, double c2, double c3);

}  // namespace dchsbm
