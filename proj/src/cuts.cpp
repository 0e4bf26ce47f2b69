#include "dchsbm/cuts.hpp"

#include <algorithm>
#include <stdexcept>

namespace dchsbm {

namespace {

void check_labels(const Hypergraph& h, std::span<const int> z) {
  if (static_cast<int>(z.size()) != h.node_count())
    throw std::invalid_argument("label vector length does not match node count");
}

}  // namespace

ProfileCounts cut_profiles(const Hypergraph& h, std::span<const int> z) {
  check_labels(h, z);
  ProfileCounts counts;
  std::vector<int> labels;
  for (std::size_t e = 0; e < h.edge_count(); ++e) {
    labels.clear();
    for (int v : h.edge(e)) labels.push_back(z[v]);
    counts[partition_profile(labels)] += h.weight(e);
  }
  return counts;
}

double cut_p(const Hypergraph& h, std::span<const int> z, const PartitionVector& p) {
  check_labels(h, z);
  double total = 0.0;
  std::vector<int> labels;
  for (std::size_t e = 0; e < h.edge_count(); ++e) {
    if (h.edge_size(e) != p.size()) continue;
    labels.clear();
    for (int v : h.edge(e)) labels.push_back(z[v]);
    if (partition_profile(labels) == p) total += h.weight(e);
  }
  return total;
}

std::vector<double> cut_sizes(const Hypergraph& h, std::span<const int> z) {
  check_labels(h, z);
  std::vector<double> cut(std::max(h.max_edge_size(), 0) + 1, 0.0);
  for (std::size_t e = 0; e < h.edge_count(); ++e) {
    auto nodes = h.edge(e);
    const int first = z[nodes[0]];
    const bool split = std::any_of(nodes.begin(), nodes.end(), [&](int v) { return z[v] != first; });
    if (split) cut[nodes.size()] += h.weight(e);
  }
  return cut;
}

double cut_k(const Hypergraph& h, std::span<const int> z, int k) {
  const auto cut = cut_sizes(h, z);
  return k >= 0 && k < static_cast<int>(cut.size()) ? cut[k] : 0.0;
}

std::vector<double> moments(std::span<const double> volumes, int kmax) {
  if (kmax < 0) throw std::invalid_argument("moments: kmax must be nonnegative");
  std::vector<double> mu(kmax + 1, 0.0);
  for (double v : volumes) {
    if (v < 0.0) throw std::invalid_argument("moments: negative volume");
    if (v == 0.0) continue;
    double power = 1.0;
    for (int k = 0; k <= kmax; ++k) {
      mu[k] += power;
      power *= v;
    }
  }
  return mu;
}

}  // namespace dchsbm
