#include "dchsbm/clustering.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace dchsbm {

std::vector<int> compact_labels(std::span<const int> labels) {
  std::unordered_map<int, int> remap;
  std::vector<int> out;
  out.reserve(labels.size());
  for (int label : labels) {
    auto [it, inserted] = remap.try_emplace(label, static_cast<int>(remap.size()));
    out.push_back(it->second);
  }
  return out;
}

int count_clusters(std::span<const int> labels) {
  std::unordered_map<int, int> seen;
  for (int label : labels) seen.try_emplace(label, 0);
  return static_cast<int>(seen.size());
}

Clustering::Clustering(const Hypergraph& h, std::span<const int> labels) {
  if (static_cast<int>(labels.size()) != h.node_count())
    throw std::invalid_argument("label vector length does not match node count");
  labels_ = compact_labels(labels);
  int clusters = 0;
  for (int label : labels_) clusters = std::max(clusters, label + 1);
  volumes_.assign(clusters, 0.0);
  for (int i = 0; i < h.node_count(); ++i) volumes_[labels_[i]] += h.degree(i);
}

std::vector<int> singleton_labels(int n) {
  std::vector<int> labels(n);
  std::iota(labels.begin(), labels.end(), 0);
  return labels;
}

}  // namespace dchsbm
