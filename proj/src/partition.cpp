#include "dchsbm/partition.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

namespace dchsbm {

PartitionVector::PartitionVector(std::vector<int> parts) : parts_(std::move(parts)) {
  for (std::size_t j = 0; j < parts_.size(); ++j) {
    if (parts_[j] < 1) throw std::invalid_argument("partition vector entries must be positive");
    if (j > 0 && parts_[j] > parts_[j - 1])
      throw std::invalid_argument("partition vector entries must be nonincreasing");
    size_ += parts_[j];
  }
}

std::size_t PartitionVectorHash::operator()(const PartitionVector& p) const noexcept {
  std::size_t h = 0x9e3779b97f4a7c15ULL;
  for (int v : p.parts()) h ^= std::hash<int>{}(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

PartitionVector partition_profile(std::span<const int> labels) {
  if (labels.empty()) throw std::invalid_argument("partition_profile: empty label multiset");
  std::vector<int> sorted(labels.begin(), labels.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> counts;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    counts.push_back(static_cast<int>(j - i));
    i = j;
  }
  return profile_from_counts(std::move(counts));
}

PartitionVector profile_from_counts(std::vector<int> counts) {
  std::sort(counts.begin(), counts.end(), std::greater<>());
  return PartitionVector(std::move(counts));
}

namespace {

void enumerate(int remaining, int max_part, std::vector<int>& current,
               std::vector<PartitionVector>& out) {
  if (remaining == 0) {
    out.emplace_back(current);
    return;
  }
  for (int part = std::min(remaining, max_part); part >= 1; --part) {
    current.push_back(part);
    enumerate(remaining - part, part, current, out);
    current.pop_back();
  }
}

}  // namespace

std::vector<PartitionVector> integer_partitions(int k) {
  if (k < 1) throw std::invalid_argument("integer_partitions: k must be positive");
  std::vector<PartitionVector> out;
  std::vector<int> current;
  enumerate(k, k, current, out);
  return out;
}

double ordering_count(const PartitionVector& p) {
  // multinomial(k; p) as a product of binomials
  double result = 1.0;
  int remaining = p.size();
  for (int part : p.parts()) {
    double binom = 1.0;
    for (int i = 1; i <= part; ++i) binom = binom * (remaining - part + i) / i;
    result *= binom;
    remaining -= part;
  }
  std::map<int, int> repeats;
  for (int part : p.parts()) ++repeats[part];
  for (const auto& [part, count] : repeats)
    for (int i = 2; i <= count; ++i) result /= i;
  return result;
}

}  // namespace dchsbm
