#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <vector>

namespace dchsbm {

/// Group-multiplicity profile of the labels inside one hyperedge: the counts
/// of each distinct label, sorted nonincreasing. The empty profile (k = 0) is
/// valid and serves as the base of the volume recursion.
class PartitionVector {
 public:
  PartitionVector() = default;

  /// Throws std::invalid_argument unless every entry is >= 1 and the entries
  /// are nonincreasing.
  explicit PartitionVector(std::vector<int> parts);

  std::span<const int> parts() const { return parts_; }
  int operator[](std::size_t j) const { return parts_[j]; }

  /// Edge size k (sum of entries).
  int size() const { return size_; }
  /// Number of distinct groups r.
  int groups() const { return static_cast<int>(parts_.size()); }
  bool empty() const { return parts_.empty(); }

  friend bool operator==(const PartitionVector&, const PartitionVector&) = default;
  friend std::strong_ordering operator<=>(const PartitionVector& a, const PartitionVector& b) {
    return a.parts_ <=> b.parts_;
  }

 private:
  std::vector<int> parts_;
  int size_ = 0;
};

struct PartitionVectorHash {
  std::size_t operator()(const PartitionVector& p) const noexcept;
};

/// Profile of a label multiset. Throws std::invalid_argument on empty input.
PartitionVector partition_profile(std::span<const int> labels);

/// Profile from unsorted positive group counts.
PartitionVector profile_from_counts(std::vector<int> counts);

/// All integer partitions of k (k >= 1), largest first part first.
std::vector<PartitionVector> integer_partitions(int k);

/// Number of label vectors over a fixed set of r distinct labels, one per
/// part, that realize p up to relabeling of equal parts:
/// multinomial(k; p) / prod_j (#parts equal to j)!.
double ordering_count(const PartitionVector& p);

}  // namespace dchsbm
