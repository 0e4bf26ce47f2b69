#pragma once

#include <cstdint>
#include <stdexcept>
#include <span>
#include <unordered_map>
#include <vector>

#include "dchsbm/partition.hpp"

namespace dchsbm {

class StaleTable : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Order-corrected volume products
///   U_p = sum over distinct clusters t_1..t_r of prod_j vol(t_j)^{p_j},
/// kept for every partition of the requested edge sizes and for the
/// sub-profiles their recursion touches. Volumes are divided by `scale`
/// before use, so U_p is reported in units of scale^k.
class VolumeTable {
 public:
  VolumeTable() = default;
  /// `sizes` lists the edge sizes whose partitions are needed.
  VolumeTable(std::span<const double> volumes, std::span<const int> sizes, double scale = 1.0);

  double scale() const { return scale_; }
  int max_size() const { return max_size_; }
  std::uint64_t version() const { return version_; }

  /// Moments of the scaled volumes, k = 0..max_size.
  std::span<const double> moments() const { return mu_; }
  double moment(int k) const { return mu_[k]; }

  const std::vector<PartitionVector>& profiles() const { return profiles_; }
  /// Index into profiles(), or -1.
  int index_of(const PartitionVector& p) const;

  double U(const PartitionVector& p) const;
  double U_at(int index) const { return U_[index]; }
  /// vol_p = U_p * ordering_count(p).
  double vol_p(const PartitionVector& p) const { return U(p) * ordering_count(p); }

  std::span<const double> volumes() const { return volumes_; }

  /// Delta of every U entry if `amount` (unscaled) of volume moved from
  /// cluster src to cluster dst. The table is unchanged.
  std::vector<double> delta_for(int src, int dst, double amount) const;
  /// Applies such a move. Returns the new version.
  std::uint64_t apply(int src, int dst, double amount);
  /// Applies a delta computed by delta_for against `expected_version`;
  /// throws StaleTable if the table changed in between.
  void apply_delta(int src, int dst, double amount, std::span<const double> delta,
                   std::uint64_t expected_version);

  /// Recomputes everything from the stored volumes.
  void rebuild();

 private:
  struct Step {
    int drop_last = -1;           // index of p - p_r e_r
    int last_part = 0;            // p_r
    std::vector<int> merged;      // indices of p + p_r (e_j - e_r), j < r
  };

  std::vector<double> compute_delta(std::span<const double> dmu, int positive_after) const;

  double scale_ = 1.0;
  int max_size_ = 0;
  std::uint64_t version_ = 0;
  int positive_clusters_ = 0;
  std::vector<double> volumes_;
  std::vector<double> mu_;
  std::vector<PartitionVector> profiles_;
  std::unordered_map<PartitionVector, int, PartitionVectorHash> index_;
  std::vector<Step> steps_;
  std::vector<double> U_;
};

}  // namespace dchsbm
