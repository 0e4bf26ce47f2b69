#include "dchsbm/volume_table.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dchsbm/cuts.hpp"

namespace dchsbm {

namespace {

double power(double base, int k) {
  double out = 1.0;
  for (int i = 0; i < k; ++i) out *= base;
  return out;
}

PartitionVector without_last(const PartitionVector& p) {
  auto parts = p.parts();
  return PartitionVector(std::vector<int>(parts.begin(), parts.end() - 1));
}

PartitionVector merge_last_into(const PartitionVector& p, int j) {
  std::vector<int> parts(p.parts().begin(), p.parts().end());
  parts[j] += parts.back();
  parts.pop_back();
  return profile_from_counts(std::move(parts));
}

}  // namespace

VolumeTable::VolumeTable(std::span<const double> volumes, std::span<const int> sizes, double scale)
    : scale_(scale), volumes_(volumes.begin(), volumes.end()) {
  if (!(scale > 0.0)) throw std::invalid_argument("volume scale must be positive");
  for (double v : volumes_)
    if (v < 0.0) throw std::invalid_argument("volumes must be nonnegative");

  // Closure of the requested profiles under the recursion's references.
  std::vector<PartitionVector> pending;
  for (int k : sizes) {
    if (k < 1) throw std::invalid_argument("edge sizes must be positive");
    max_size_ = std::max(max_size_, k);
    for (auto& p : integer_partitions(k)) pending.push_back(std::move(p));
  }
  pending.push_back(PartitionVector());
  while (!pending.empty()) {
    PartitionVector p = std::move(pending.back());
    pending.pop_back();
    if (index_.count(p)) continue;
    index_.emplace(p, -1);
    if (p.empty()) continue;
    pending.push_back(without_last(p));
    for (int j = 0; j + 1 < p.groups(); ++j) pending.push_back(merge_last_into(p, j));
  }
  for (const auto& [p, unused] : index_) profiles_.push_back(p);
  // Every reference has smaller size, or equal size and fewer groups.
  std::sort(profiles_.begin(), profiles_.end(), [](const PartitionVector& a, const PartitionVector& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    if (a.groups() != b.groups()) return a.groups() < b.groups();
    return a > b;
  });
  for (std::size_t i = 0; i < profiles_.size(); ++i) index_[profiles_[i]] = static_cast<int>(i);

  steps_.resize(profiles_.size());
  for (std::size_t i = 0; i < profiles_.size(); ++i) {
    const auto& p = profiles_[i];
    if (p.empty()) continue;
    Step& s = steps_[i];
    s.drop_last = index_.at(without_last(p));
    s.last_part = p[p.groups() - 1];
    for (int j = 0; j + 1 < p.groups(); ++j) s.merged.push_back(index_.at(merge_last_into(p, j)));
  }
  rebuild();
}

int VolumeTable::index_of(const PartitionVector& p) const {
  auto it = index_.find(p);
  return it == index_.end() ? -1 : it->second;
}

double VolumeTable::U(const PartitionVector& p) const {
  const int i = index_of(p);
  if (i < 0) throw std::out_of_range("profile not tracked by the volume table");
  return U_[i];
}

void VolumeTable::rebuild() {
  std::vector<double> scaled(volumes_.size());
  for (std::size_t l = 0; l < volumes_.size(); ++l) scaled[l] = volumes_[l] / scale_;
  mu_ = dchsbm::moments(scaled, max_size_);
  positive_clusters_ = static_cast<int>(mu_[0]);

  U_.assign(profiles_.size(), 0.0);
  for (std::size_t i = 0; i < profiles_.size(); ++i) {
    const auto& p = profiles_[i];
    if (p.empty()) {
      U_[i] = 1.0;
      continue;
    }
    if (p.groups() > positive_clusters_) continue;  // empty distinct-index sum
    const Step& s = steps_[i];
    double u = mu_[s.last_part] * U_[s.drop_last];
    for (int m : s.merged) u -= U_[m];
    U_[i] = std::max(u, 0.0);
  }
  ++version_;
}

std::vector<double> VolumeTable::compute_delta(std::span<const double> dmu, int positive_after) const {
  std::vector<double> dU(profiles_.size(), 0.0);
  for (std::size_t i = 0; i < profiles_.size(); ++i) {
    const auto& p = profiles_[i];
    if (p.empty()) continue;
    if (p.groups() > positive_after) {
      dU[i] = -U_[i];
      continue;
    }
    const Step& s = steps_[i];
    const double dm = dmu[s.last_part];
    double d = dm * U_[s.drop_last] + mu_[s.last_part] * dU[s.drop_last] + dm * dU[s.drop_last];
    for (int m : s.merged) d -= dU[m];
    dU[i] = std::max(d, -U_[i]);
  }
  return dU;
}

std::vector<double> VolumeTable::delta_for(int src, int dst, double amount) const {
  const int L = static_cast<int>(volumes_.size());
  if (src < 0 || dst < 0 || src >= L || dst >= L) throw std::out_of_range("cluster out of range");
  if (src == dst || amount == 0.0) return std::vector<double>(profiles_.size(), 0.0);
  const double vs = volumes_[src] / scale_, vd = volumes_[dst] / scale_;
  const double vs_new = std::max(volumes_[src] - amount, 0.0) / scale_;
  const double vd_new = (volumes_[dst] + amount) / scale_;
  std::vector<double> dmu(max_size_ + 1, 0.0);
  for (int k = 1; k <= max_size_; ++k)
    dmu[k] = (power(vs_new, k) - power(vs, k)) + (power(vd_new, k) - power(vd, k));
  int positive = positive_clusters_;
  positive += (vs_new > 0.0) - (vs > 0.0);
  positive += (vd_new > 0.0) - (vd > 0.0);
  return compute_delta(dmu, positive);
}

void VolumeTable::apply_delta(int src, int dst, double amount, std::span<const double> delta,
                              std::uint64_t expected_version) {
  if (expected_version != version_) throw StaleTable("volume table changed since the delta was computed");
  if (delta.size() != U_.size()) throw std::invalid_argument("delta has the wrong length");
  if (src == dst || amount == 0.0) return;
  const double vs = volumes_[src] / scale_, vd = volumes_[dst] / scale_;
  volumes_[src] = std::max(volumes_[src] - amount, 0.0);
  volumes_[dst] += amount;
  const double vs_new = volumes_[src] / scale_, vd_new = volumes_[dst] / scale_;
  for (int k = 0; k <= max_size_; ++k)
    mu_[k] += (power(vs_new, k) * (vs_new > 0.0) - power(vs, k) * (vs > 0.0)) +
              (power(vd_new, k) * (vd_new > 0.0) - power(vd, k) * (vd > 0.0));
  positive_clusters_ = static_cast<int>(std::lround(mu_[0]));
  for (std::size_t i = 0; i < U_.size(); ++i) U_[i] = std::max(U_[i] + delta[i], 0.0);
  ++version_;
}

std::uint64_t VolumeTable::apply(int src, int dst, double amount) {
  const auto delta = delta_for(src, dst, amount);
  apply_delta(src, dst, amount, delta, version_);
  return version_;
}

}  // namespace dchsbm
