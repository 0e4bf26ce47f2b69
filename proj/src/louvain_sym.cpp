#include "dchsbm/louvain_sym.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <unordered_map>

#include "dchsbm/clustering.hpp"
#include "dchsbm/volume_table.hpp"

namespace dchsbm {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

using LabelCounts = std::vector<std::pair<int, int>>;

void add_count(LabelCounts& counts, int label, int delta) {
  for (auto it = counts.begin(); it != counts.end(); ++it) {
    if (it->first == label) {
      it->second += delta;
      if (it->second == 0) counts.erase(it);
      return;
    }
  }
  counts.emplace_back(label, delta);
}

// Mutable state of one greedy pass over a fixed label space [0, L).
class SymmetricState {
 public:
  SymmetricState(const Hypergraph& h, const AffinityModel& omega, std::vector<int> z, int label_space,
                 bool regularize)
      : h_(h), omega_(omega), z_(std::move(z)), regularize_(regularize) {
    volumes_.assign(label_space, 0.0);
    members_.assign(label_space, 0);
    for (int i = 0; i < h.node_count(); ++i) {
      volumes_[z_[i]] += h.degree(i);
      ++members_[z_[i]];
    }
    nonempty_ = static_cast<int>(std::count_if(members_.begin(), members_.end(), [](int c) { return c > 0; }));

    const auto sizes = h.realized_sizes();
    const double scale = h.volume() > 0.0 ? h.volume() : 1.0;
    table_ = VolumeTable(volumes_, sizes, scale);
    const double log_scale = std::log(scale);
    std::vector<char> realized(h.max_edge_size() + 1, 0);
    for (int k : sizes) realized[k] = 1;
    volume_weight_.assign(table_.profiles().size(), 0.0);
    for (std::size_t i = 0; i < table_.profiles().size(); ++i) {
      const auto& p = table_.profiles()[i];
      if (p.empty() || p.size() >= static_cast<int>(realized.size()) || !realized[p.size()]) continue;
      const double lw = omega_.log_evaluate(p);
      if (lw == kNegInf) continue;
      volume_weight_[i] = std::exp(std::log(ordering_count(p)) + lw + p.size() * log_scale);
    }

    edge_counts_.resize(h.edge_count());
    edge_log_omega_.resize(h.edge_count());
    for (std::size_t e = 0; e < h.edge_count(); ++e) {
      for (int v : h.edge(e)) add_count(edge_counts_[e], z_[v], 1);
      edge_log_omega_[e] = log_omega(edge_counts_[e]);
    }
    edge_mark_.assign(h.edge_count(), -1);
    in_set_.assign(h.node_count(), 0);
  }

  int label(int i) const { return z_[i]; }
  const std::vector<int>& labels() const { return z_; }
  int label_space() const { return static_cast<int>(volumes_.size()); }

  // Edges incident to `set` with the number of positions inside the set.
  void gather(std::span<const int> set) {
    touched_.clear();
    for (int v : set) in_set_[v] = 1;
    for (int v : set) {
      for (std::size_t e : h_.incident_edges(v)) {
        if (edge_mark_[e] >= 0) continue;
        int inside = 0;
        for (int u : h_.edge(e)) inside += in_set_[u];
        edge_mark_[e] = static_cast<int>(touched_.size());
        touched_.emplace_back(e, inside);
      }
    }
    for (int v : set) in_set_[v] = 0;
    for (auto [e, inside] : touched_) edge_mark_[e] = -1;
    set_volume_ = 0.0;
    for (int v : set) set_volume_ += h_.degree(v);
    set_size_ = static_cast<int>(set.size());
  }

  std::vector<int> adjacent_labels(int current) const {
    std::vector<int> out;
    for (auto [e, inside] : touched_)
      for (auto [l, c] : edge_counts_[e])
        if (l != current) out.push_back(l);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  // Gain of moving the gathered set from `current` to `target`.
  double gain(int current, int target) {
    if (current == target) return 0.0;
    double cut_part = 0.0;
    for (auto [e, inside] : touched_) {
      scratch_ = edge_counts_[e];
      add_count(scratch_, current, -inside);
      add_count(scratch_, target, inside);
      const double after = log_omega(scratch_);
      const double before = edge_log_omega_[e];
      if (after == before) continue;
      if (after == kNegInf) return kNegInf;
      if (before == kNegInf) return std::numeric_limits<double>::infinity();
      cut_part += h_.weight(e) * (after - before);
    }
    const auto dU = table_.delta_for(current, target, set_volume_);
    double volume_part = 0.0;
    for (std::size_t i = 0; i < dU.size(); ++i) volume_part -= volume_weight_[i] * dU[i];
    double reg = 0.0;
    if (regularize_) {
      const bool empties = members_[current] == set_size_;
      const bool fills = members_[target] == 0;
      const int after = nonempty_ - empties + fills;
      if (after != nonempty_)
        reg = h_.node_count() * (std::log(static_cast<double>(nonempty_)) - std::log(static_cast<double>(after)));
    }
    return cut_part + volume_part + reg;
  }

  void move(std::span<const int> set, int current, int target) {
    for (auto [e, inside] : touched_) {
      add_count(edge_counts_[e], current, -inside);
      add_count(edge_counts_[e], target, inside);
      edge_log_omega_[e] = log_omega(edge_counts_[e]);
    }
    table_.apply(current, target, set_volume_);
    volumes_[current] -= set_volume_;
    volumes_[target] += set_volume_;
    if (members_[target] == 0) ++nonempty_;
    members_[current] -= set_size_;
    members_[target] += set_size_;
    if (members_[current] == 0) --nonempty_;
    for (int v : set) z_[v] = target;
  }

 private:
  double log_omega(const LabelCounts& counts) {
    std::vector<int> parts;
    parts.reserve(counts.size());
    for (auto [l, c] : counts) parts.push_back(c);
    PartitionVector p = profile_from_counts(std::move(parts));
    auto it = cache_.find(p);
    if (it != cache_.end()) return it->second;
    const double value = omega_.log_evaluate(p);
    cache_.emplace(std::move(p), value);
    return value;
  }

  const Hypergraph& h_;
  const AffinityModel& omega_;
  std::vector<int> z_;
  bool regularize_;
  std::vector<double> volumes_;
  std::vector<int> members_;
  int nonempty_ = 0;
  VolumeTable table_;
  std::vector<double> volume_weight_;
  std::vector<LabelCounts> edge_counts_;
  std::vector<double> edge_log_omega_;
  std::unordered_map<PartitionVector, double, PartitionVectorHash> cache_;
  std::vector<int> edge_mark_;
  std::vector<char> in_set_;
  std::vector<std::pair<std::size_t, int>> touched_;
  LabelCounts scratch_;
  double set_volume_ = 0.0;
  int set_size_ = 0;
};

}  // namespace

double delta_q_symmetric(const Hypergraph& h, const AffinityModel& omega, std::span<const int> z,
                         std::span<const int> set, int target, bool regularize) {
  if (static_cast<int>(z.size()) != h.node_count())
    throw std::invalid_argument("label vector length does not match node count");
  if (set.empty()) return 0.0;
  const int current = z[set[0]];
  for (int v : set)
    if (z[v] != current) throw std::invalid_argument("moved nodes must share one label");
  if (target == current) return 0.0;

  // Compact labels, giving an unused target a fresh slot.
  std::unordered_map<int, int> remap;
  std::vector<int> compact(z.size());
  for (std::size_t i = 0; i < z.size(); ++i)
    compact[i] = remap.try_emplace(z[i], static_cast<int>(remap.size())).first->second;
  const int t = remap.try_emplace(target, static_cast<int>(remap.size())).first->second;
  const int space = static_cast<int>(remap.size());
  SymmetricState state(h, omega, std::move(compact), space, regularize);
  state.gather(set);
  return state.gain(state.label(set[0]), t);
}

std::vector<int> symmetric_hmll_step(const Hypergraph& h, const AffinityModel& omega,
                                     std::span<const int> z, const LouvainOptions& options,
                                     LouvainStats* stats) {
  if (static_cast<int>(z.size()) != h.node_count())
    throw std::invalid_argument("label vector length does not match node count");
  std::vector<int> entry = compact_labels(z);
  const int units = h.node_count() == 0 ? 0 : *std::max_element(entry.begin(), entry.end()) + 1;
  std::vector<std::vector<int>> members(units);
  for (int i = 0; i < h.node_count(); ++i) members[entry[i]].push_back(i);

  SymmetricState state(h, omega, entry, units, options.regularize);
  std::vector<int> order(units);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(options.seed);
  const std::vector<int> identity = singleton_labels(h.node_count());

  LouvainStats local;
  bool moved = true;
  while (moved) {
    if (local.sweeps >= options.max_sweeps) {
      local.hit_sweep_cap = true;
      break;
    }
    ++local.sweeps;
    moved = false;
    if (options.shuffle) std::shuffle(order.begin(), order.end(), rng);
    for (int c : order) {
      const auto& set = members[c];
      const int current = state.label(set[0]);
      state.gather(set);
      int best = -1;
      double best_gain = options.min_gain;
      for (int target : state.adjacent_labels(current)) {
        const double g = state.gain(current, target);
        if (g > best_gain) {
          best_gain = g;
          best = target;
        }
      }
      if (best < 0) continue;
      state.move(set, current, best);
      moved = true;
      ++local.moves;
      if (options.on_move)
        options.on_move({c, current, best, best_gain, state.labels(), identity});
    }
  }
  if (stats) {
    stats->sweeps += local.sweeps;
    stats->moves += local.moves;
    stats->hit_sweep_cap = stats->hit_sweep_cap || local.hit_sweep_cap;
  }
  return compact_labels(state.labels());
}

LouvainResult symmetric_hmll(const Hypergraph& h, const AffinityModel& omega, const LouvainOptions& options) {
  LouvainResult result;
  std::vector<int> z = singleton_labels(h.node_count());
  while (true) {
    ++result.stats.outer_iterations;
    std::vector<int> next = symmetric_hmll_step(h, omega, z, options, &result.stats);
    const bool changed = next != z;
    z = std::move(next);
    if (!changed || result.stats.hit_sweep_cap) break;
  }
  result.labels = std::move(z);
  return result;
}

}  // namespace dchsbm
