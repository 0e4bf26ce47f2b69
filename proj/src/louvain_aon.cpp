#include "dchsbm/louvain_aon.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "dchsbm/clustering.hpp"

namespace dchsbm {

namespace {

using LabelCounts = std::vector<std::pair<int, int>>;

void add_count(LabelCounts& counts, int label, int delta) {
  for (auto it = counts.begin(); it != counts.end(); ++it) {
    if (it->first == label) {
      it->second += delta;
      if (it->second == 0) {
        *it = counts.back();
        counts.pop_back();
      }
      return;
    }
  }
  counts.emplace_back(label, delta);
}

double beta_of(const AonWeights& w, int size) {
  return size < static_cast<int>(w.beta.size()) ? w.beta[size] : 0.0;
}

// sum_k vw_k [va^k - (va-d)^k + vt^k - (vt+d)^k] in scaled units.
double volume_gain(const AonWeights& w, double va, double vt, double d) {
  const double va_new = std::max(va - d, 0.0);
  const double vt_new = vt + d;
  double pa = 1.0, pa_new = 1.0, pt = 1.0, pt_new = 1.0;
  double total = 0.0;
  for (std::size_t k = 1; k < w.volume_weight.size(); ++k) {
    pa *= va;
    pa_new *= va_new;
    pt *= vt;
    pt_new *= vt_new;
    const double vw = w.volume_weight[k];
    if (vw != 0.0) total += vw * ((pa - pa_new) + (pt - pt_new));
  }
  return total;
}

class AonState {
 public:
  AonState(const CollapsedHypergraph& c, std::vector<int> zbar, const AonWeights& w, bool regularize,
           int node_count)
      : c_(c), w_(w), zbar_(std::move(zbar)), regularize_(regularize), node_count_(node_count) {
    const int N = c.supernode_count;
    volume_.assign(N, 0.0);
    units_.assign(N, 0);
    for (int s = 0; s < N; ++s) {
      volume_[zbar_[s]] += c.degrees[s];
      ++units_[zbar_[s]];
    }
    nonempty_ = static_cast<int>(std::count_if(units_.begin(), units_.end(), [](int u) { return u > 0; }));
    counts_.resize(c.edge_count());
    for (std::size_t e = 0; e < c.edge_count(); ++e)
      for (int s : c.edge(e)) add_count(counts_[e], zbar_[s], 1);
    gain_.assign(N, 0.0);
  }

  const std::vector<int>& labels() const { return zbar_; }

  // Fills candidates (ascending) and per-target cut gains for supernode i.
  double prepare(int i) {
    const int a = zbar_[i];
    candidates_.clear();
    double loss = 0.0;
    for (std::size_t e : c_.incident_edges(i)) {
      const auto& list = counts_[e];
      const double wb = c_.weight[e] * beta_of(w_, c_.original_size[e]);
      if (list.size() == 1) {
        loss += wb;
        continue;
      }
      for (auto [l, n] : list)
        if (l != a) candidates_.push_back(l);
      if (list.size() == 2) {
        const auto& own = list[0].first == a ? list[0] : list[1];
        const auto& other = list[0].first == a ? list[1] : list[0];
        if (own.second == 1) gain_[other.first] += wb;
      }
    }
    std::sort(candidates_.begin(), candidates_.end());
    candidates_.erase(std::unique(candidates_.begin(), candidates_.end()), candidates_.end());
    return loss;
  }

  double gain(int i, int target, double loss) const {
    const int a = zbar_[i];
    double g = gain_[target] - loss;
    g += volume_gain(w_, volume_[a] / w_.scale, volume_[target] / w_.scale, c_.degrees[i] / w_.scale);
    if (regularize_ && units_[a] == 1 && units_[target] > 0)
      g += node_count_ * (std::log(static_cast<double>(nonempty_)) - std::log(nonempty_ - 1.0));
    return g;
  }

  void clear_gains() {
    for (int l : candidates_) gain_[l] = 0.0;
  }

  const std::vector<int>& candidates() const { return candidates_; }

  void move(int i, int target) {
    const int a = zbar_[i];
    for (std::size_t e : c_.incident_edges(i)) {
      add_count(counts_[e], a, -1);
      add_count(counts_[e], target, 1);
    }
    volume_[a] -= c_.degrees[i];
    volume_[target] += c_.degrees[i];
    if (--units_[a] == 0) --nonempty_;
    ++units_[target];
    zbar_[i] = target;
  }

 private:
  const CollapsedHypergraph& c_;
  const AonWeights& w_;
  std::vector<int> zbar_;
  bool regularize_;
  int node_count_;
  std::vector<double> volume_;
  std::vector<int> units_;
  int nonempty_ = 0;
  std::vector<LabelCounts> counts_;
  std::vector<double> gain_;
  std::vector<int> candidates_;
};

}  // namespace

CollapsedHypergraph collapse(const Hypergraph& h, std::span<const int> z) {
  if (static_cast<int>(z.size()) != h.node_count())
    throw std::invalid_argument("label vector length does not match node count");
  CollapsedHypergraph c;
  c.node_to_supernode = compact_labels(z);
  const int N = h.node_count() == 0
                    ? 0
                    : *std::max_element(c.node_to_supernode.begin(), c.node_to_supernode.end()) + 1;
  c.supernode_count = N;
  c.degrees.assign(N, 0.0);
  c.member_count.assign(N, 0);
  for (int i = 0; i < h.node_count(); ++i) {
    c.degrees[c.node_to_supernode[i]] += h.degree(i);
    ++c.member_count[c.node_to_supernode[i]];
  }
  c.fixed_internal.assign(std::max(h.max_edge_size(), 0) + 1, 0.0);

  // Distinct supernodes of every cuttable edge, flat.
  std::vector<std::size_t> offsets{0};
  std::vector<int> nodes;
  std::vector<int> sizes;
  std::vector<double> weights;
  for (std::size_t e = 0; e < h.edge_count(); ++e) {
    const std::size_t start = nodes.size();
    for (int v : h.edge(e)) nodes.push_back(c.node_to_supernode[v]);
    std::sort(nodes.begin() + start, nodes.end());
    nodes.erase(std::unique(nodes.begin() + start, nodes.end()), nodes.end());
    if (nodes.size() - start == 1) {
      c.fixed_internal[h.edge_size(e)] += h.weight(e);
      nodes.resize(start);
      continue;
    }
    offsets.push_back(nodes.size());
    sizes.push_back(h.edge_size(e));
    weights.push_back(h.weight(e));
  }

  auto slice = [&](std::size_t e) {
    return std::span<const int>(nodes.data() + offsets[e], offsets[e + 1] - offsets[e]);
  };
  std::vector<std::size_t> order(weights.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    auto sa = slice(a), sb = slice(b);
    if (sa.size() != sb.size()) return sa.size() < sb.size();
    const auto cmp = std::lexicographical_compare_three_way(sa.begin(), sa.end(), sb.begin(), sb.end());
    if (cmp != 0) return cmp < 0;
    if (sizes[a] != sizes[b]) return sizes[a] < sizes[b];
    return a < b;
  });
  for (std::size_t pos = 0; pos < order.size();) {
    const std::size_t e = order[pos];
    auto key = slice(e);
    double w = 0.0;
    std::size_t next = pos;
    while (next < order.size() && sizes[order[next]] == sizes[e] && slice(order[next]).size() == key.size() &&
           std::equal(key.begin(), key.end(), slice(order[next]).begin()))
      w += weights[order[next++]];
    c.edge_nodes.insert(c.edge_nodes.end(), key.begin(), key.end());
    c.edge_offsets.push_back(c.edge_nodes.size());
    c.original_size.push_back(sizes[e]);
    c.weight.push_back(w);
    pos = next;
  }

  c.incidence_offsets.assign(N + 1, 0);
  for (int s : c.edge_nodes) ++c.incidence_offsets[s + 1];
  for (int s = 0; s < N; ++s) c.incidence_offsets[s + 1] += c.incidence_offsets[s];
  c.incidence.resize(c.edge_nodes.size());
  std::vector<std::size_t> fill(c.incidence_offsets.begin(), c.incidence_offsets.end() - 1);
  for (std::size_t e = 0; e < c.edge_count(); ++e)
    for (int s : c.edge(e)) c.incidence[fill[s]++] = e;
  return c;
}

std::vector<int> expand(const CollapsedHypergraph& c, std::span<const int> zbar) {
  if (static_cast<int>(zbar.size()) != c.supernode_count)
    throw std::invalid_argument("supernode label vector has the wrong length");
  std::vector<int> z(c.node_to_supernode.size());
  for (std::size_t i = 0; i < z.size(); ++i) z[i] = zbar[c.node_to_supernode[i]];
  return compact_labels(z);
}

double objective_aon_collapsed(const CollapsedHypergraph& c, std::span<const int> zbar,
                               const AonWeights& weights) {
  if (static_cast<int>(zbar.size()) != c.supernode_count)
    throw std::invalid_argument("supernode label vector has the wrong length");
  double cut = 0.0;
  for (std::size_t e = 0; e < c.edge_count(); ++e) {
    auto nodes = c.edge(e);
    const int first = zbar[nodes[0]];
    if (std::any_of(nodes.begin(), nodes.end(), [&](int s) { return zbar[s] != first; }))
      cut += c.weight[e] * beta_of(weights, c.original_size[e]);
  }
  std::vector<double> volume(c.supernode_count, 0.0);
  for (int s = 0; s < c.supernode_count; ++s) volume[zbar[s]] += c.degrees[s] / weights.scale;
  double penalty = 0.0;
  for (double v : volume) {
    if (v == 0.0) continue;
    double p = 1.0;
    for (std::size_t k = 1; k < weights.volume_weight.size(); ++k) {
      p *= v;
      penalty += weights.volume_weight[k] * p;
    }
  }
  return -cut - penalty;
}

double delta_q_aon(const CollapsedHypergraph& c, std::span<const int> zbar, int i, int target,
                   const AonWeights& weights, bool regularize, int node_count) {
  if (static_cast<int>(zbar.size()) != c.supernode_count)
    throw std::invalid_argument("supernode label vector has the wrong length");
  if (i < 0 || i >= c.supernode_count) throw std::out_of_range("supernode out of range");
  if (target < 0 || target >= c.supernode_count) throw std::out_of_range("target label out of range");
  if (zbar[i] == target) return 0.0;
  AonState state(c, std::vector<int>(zbar.begin(), zbar.end()), weights, regularize, node_count);
  const double loss = state.prepare(i);
  const double g = state.gain(i, target, loss);
  state.clear_gains();
  return g;
}

std::vector<int> aon_louvain_step(const CollapsedHypergraph& c, const AonWeights& weights, int node_count,
                                  const LouvainOptions& options, LouvainStats* stats) {
  const int N = c.supernode_count;
  AonState state(c, singleton_labels(N), weights, options.regularize, node_count);
  std::vector<int> order(N);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(options.seed);

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
    for (int i : order) {
      const double loss = state.prepare(i);
      int best = -1;
      double best_gain = options.min_gain;
      for (int target : state.candidates()) {
        const double g = state.gain(i, target, loss);
        if (g > best_gain) {
          best_gain = g;
          best = target;
        }
      }
      state.clear_gains();
      if (best < 0) continue;
      const int from = state.labels()[i];
      state.move(i, best);
      moved = true;
      ++local.moves;
      if (options.on_move) options.on_move({i, from, best, best_gain, state.labels(), c.node_to_supernode});
    }
  }
  if (stats) {
    stats->sweeps += local.sweeps;
    stats->moves += local.moves;
    stats->hit_sweep_cap = stats->hit_sweep_cap || local.hit_sweep_cap;
  }
  return compact_labels(state.labels());
}

LouvainResult aon_hmll(const Hypergraph& h, const AonWeights& weights, const LouvainOptions& options,
                       std::span<const int> initial) {
  LouvainResult result;
  std::vector<int> z;
  if (initial.empty()) {
    z = singleton_labels(h.node_count());
  } else {
    if (static_cast<int>(initial.size()) != h.node_count())
      throw std::invalid_argument("initial labels have the wrong length");
    z = compact_labels(initial);
  }
  while (true) {
    ++result.stats.outer_iterations;
    const CollapsedHypergraph c = collapse(h, z);
    const int before = result.stats.moves;
    const std::vector<int> zbar = aon_louvain_step(c, weights, h.node_count(), options, &result.stats);
    if (result.stats.moves == before) break;
    z = expand(c, zbar);
    if (result.stats.hit_sweep_cap) break;
  }
  result.labels = compact_labels(z);
  return result;
}

LouvainResult aon_hmll(const Hypergraph& h, const AffinityModel& model, const LouvainOptions& options,
                       std::span<const int> initial) {
  const double scale = h.volume() > 0.0 ? h.volume() : 1.0;
  return aon_hmll(h, AonWeights::from_model(model, scale), options, initial);
}

}  // namespace dchsbm
