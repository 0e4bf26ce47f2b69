#include "dchsbm/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace dchsbm {

namespace {

std::string format(double value) {
  std::ostringstream out;
  out.precision(17);
  out << value;
  return out.str();
}

// k distinct nodes from [first, first + count).
void draw_distinct(std::mt19937_64& rng, int first, int count, int k, std::vector<int>& out) {
  std::uniform_int_distribution<int> pick(first, first + count - 1);
  const std::size_t start = out.size();
  while (static_cast<int>(out.size() - start) < k) {
    const int v = pick(rng);
    if (std::find(out.begin() + start, out.end(), v) == out.end()) out.push_back(v);
  }
}

}  // namespace

PlantedInstance generate_planted(const PlantedSpec& spec, std::uint64_t seed) {
  if (spec.cluster_sizes.empty()) throw std::invalid_argument("planted spec needs clusters");
  if (spec.edges < 0) throw std::invalid_argument("edge count must be nonnegative");
  for (int size : spec.cluster_sizes)
    if (size < 1) throw std::invalid_argument("cluster sizes must be positive");
  if (spec.size_weights.empty()) throw std::invalid_argument("planted spec needs size weights");
  int n = 0;
  std::vector<int> offsets;
  for (int size : spec.cluster_sizes) {
    offsets.push_back(n);
    n += size;
  }
  const int smallest = *std::min_element(spec.cluster_sizes.begin(), spec.cluster_sizes.end());
  for (std::size_t k = 0; k < spec.size_weights.size(); ++k) {
    const double w = spec.size_weights[k];
    if (!(w >= 0.0)) throw std::invalid_argument("size weights must be nonnegative");
    if (w == 0.0) continue;
    if (k < 1 || static_cast<int>(k) > n) throw std::invalid_argument("edge size out of range");
    const double p = k < spec.within.size() ? spec.within[k] : 0.0;
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("within probabilities must lie in [0, 1]");
    if (p > 0.0 && static_cast<int>(k) > smallest)
      throw std::invalid_argument("cluster smaller than a within-cluster edge");
  }

  std::mt19937_64 rng(seed);
  std::discrete_distribution<int> size_dist(spec.size_weights.begin(), spec.size_weights.end());
  std::uniform_int_distribution<int> cluster_dist(0, static_cast<int>(spec.cluster_sizes.size()) - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::vector<std::vector<int>> edges;
  edges.reserve(static_cast<std::size_t>(spec.edges));
  std::vector<int> nodes;
  for (long long e = 0; e < spec.edges; ++e) {
    const int k = size_dist(rng);
    const double p = k < static_cast<int>(spec.within.size()) ? spec.within[k] : 0.0;
    nodes.clear();
    if (unit(rng) < p) {
      const int c = cluster_dist(rng);
      draw_distinct(rng, offsets[c], spec.cluster_sizes[c], k, nodes);
    } else {
      draw_distinct(rng, 0, n, k, nodes);
    }
    edges.push_back(nodes);
  }

  PlantedInstance out;
  std::vector<double> weights(edges.size(), 1.0);
  out.hypergraph = Hypergraph(n, std::move(edges), std::move(weights));
  out.labels.reserve(n);
  for (std::size_t c = 0; c < spec.cluster_sizes.size(); ++c)
    out.labels.insert(out.labels.end(), spec.cluster_sizes[c], static_cast<int>(c));
  out.kind = "planted";
  out.seed = seed;
  out.parameters["n"] = std::to_string(n);
  out.parameters["clusters"] = std::to_string(spec.cluster_sizes.size());
  out.parameters["edges"] = std::to_string(spec.edges);
  return out;
}

PlantedInstance generate_runtime_testbed(int n, std::uint64_t seed, std::vector<double> within) {
  if (n <= 0 || n % 200 != 0) throw std::invalid_argument("runtime testbed needs n a positive multiple of 200");
  if (within.empty()) {
    const double nd = n;
    within = {0.0, 0.0, 3.0 / 5.0, 1.0 / (nd * nd * nd), 1.0 / (nd * nd * nd * nd)};
  }
  if (within.size() < 5) within.resize(5, 0.0);
  PlantedSpec spec;
  spec.cluster_sizes.assign(n / 200, 200);
  spec.edges = 10LL * n;
  spec.size_weights = {0.0, 0.0, 1.0, 1.0, 1.0};
  spec.within = within;
  PlantedInstance out = generate_planted(spec, seed);
  out.kind = "runtime";
  for (int k = 2; k <= 4; ++k) out.parameters["p" + std::to_string(k)] = format(within[k]);
  return out;
}

PlantedInstance generate_detectability(int n, double p2, double p3, double c2, double c3, std::uint64_t seed) {
  if (n < 4 || n % 2 != 0) throw std::invalid_argument("detectability instance needs an even n >= 4");
  for (double p : {p2, p3})
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("edge fractions must lie in [0, 1]");
  if (!(c2 >= 0.0) || !(c3 >= 0.0)) throw std::invalid_argument("mean degrees must be nonnegative");

  const int half = n / 2;
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(0.5);
  std::vector<std::vector<int>> edges;
  std::vector<int> nodes;

  auto add_edges = [&](int k, double c, double p) {
    const long long total = std::llround(n * c / k);
    const long long within = std::binomial_distribution<long long>(total, p)(rng);
    for (long long e = 0; e < total; ++e) {
      nodes.clear();
      const int a = coin(rng) ? 1 : 0;
      if (e < within) {
        draw_distinct(rng, a * half, half, k, nodes);
      } else {
        // k - 1 nodes on one side, one on the other: the only mixed profile for k <= 3
        draw_distinct(rng, a * half, half, k - 1, nodes);
        draw_distinct(rng, (1 - a) * half, half, 1, nodes);
      }
      edges.push_back(nodes);
    }
  };
  add_edges(2, c2, p2);
  add_edges(3, c3, p3);

  PlantedInstance out;
  std::vector<double> weights(edges.size(), 1.0);
  out.hypergraph = Hypergraph(n, std::move(edges), std::move(weights));
  out.labels.resize(n);
  for (int i = 0; i < n; ++i) out.labels[i] = i < half ? 0 : 1;
  out.kind = "detectability";
  out.seed = seed;
  out.parameters = {{"n", std::to_string(n)}, {"p2", format(p2)}, {"p3", format(p3)},
                    {"c2", format(c2)},       {"c3", format(c3)}};
  return out;
}

double exact_enumeration_size(int n, int kmax, int min_size) {
  double total = 0.0;
  for (int k = std::max(min_size, 1); k <= kmax; ++k) {
    // C(n + k - 1, k)
    double c = 1.0;
    for (int i = 1; i <= k; ++i) c = c * (n - 1 + i) / i;
    total += c;
  }
  return total;
}

Hypergraph sample_dchsbm_exact(int n, std::span<const int> z, std::span<const double> theta,
                               const ProfileAffinity& omega, int kmax, std::uint64_t seed, int min_size) {
  if (n < 1) throw std::invalid_argument("exact sampler needs at least one node");
  if (static_cast<int>(z.size()) != n || static_cast<int>(theta.size()) != n)
    throw std::invalid_argument("labels and degree parameters must have length n");
  if (min_size < 1 || kmax < min_size) throw std::invalid_argument("invalid edge size range");
  for (double t : theta)
    if (!(t >= 0.0)) throw std::invalid_argument("degree parameters must be nonnegative");
  if (exact_enumeration_size(n, kmax, min_size) > 1e6)
    throw EnumerationTooLarge("exact sampler enumeration exceeds 10^6 multisets");

  std::mt19937_64 rng(seed);
  std::vector<std::vector<int>> edges;
  std::vector<double> weights;
  std::vector<int> labels;
  for (int k = min_size; k <= kmax; ++k) {
    std::vector<int> r(k, 0);
    const double log_k_factorial = std::lgamma(k + 1.0);
    while (true) {
      double rate = std::exp(log_k_factorial);
      for (int i = 0; i < k;) {
        int j = i;
        while (j < k && r[j] == r[i]) ++j;
        rate /= std::exp(std::lgamma(j - i + 1.0));
        i = j;
      }
      for (int v : r) rate *= theta[v];
      if (rate > 0.0) {
        labels.clear();
        for (int v : r) labels.push_back(z[v]);
        rate *= omega(partition_profile(labels));
      }
      if (rate > 0.0) {
        const auto a = std::poisson_distribution<long long>(rate)(rng);
        if (a > 0) {
          edges.push_back(r);
          weights.push_back(static_cast<double>(a));
        }
      }
      // next nondecreasing tuple
      int pos = k - 1;
      while (pos >= 0 && r[pos] == n - 1) --pos;
      if (pos < 0) break;
      ++r[pos];
      for (int i = pos + 1; i < k; ++i) r[i] = r[pos];
    }
  }
  return Hypergraph(n, std::move(edges), std::move(weights));
}

Detectability dyadic_detectability(double c_in, double c_out) {
  if (!(c_in >= 0.0) || !(c_out >= 0.0)) throw std::invalid_argument("mean degrees must be nonnegative");
  if (!(c_in + c_out > 0.0)) throw std::invalid_argument("mean degrees must not both be zero");
  const double diff = c_in - c_out;
  Detectability out;
  out.value = diff * diff / (2.0 * (c_in + c_out));
  out.detectable = out.value >= 1.0;
  return out;
}

ProjectedDegrees projected_degrees(double p2, double p3, double c2, double c3) {
  ProjectedDegrees out;
  out.c_in = c2 * p2 + c3 * (2.0 * p3 + (1.0 - p3) * 2.0 / 3.0);
  out.c_out = c2 * (1.0 - p2) + c3 * (1.0 - p3) * 4.0 / 3.0;
  return out;
}

}  // namespace dchsbm
