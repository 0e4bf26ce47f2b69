#include "dchsbm/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "dchsbm/clustering.hpp"
#include "dchsbm/cuts.hpp"
#include "dchsbm/louvain_aon.hpp"
#include "dchsbm/louvain_sym.hpp"
#include "dchsbm/volume_table.hpp"

namespace dchsbm {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double volume_scale(const Hypergraph& h) { return h.volume() > 0.0 ? h.volume() : 1.0; }

void check_labels(const Hypergraph& h, std::span<const int> z) {
  if (static_cast<int>(z.size()) != h.node_count())
    throw std::invalid_argument("label vector length does not match node count");
}

struct StratumSums {
  double count = 0.0;
  double mass = 0.0;  // in units of scale^k
};

// Observed weight and scaled volume mass per stratum, over realized sizes.
std::map<Stratum, StratumSums> stratum_sums(const Hypergraph& h, std::span<const int> z, Family family) {
  const auto cuts = cut_profiles(h, z);
  const Clustering clustering(h, z);
  const auto sizes = h.realized_sizes();
  const VolumeTable table(clustering.volumes(), sizes, volume_scale(h));
  std::map<Stratum, StratumSums> sums;
  for (int k : sizes) {
    for (const auto& p : integer_partitions(k)) {
      auto& s = sums[stratum_of(family, p)];
      auto it = cuts.find(p);
      if (it != cuts.end()) s.count += it->second;
      s.mass += table.vol_p(p);
    }
  }
  return sums;
}

}  // namespace

std::vector<double> estimate_theta(const Hypergraph& h) {
  return std::vector<double>(h.degrees().begin(), h.degrees().end());
}

AffinityModel estimate_omega(const Hypergraph& h, std::span<const int> z, Family family) {
  check_labels(h, z);
  const double log_scale = std::log(volume_scale(h));
  AffinityModel model(family);
  std::map<int, double> min_fitted;
  std::vector<Stratum> empty;
  for (const auto& [stratum, s] : stratum_sums(h, z, family)) {
    if (!(s.mass > 0.0)) {
      empty.push_back(stratum);
      continue;
    }
    const double log_mass = std::log(s.mass) + stratum.size * log_scale;
    double value;
    StratumStatus status;
    if (s.count > 0.0) {
      value = std::log(s.count) - log_mass;
      status = StratumStatus::Fitted;
    } else {
      value = -std::log(2.0) - log_mass;
      status = StratumStatus::Smoothed;
    }
    model.set_log(stratum.size, stratum.index, value, status);
    auto [it, inserted] = min_fitted.try_emplace(stratum.size, value);
    if (!inserted) it->second = std::min(it->second, value);
  }
  for (const auto& stratum : empty) {
    auto it = min_fitted.find(stratum.size);
    if (it != min_fitted.end()) model.set_log(stratum.size, stratum.index, it->second, StratumStatus::Imputed);
  }
  return model;
}

AffinityModel strict_modularity_model(const Hypergraph& h) {
  AffinityModel model(Family::Aon);
  const double log_vol = std::log(volume_scale(h));
  const double log_em1 = std::log(std::expm1(1.0));
  for (int k : h.realized_sizes()) {
    const double log_gamma = std::log(h.size_count(k)) - k * log_vol;
    if (k == 1) {
      model.set_log(1, 1, log_gamma, StratumStatus::Supplied);
      continue;
    }
    // omega_k0 = gamma / (e - 1), omega_k1 = e * omega_k0
    const double lw0 = log_gamma - log_em1;
    model.set_log(k, 0, lw0);
    model.set_log(k, 1, lw0 + 1.0);
  }
  return model;
}

double objective_q_symmetric(const Hypergraph& h, std::span<const int> z, const AffinityModel& omega) {
  check_labels(h, z);
  const auto cuts = cut_profiles(h, z);
  const Clustering clustering(h, z);
  const auto sizes = h.realized_sizes();
  const double scale = volume_scale(h);
  const double log_scale = std::log(scale);
  const VolumeTable table(clustering.volumes(), sizes, scale);
  double q = 0.0;
  for (int k : sizes) {
    for (const auto& p : integer_partitions(k)) {
      auto it = cuts.find(p);
      const double cut = it == cuts.end() ? 0.0 : it->second;
      const double mass = table.vol_p(p);
      if (cut == 0.0 && mass == 0.0) continue;
      const double lw = omega.log_evaluate(p);
      if (cut > 0.0) {
        if (lw == kNegInf) throw std::domain_error("affinity is zero on a profile with observed edges");
        q += cut * lw;
      }
      if (mass > 0.0 && lw != kNegInf) q -= std::exp(std::log(mass) + lw + k * log_scale);
    }
  }
  return q;
}

double objective_q_aon(const Hypergraph& h, std::span<const int> z, const AonWeights& weights) {
  check_labels(h, z);
  const auto cut = cut_sizes(h, z);
  const Clustering clustering(h, z);
  const int kmax = weights.max_size();
  std::vector<double> scaled(clustering.volumes().begin(), clustering.volumes().end());
  for (double& v : scaled) v /= weights.scale;
  const auto mu = moments(scaled, std::max(kmax, 0));
  double q = 0.0;
  for (int k = 1; k <= kmax; ++k) {
    const double c = k < static_cast<int>(cut.size()) ? cut[k] : 0.0;
    if (weights.beta[k] != 0.0) q -= weights.beta[k] * c;
    q -= weights.volume_weight[k] * mu[k];
  }
  return q;
}

double objective_q_aon(const Hypergraph& h, std::span<const int> z, const AonParams& params) {
  return objective_q_aon(h, z, AonWeights::from_params(params, volume_scale(h)));
}

double aon_constant(const Hypergraph& h, const AffinityModel& model) {
  if (model.family() != Family::Aon) throw std::invalid_argument("aon_constant needs an AON model");
  const double log_vol = std::log(volume_scale(h));
  double j = 0.0;
  for (int k : h.realized_sizes()) {
    const double m = h.size_count(k);
    const double l0 = k == 1 ? model.log_value(1, 1) : model.log_value(k, 0);
    const double beta = k == 1 ? 0.0 : model.log_value(k, 1) - l0;
    j += beta * m + m * l0 - std::exp(l0 + k * log_vol);
  }
  return j;
}

LikelihoodConstants likelihood_constants(const Hypergraph& h) {
  LikelihoodConstants out;
  for (double d : h.degrees())
    if (d > 0.0) out.degree_term += d * std::log(d);
  for (std::size_t e = 0; e < h.edge_count(); ++e) {
    auto nodes = h.edge(e);
    // b_R = k! / prod (multiplicity)!
    double log_b = std::lgamma(nodes.size() + 1.0);
    for (std::size_t i = 0; i < nodes.size();) {
      std::size_t j = i;
      while (j < nodes.size() && nodes[j] == nodes[i]) ++j;
      log_b -= std::lgamma(static_cast<double>(j - i) + 1.0);
      i = j;
    }
    const double a = h.weight(e);
    out.combinatorial_term += a * log_b - std::lgamma(a + 1.0);
  }
  return out;
}

double regularized(double q, int node_count, int clusters) {
  return q - node_count * std::log(static_cast<double>(std::max(clusters, 1)));
}

BicResult bic(const Hypergraph& h, std::span<const int> z, Family family) {
  check_labels(h, z);
  BicResult out;
  out.family = family;
  out.omega = estimate_omega(h, z, family);
  out.log_likelihood = objective_q_symmetric(h, z, out.omega);
  out.parameters = parameter_count(family, h.max_edge_size(), count_clusters(z), h.size_count(1) > 0.0);
  out.bic = out.parameters * std::log(h.total_weight()) - 2.0 * out.log_likelihood;
  return out;
}

std::string_view to_string(Optimizer optimizer) {
  switch (optimizer) {
    case Optimizer::SymmetricHmll: return "sym-hmll";
    case Optimizer::AonHmll: return "aon-hmll";
    case Optimizer::Gmll: return "gmll";
  }
  return "?";
}

double dyadic_modularity(const Hypergraph& g, std::span<const int> z) {
  check_labels(g, z);
  if (g.max_edge_size() > 2) throw std::invalid_argument("dyadic modularity needs a graph");
  const double m = g.size_count(2);
  if (!(m > 0.0)) throw std::invalid_argument("dyadic modularity of a graph without edges");
  const double internal = m - cut_k(g, z, 2);
  const Clustering clustering(g, z);
  const double vol = g.volume();
  double expected = 0.0;
  for (double v : clustering.volumes()) expected += (v / vol) * (v / vol);
  return internal / m - expected;
}

FitReport coordinate_ascent(const Hypergraph& h, const FitOptions& options) {
  if (options.rounds < 1) throw std::invalid_argument("rounds must be at least 1");
  if (h.empty()) throw std::invalid_argument("cannot fit a hypergraph without edges");
  const bool aon_optimizer = options.optimizer != Optimizer::SymmetricHmll;
  if (aon_optimizer && options.family != Family::Aon)
    throw std::invalid_argument(std::string(to_string(options.optimizer)) + " requires the AON family");
  if (options.optimizer == Optimizer::Gmll && h.max_edge_size() > 2)
    throw std::invalid_argument("gmll runs on graphs; project the hypergraph first");
  if (options.selection == Selection::DyadicModularity && h.max_edge_size() > 2)
    throw std::invalid_argument("modularity selection needs a graph");
  if (options.initial && options.initial->family() != options.family)
    throw std::invalid_argument("initial affinity family does not match");

  LouvainOptions louvain;
  louvain.regularize = options.regularize;
  louvain.shuffle = options.shuffle;
  louvain.seed = options.seed;
  louvain.max_sweeps = options.max_sweeps;

  AffinityModel omega(options.family);
  if (options.initial) {
    omega = *options.initial;
  } else if (!options.initial_labels.empty()) {
    omega = estimate_omega(h, options.initial_labels, options.family);
  } else if (options.family == Family::Aon) {
    omega = strict_modularity_model(h);
  } else {
    const auto seed_partition = aon_hmll(h, strict_modularity_model(h), louvain);
    omega = estimate_omega(h, seed_partition.labels, options.family);
  }

  FitReport report;
  std::vector<int> previous;
  double best = -std::numeric_limits<double>::infinity();
  for (int round = 0; round < options.rounds; ++round) {
    LouvainResult result = aon_optimizer ? aon_hmll(h, omega, louvain) : symmetric_hmll(h, omega, louvain);
    report.hit_sweep_cap = report.hit_sweep_cap || result.stats.hit_sweep_cap;
    if (options.refit) omega = estimate_omega(h, result.labels, options.family);

    RoundRecord record;
    record.clusters = count_clusters(result.labels);
    record.q = objective_q_symmetric(h, result.labels, omega);
    const double reg = options.regularize ? regularized(record.q, h.node_count(), record.clusters) : record.q;
    record.objective =
        options.selection == Selection::DyadicModularity ? dyadic_modularity(h, result.labels) : reg;
    report.trace.push_back(record);
    report.iterations = round + 1;

    if (record.objective > best) {
      best = record.objective;
      report.best_round = round;
      report.labels = result.labels;
      report.omega = omega;
      report.q_value = record.q;
      report.regularized_value = reg;
      report.clusters = record.clusters;
    }
    if (result.labels == previous || !options.refit) break;
    previous = std::move(result.labels);
  }
  return report;
}

}  // namespace dchsbm
