#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dchsbm/affinity.hpp"
#include "dchsbm/hypergraph.hpp"

namespace dchsbm {

/// Maximum-likelihood degree parameters: theta = d.
std::vector<double> estimate_theta(const Hypergraph& h);

/// Closed-form conditional estimate: for each stratum, observed weight over
/// volume mass, both summed over the stratum's profiles for every realized
/// edge size. Strata with zero count are smoothed to 1 / (2 * mass); strata
/// with zero mass get the smallest fitted rate of the same size.
AffinityModel estimate_omega(const Hypergraph& h, std::span<const int> z, Family family);

/// beta_k = 1, gamma_k = m_k / vol(H)^k for every realized size, expressed
/// as an AON model (computed in log space).
AffinityModel strict_modularity_model(const Hypergraph& h);

/// sum_p [cut_p log Omega(p) - vol_p Omega(p)] over partitions of realized
/// sizes. Throws std::domain_error if Omega(p) = 0 where cut_p > 0, and
/// MissingParameter if a needed stratum is absent.
double objective_q_symmetric(const Hypergraph& h, std::span<const int> z, const AffinityModel& omega);

/// -sum_k beta_k [cut_k + gamma_k sum_l vol(l)^k]; equals the symmetric
/// objective of the matching AON model minus aon_constant().
double objective_q_aon(const Hypergraph& h, std::span<const int> z, const AonWeights& weights);
double objective_q_aon(const Hypergraph& h, std::span<const int> z, const AonParams& params);

/// sum_k [beta_k m_k + m_k log omega_k0 - omega_k0 vol(H)^k] over realized
/// sizes (size-1 edges use omega_11 in place of omega_k0).
double aon_constant(const Hypergraph& h, const AffinityModel& model);

/// Parts of the full log-likelihood that Q leaves out: K = sum_i d_i log theta_i
/// at theta = d, and C = sum_R [a_R log b_R - log a_R!].
struct LikelihoodConstants {
  double degree_term = 0.0;
  double combinatorial_term = 0.0;
};
LikelihoodConstants likelihood_constants(const Hypergraph& h);

/// Q - n log(clusters).
double regularized(double q, int node_count, int clusters);

struct BicResult {
  Family family = Family::Aon;
  double bic = 0.0;
  double log_likelihood = 0.0;
  int parameters = 0;
  AffinityModel omega;
};

/// nu ln(sum_k m_k) - 2 Q(z, fitted Omega); lower is better.
BicResult bic(const Hypergraph& h, std::span<const int> z, Family family);

enum class Optimizer { SymmetricHmll, AonHmll, Gmll };
enum class Selection { Likelihood, DyadicModularity };

std::string_view to_string(Optimizer optimizer);

struct FitOptions {
  Family family = Family::Aon;
  Optimizer optimizer = Optimizer::AonHmll;
  int rounds = 1;
  bool regularize = false;
  /// Re-estimate Omega after each round. When false the initial Omega is kept.
  bool refit = true;
  /// Starting parameters; by default strict modularity (AON) or a fit to
  /// the strict-modularity AON partition (other families).
  std::optional<AffinityModel> initial;
  /// When nonempty (and no initial model is given), the first Omega is fitted
  /// on this partition instead.
  std::vector<int> initial_labels;
  Selection selection = Selection::Likelihood;
  std::uint64_t seed = 0;
  /// Visit nodes in a seeded random order instead of ascending id.
  bool shuffle = false;
  int max_sweeps = 10000;
};

struct RoundRecord {
  double objective = 0.0;   // value used for selection
  double q = 0.0;
  int clusters = 0;
};

struct FitReport {
  std::vector<int> labels;
  AffinityModel omega;
  double q_value = 0.0;
  /// Q - n log(clusters); equals q_value when regularization is off.
  double regularized_value = 0.0;
  int clusters = 0;
  int iterations = 0;
  int best_round = 0;
  std::vector<RoundRecord> trace;
  bool hit_sweep_cap = false;
};

/// Alternates Omega estimation and partition optimization, returning the
/// best round. Throws std::invalid_argument when the optimizer cannot handle
/// the family (AonHmll and Gmll need AON; Gmll needs a graph).
FitReport coordinate_ascent(const Hypergraph& h, const FitOptions& options);

/// Classical dyadic modularity of z on a hypergraph of size-2 edges.
double dyadic_modularity(const Hypergraph& g, std::span<const int> z);

}  // namespace dchsbm
