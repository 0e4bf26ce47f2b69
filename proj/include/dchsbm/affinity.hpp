#pragma once

#include <compare>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dchsbm/partition.hpp"

namespace dchsbm {

/// Symmetric affinity families. Each maps a partition vector of size k to one
/// stratum (k, index); all profiles in a stratum share one parameter.
///   Aon: index 1 if the edge is homogeneous, else 0.
///   GroupNumber: index = number of distinct groups.
///   RelativePlurality: index 1 if p1 - p2 < k/4 (p2 = 0 for one group), else 0.
///   Pairwise: index 1 if sum_{i != j} p_i p_j < k(k-1)/4, else 0.
/// Size-1 edges always map to (1, 1).
enum class Family { Aon, GroupNumber, RelativePlurality, Pairwise };

std::string_view to_string(Family family);
/// Accepts "aon", "gn", "rp", "p" (case-insensitive). Throws std::invalid_argument.
Family parse_family(std::string_view name);

struct Stratum {
  int size = 0;
  int index = 0;
  friend auto operator<=>(const Stratum&, const Stratum&) = default;
};

Stratum stratum_of(Family family, const PartitionVector& p);
/// Valid stratum indices for size-k edges.
std::vector<int> stratum_indices(Family family, int k);

enum class StratumStatus {
  Supplied,  // set directly by the caller
  Fitted,    // closed-form estimate with positive count and mass
  Smoothed,  // zero observed count; replaced by 1 / (2 * mass)
  Imputed,   // zero mass (profile unrealizable under the fitting labels)
};

std::string_view to_string(StratumStatus status);

class MissingParameter : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

class DegenerateAffinity : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Parameter table of one family. Values are stored as logarithms so that the
/// tiny rates of large edges (~ vol(H)^-k) stay representable.
class AffinityModel {
 public:
  struct Entry {
    double log_value = 0.0;
    StratumStatus status = StratumStatus::Supplied;
  };

  explicit AffinityModel(Family family = Family::Aon) : family_(family) {}

  Family family() const { return family_; }

  /// value >= 0; throws std::invalid_argument for an index the family does not use.
  void set(int k, int index, double value, StratumStatus status = StratumStatus::Supplied);
  void set_log(int k, int index, double log_value, StratumStatus status = StratumStatus::Supplied);

  bool contains(int k, int index) const;
  bool has_size(int k) const;
  int max_size() const;

  double value(int k, int index) const;
  double log_value(int k, int index) const;
  StratumStatus status(int k, int index) const;

  /// Omega(p). Throws MissingParameter if the stratum has no entry.
  double evaluate(const PartitionVector& p) const;
  double log_evaluate(const PartitionVector& p) const;

  const std::map<Stratum, Entry>& entries() const { return entries_; }

 private:
  const Entry& lookup(int k, int index) const;

  Family family_;
  std::map<Stratum, Entry> entries_;
};

/// Parameters used in BIC: 2*kmax for Aon/RelativePlurality/Pairwise. For
/// GroupNumber, sum over k = 2..kmax of min(k, clusters), plus one when
/// size-1 edges are present.
int parameter_count(Family family, int kmax, int clusters, bool has_unit_edges = false);

/// AON rates for one edge size: omega_{k1} (homogeneous) and omega_{k0}.
struct AonOmega {
  double homogeneous = 0.0;
  double mixed = 0.0;
};

/// beta_k = log omega_{k1} - log omega_{k0}, gamma_k = (omega_{k1} - omega_{k0}) / beta_k,
/// indexed by edge size k (entries 0 and unset sizes are zero).
struct AonParams {
  std::vector<double> beta;
  std::vector<double> gamma;
};

/// Componentwise reparameterization. Sizes whose rates are both zero are
/// skipped. Throws std::invalid_argument for a nonpositive rate and
/// DegenerateAffinity when omega_{k1} == omega_{k0}.
AonParams aon_reparameterize(const std::vector<AonOmega>& omega);

/// Inverse map: omega_{k0} = beta*gamma / (e^beta - 1), omega_{k1} = e^beta * omega_{k0}.
/// Sizes with beta_k == 0 are left unset.
AffinityModel aon_model(const AonParams& params);

/// Total version for fitted models: missing or equal rates give beta = gamma = 0.
AonParams aon_params(const AffinityModel& model);

/// Weights of the AON objective in the units used by the optimizers:
/// volumes are divided by `scale`, so the volume term of size k is
/// volume_weight[k] * sum_l (vol(l)/scale)^k with volume_weight[k] = beta_k gamma_k scale^k.
struct AonWeights {
  double scale = 1.0;
  std::vector<double> beta;
  std::vector<double> volume_weight;

  int max_size() const { return static_cast<int>(beta.size()) - 1; }

  static AonWeights from_params(const AonParams& params, double scale);
  /// Requires an AON model. Throws std::invalid_argument if a rate is zero.
  static AonWeights from_model(const AffinityModel& model, double scale);
};

/// Text form: one "family k index value" line per stratum.
std::string serialize(const AffinityModel& model);
/// Blank lines and lines starting with '#' are skipped.
AffinityModel parse_affinity(std::string_view text);

}  // namespace dchsbm
