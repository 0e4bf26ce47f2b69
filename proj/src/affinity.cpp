#include "dchsbm/affinity.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

namespace dchsbm {

std::string_view to_string(Family family) {
  switch (family) {
    case Family::Aon: return "aon";
    case Family::GroupNumber: return "gn";
    case Family::RelativePlurality: return "rp";
    case Family::Pairwise: return "p";
  }
  return "?";
}

Family parse_family(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "aon") return Family::Aon;
  if (lower == "gn") return Family::GroupNumber;
  if (lower == "rp") return Family::RelativePlurality;
  if (lower == "p") return Family::Pairwise;
  throw std::invalid_argument("unknown affinity family '" + std::string(name) + "'");
}

std::string_view to_string(StratumStatus status) {
  switch (status) {
    case StratumStatus::Supplied: return "supplied";
    case StratumStatus::Fitted: return "fitted";
    case StratumStatus::Smoothed: return "smoothed";
    case StratumStatus::Imputed: return "imputed";
  }
  return "?";
}

Stratum stratum_of(Family family, const PartitionVector& p) {
  const int k = p.size();
  const int r = p.groups();
  if (k <= 1) return {k, 1};
  switch (family) {
    case Family::Aon:
      return {k, r == 1 ? 1 : 0};
    case Family::GroupNumber:
      return {k, r};
    case Family::RelativePlurality: {
      const int second = r >= 2 ? p[1] : 0;
      return {k, 4 * (p[0] - second) < k ? 1 : 0};
    }
    case Family::Pairwise: {
      // ordered pairs of positions in different groups: k^2 - sum p_j^2
      long long squares = 0;
      for (int part : p.parts()) squares += static_cast<long long>(part) * part;
      const long long mixed = static_cast<long long>(k) * k - squares;
      return {k, 4 * mixed < static_cast<long long>(k) * (k - 1) ? 1 : 0};
    }
  }
  return {k, 0};
}

std::vector<int> stratum_indices(Family family, int k) {
  if (k <= 1) return {1};
  if (family == Family::GroupNumber) {
    std::vector<int> out(k);
    for (int g = 1; g <= k; ++g) out[g - 1] = g;
    return out;
  }
  return {0, 1};
}

void AffinityModel::set(int k, int index, double value, StratumStatus status) {
  if (!(value >= 0.0) || !std::isfinite(value))
    throw std::invalid_argument("affinity values must be finite and nonnegative");
  set_log(k, index, value > 0.0 ? std::log(value) : -std::numeric_limits<double>::infinity(),
          status);
}

void AffinityModel::set_log(int k, int index, double log_value, StratumStatus status) {
  if (k < 1) throw std::invalid_argument("edge size must be positive");
  const auto valid = stratum_indices(family_, k);
  if (std::find(valid.begin(), valid.end(), index) == valid.end())
    throw std::invalid_argument("stratum index " + std::to_string(index) + " not used by family " +
                                std::string(to_string(family_)) + " at size " + std::to_string(k));
  if (std::isnan(log_value) || log_value == std::numeric_limits<double>::infinity())
    throw std::invalid_argument("affinity log-value must be finite or -inf");
  entries_[{k, index}] = {log_value, status};
}

bool AffinityModel::contains(int k, int index) const { return entries_.count({k, index}) > 0; }

bool AffinityModel::has_size(int k) const {
  auto it = entries_.lower_bound({k, std::numeric_limits<int>::min()});
  return it != entries_.end() && it->first.size == k;
}

int AffinityModel::max_size() const { return entries_.empty() ? 0 : entries_.rbegin()->first.size; }

const AffinityModel::Entry& AffinityModel::lookup(int k, int index) const {
  auto it = entries_.find({k, index});
  if (it == entries_.end())
    throw MissingParameter("no affinity parameter for stratum (" + std::to_string(k) + ", " +
                           std::to_string(index) + ")");
  return it->second;
}

double AffinityModel::value(int k, int index) const { return std::exp(lookup(k, index).log_value); }
double AffinityModel::log_value(int k, int index) const { return lookup(k, index).log_value; }
StratumStatus AffinityModel::status(int k, int index) const { return lookup(k, index).status; }

double AffinityModel::evaluate(const PartitionVector& p) const { return std::exp(log_evaluate(p)); }

double AffinityModel::log_evaluate(const PartitionVector& p) const {
  const Stratum s = stratum_of(family_, p);
  return lookup(s.size, s.index).log_value;
}

int parameter_count(Family family, int kmax, int clusters, bool has_unit_edges) {
  if (family != Family::GroupNumber) return 2 * kmax;
  int count = has_unit_edges ? 1 : 0;
  for (int k = 2; k <= kmax; ++k) count += std::min(k, clusters);
  return count;
}

AonParams aon_reparameterize(const std::vector<AonOmega>& omega) {
  AonParams out;
  out.beta.assign(omega.size(), 0.0);
  out.gamma.assign(omega.size(), 0.0);
  for (std::size_t k = 0; k < omega.size(); ++k) {
    const auto [w1, w0] = omega[k];
    if (w1 == 0.0 && w0 == 0.0) continue;
    if (!(w1 > 0.0) || !(w0 > 0.0))
      throw std::invalid_argument("AON rates must be positive at size " + std::to_string(k));
    if (w1 == w0) throw DegenerateAffinity("omega_k1 == omega_k0 at size " + std::to_string(k));
    out.beta[k] = std::log(w1) - std::log(w0);
    out.gamma[k] = (w1 - w0) / out.beta[k];
  }
  return out;
}

AffinityModel aon_model(const AonParams& params) {
  AffinityModel model(Family::Aon);
  for (std::size_t k = 2; k < params.beta.size(); ++k) {
    const double beta = params.beta[k];
    if (beta == 0.0) continue;
    const double w0 = beta * params.gamma[k] / std::expm1(beta);
    if (!(w0 > 0.0)) throw std::invalid_argument("AON parameters give a nonpositive rate");
    const double lw0 = std::log(w0);
    model.set_log(static_cast<int>(k), 0, lw0);
    model.set_log(static_cast<int>(k), 1, lw0 + beta);
  }
  return model;
}

AonParams aon_params(const AffinityModel& model) {
  AonParams out;
  const int kmax = model.max_size();
  out.beta.assign(kmax + 1, 0.0);
  out.gamma.assign(kmax + 1, 0.0);
  for (int k = 2; k <= kmax; ++k) {
    if (!model.contains(k, 0) || !model.contains(k, 1)) continue;
    const double l1 = model.log_value(k, 1);
    const double l0 = model.log_value(k, 0);
    if (l1 == l0 || !std::isfinite(l1) || !std::isfinite(l0)) continue;
    out.beta[k] = l1 - l0;
    out.gamma[k] = (std::exp(l1) - std::exp(l0)) / out.beta[k];
  }
  return out;
}

AonWeights AonWeights::from_params(const AonParams& params, double scale) {
  if (!(scale > 0.0)) throw std::invalid_argument("volume scale must be positive");
  AonWeights w;
  w.scale = scale;
  w.beta = params.beta;
  w.volume_weight.assign(params.beta.size(), 0.0);
  const double log_scale = std::log(scale);
  for (std::size_t k = 0; k < params.beta.size(); ++k) {
    const double bg = params.beta[k] * (k < params.gamma.size() ? params.gamma[k] : 0.0);
    if (bg == 0.0) continue;
    w.volume_weight[k] = std::copysign(std::exp(std::log(std::abs(bg)) + k * log_scale), bg);
  }
  return w;
}

AonWeights AonWeights::from_model(const AffinityModel& model, double scale) {
  if (model.family() != Family::Aon) throw std::invalid_argument("AON weights need an AON model");
  if (!(scale > 0.0)) throw std::invalid_argument("volume scale must be positive");
  AonWeights w;
  w.scale = scale;
  const int kmax = model.max_size();
  w.beta.assign(kmax + 1, 0.0);
  w.volume_weight.assign(kmax + 1, 0.0);
  const double log_scale = std::log(scale);
  for (int k = 2; k <= kmax; ++k) {
    if (!model.contains(k, 0) || !model.contains(k, 1)) continue;
    const double l1 = model.log_value(k, 1);
    const double l0 = model.log_value(k, 0);
    if (!std::isfinite(l1) || !std::isfinite(l0))
      throw std::invalid_argument("AON rate is zero at size " + std::to_string(k));
    if (l1 == l0) continue;
    w.beta[k] = l1 - l0;
    // beta*gamma*s^k = (omega_k1 - omega_k0) s^k, formed in log space
    w.volume_weight[k] = std::exp(l1 + k * log_scale) - std::exp(l0 + k * log_scale);
  }
  return w;
}

std::string serialize(const AffinityModel& model) {
  std::ostringstream out;
  out.precision(17);
  for (const auto& [s, entry] : model.entries())
    out << to_string(model.family()) << ' ' << s.size << ' ' << s.index << ' '
        << std::exp(entry.log_value) << '\n';
  return out.str();
}

AffinityModel parse_affinity(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::optional<AffinityModel> model;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    std::string family;
    int k = 0, index = 0;
    double value = 0.0;
    if (!(fields >> family >> k >> index >> value))
      throw std::invalid_argument("malformed affinity line " + std::to_string(line_no));
    const Family f = parse_family(family);
    if (!model) model.emplace(f);
    if (model->family() != f)
      throw std::invalid_argument("mixed affinity families at line " + std::to_string(line_no));
    model->set(k, index, value);
  }
  if (!model) throw std::invalid_argument("affinity text has no entries");
  return *model;
}

}  // namespace dchsbm
