#include "dchsbm/metrics.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

#include "dchsbm/clustering.hpp"

namespace dchsbm {

namespace {

double pairs(double x) { return x * (x - 1.0) / 2.0; }

}  // namespace

double ari(std::span<const int> a, std::span<const int> b) {
  if (a.size() != b.size()) throw std::invalid_argument("ari: partitions differ in length");
  if (a.size() < 2) throw std::invalid_argument("ari: need at least two items");
  const auto ca = compact_labels(a);
  const auto cb = compact_labels(b);
  std::map<std::pair<int, int>, double> table;
  std::map<int, double> rows, cols;
  for (std::size_t i = 0; i < ca.size(); ++i) {
    table[{ca[i], cb[i]}] += 1.0;
    rows[ca[i]] += 1.0;
    cols[cb[i]] += 1.0;
  }
  double index = 0.0, sum_rows = 0.0, sum_cols = 0.0;
  for (const auto& [key, count] : table) index += pairs(count);
  for (const auto& [key, count] : rows) sum_rows += pairs(count);
  for (const auto& [key, count] : cols) sum_cols += pairs(count);
  const double expected = sum_rows * sum_cols / pairs(static_cast<double>(ca.size()));
  const double max_index = 0.5 * (sum_rows + sum_cols);
  if (max_index == expected) return 1.0;
  return (index - expected) / (max_index - expected);
}

SummaryStats summary_stats(const Hypergraph& h, std::span<const int> labels, bool sample) {
  SummaryStats s;
  s.nodes = h.node_count();
  s.edges = h.total_weight();
  auto spread = [sample](double sum, double sum_sq, double count) {
    if (count <= (sample ? 1.0 : 0.0)) return 0.0;
    const double mean = sum / count;
    const double var = (sum_sq - count * mean * mean) / (sample ? count - 1.0 : count);
    return std::sqrt(std::max(var, 0.0));
  };
  double sum = 0.0, sum_sq = 0.0;
  for (double d : h.degrees()) {
    sum += d;
    sum_sq += d * d;
  }
  if (s.nodes > 0) s.mean_degree = sum / s.nodes;
  s.sd_degree = spread(sum, sum_sq, s.nodes);
  sum = sum_sq = 0.0;
  for (std::size_t e = 0; e < h.edge_count(); ++e) {
    const double k = h.edge_size(e);
    sum += h.weight(e) * k;
    sum_sq += h.weight(e) * k * k;
  }
  if (s.edges > 0) s.mean_edge_size = sum / s.edges;
  s.sd_edge_size = spread(sum, sum_sq, s.edges);
  if (!labels.empty()) {
    if (static_cast<int>(labels.size()) != h.node_count())
      throw std::invalid_argument("label vector length does not match node count");
    s.clusters = count_clusters(labels);
  }
  return s;
}

}  // namespace dchsbm
