#include "dchsbm/dyadic.hpp"

#include <stdexcept>

#include "dchsbm/clustering.hpp"

namespace dchsbm {

namespace {

FitReport run(const WeightedGraph& g, const DyadicOptions& options, Selection selection) {
  if (g.pairs().empty()) throw std::invalid_argument("graph has no edges");
  FitOptions fit;
  fit.family = Family::Aon;
  fit.optimizer = Optimizer::Gmll;
  fit.rounds = options.rounds;
  fit.regularize = options.regularize;
  fit.seed = options.seed;
  fit.shuffle = options.shuffle;
  fit.selection = selection;
  fit.initial_labels = options.initial_labels;
  return coordinate_ascent(g.to_hypergraph(), fit);
}

}  // namespace

FitReport gmll(const WeightedGraph& g, const DyadicOptions& options) {
  return run(g, options, Selection::Likelihood);
}

FitReport gmll(const Hypergraph& h, bool normalized, const DyadicOptions& options) {
  return gmll(clique_projection(h, normalized), options);
}

FitReport graph_louvain_modularity(const WeightedGraph& g, const DyadicOptions& options) {
  return run(g, options, Selection::DyadicModularity);
}

}  // namespace dchsbm
