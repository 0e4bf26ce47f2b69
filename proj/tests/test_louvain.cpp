#include <doctest.h>

#include <cmath>
#include <memory>
#include <random>
#include <set>

#include "dchsbm/clustering.hpp"
#include "dchsbm/estimation.hpp"
#include "dchsbm/louvain_aon.hpp"
#include "dchsbm/louvain_sym.hpp"
#include "oracles.hpp"

using namespace dchsbm;

namespace {

const Family kFamilies[] = {Family::Aon, Family::GroupNumber, Family::RelativePlurality, Family::Pairwise};

AffinityModel random_model(std::mt19937_64& rng, Family f, int kmax) {
  std::uniform_real_distribution<double> u(-6.0, -1.0);
  AffinityModel m(f);
  for (int k = 1; k <= kmax; ++k)
    for (int index : stratum_indices(f, k)) m.set_log(k, index, u(rng));
  return m;
}

// Two dense blobs {0..4} and {5..9} joined by a single edge.
Hypergraph two_blobs() {
  std::vector<EdgeInput> edges;
  for (int base : {1, 6}) {
    for (int a = 0; a < 5; ++a)
      for (int b = a + 1; b < 5; ++b) edges.push_back({{base + a, base + b}, 1});
    edges.push_back({{base, base + 1, base + 2}, 1});
    edges.push_back({{base + 2, base + 3, base + 4}, 1});
  }
  edges.push_back({{5, 6}, 1});
  return build_hypergraph(edges);
}

std::vector<int> blob_truth() { return {0, 0, 0, 0, 0, 1, 1, 1, 1, 1}; }

template <typename F>
std::vector<int> exhaustive_argmax(int n, F objective) {
  std::vector<int> best;
  double best_value = -1e300;
  for (const auto& z : oracle::all_partitions(n)) {
    const double v = objective(z);
    if (v > best_value) {
      best_value = v;
      best = z;
    }
  }
  return best;
}

std::vector<int> expanded(const MoveEvent& e) {
  std::vector<int> z(e.node_to_unit.size());
  for (std::size_t i = 0; i < z.size(); ++i) z[i] = e.level_labels[e.node_to_unit[i]];
  return z;
}

}  // namespace

TEST_CASE("symmetric delta matches recomputation") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 40; ++t) {
    const int n = 12;
    const auto h = oracle::random_hypergraph(rng, n, 25, 1, 4, 2);
    const auto z = oracle::random_labels(rng, n, 4);
    for (Family f : kFamilies) {
      const auto m = random_model(rng, f, 4);
      std::uniform_int_distribution<int> pick(0, n - 1);
      const int label = z[pick(rng)];
      std::vector<int> set;
      for (int i = 0; i < n; ++i)
        if (z[i] == label) set.push_back(i);
      for (int target : {0, 1, 2, 3, 7}) {
        auto after = z;
        for (int v : set) after[v] = target;
        for (bool reg : {false, true}) {
          double expected = objective_q_symmetric(h, after, m) - objective_q_symmetric(h, z, m);
          if (reg) expected += regularized(0.0, n, count_clusters(after)) - regularized(0.0, n, count_clusters(z));
          CHECK(delta_q_symmetric(h, m, z, set, target, reg) == doctest::Approx(expected).epsilon(1e-8));
        }
      }
      CHECK(delta_q_symmetric(h, m, z, set, label) == 0.0);
    }
  }
}

TEST_CASE("symmetric delta rejects mixed sets") {
  const auto h = two_blobs();
  const auto m = random_model(*std::make_unique<std::mt19937_64>(1), Family::Aon, 3);
  CHECK_THROWS_AS(delta_q_symmetric(h, m, blob_truth(), std::vector<int>{0, 9}, 0), std::invalid_argument);
}

TEST_CASE("symmetric step absorbs a misplaced singleton") {
  std::vector<EdgeInput> edges{{{1, 2}, 2}, {{1, 3}, 2}, {{2, 3}, 2}, {{1, 2, 3}, 1}, {{4, 5}, 3}, {{3, 5}, 1}};
  const auto h = build_hypergraph(edges);
  const std::vector<int> truth{0, 0, 0, 1, 1};
  const auto m = estimate_omega(h, truth, Family::Aon);
  const std::vector<int> start{0, 0, 2, 1, 1};
  const double before = objective_q_symmetric(h, start, m);
  const auto z = symmetric_hmll_step(h, m, start);
  CHECK(z == truth);
  CHECK(objective_q_symmetric(h, z, m) > before);
  const auto best = exhaustive_argmax(5, [&](const std::vector<int>& y) { return objective_q_symmetric(h, y, m); });
  CHECK(compact_labels(best) == truth);
}

TEST_CASE("symmetric HMLL separates two blobs") {
  const auto h = two_blobs();
  for (Family f : kFamilies) {
    const auto m = estimate_omega(h, blob_truth(), f);
    const auto result = symmetric_hmll(h, m);
    CHECK(result.labels == blob_truth());
    const auto best = exhaustive_argmax(10, [&](const std::vector<int>& y) { return objective_q_symmetric(h, y, m); });
    CHECK(compact_labels(best) == result.labels);
    CHECK(symmetric_hmll_step(h, m, result.labels) == result.labels);
  }
}

TEST_CASE("constant affinity never moves") {
  const auto h = two_blobs();
  AffinityModel m(Family::Aon);
  for (int k = 2; k <= 3; ++k) {
    m.set(k, 0, 0.01);
    m.set(k, 1, 0.01);
  }
  const auto result = symmetric_hmll(h, m);
  CHECK(result.labels == singleton_labels(10));
  CHECK(result.stats.moves == 0);
}

TEST_CASE("symmetric moves increase the objective and stay adjacent") {
  std::mt19937_64 rng(33);
  for (int t = 0; t < 20; ++t) {
    const int n = 14;
    const auto h = oracle::random_hypergraph(rng, n, 30, 2, 4);
    const auto truth = oracle::random_labels(rng, n, 3);
    for (Family f : kFamilies) {
      const auto m = estimate_omega(h, truth, f);
      for (bool reg : {false, true}) {
        LouvainOptions options;
        options.regularize = reg;
        auto value = [&](const std::vector<int>& z) {
          const double q = objective_q_symmetric(h, z, m);
          return reg ? regularized(q, n, count_clusters(z)) : q;
        };
        const double start = value(singleton_labels(n));
        double last = start;
        double total_gain = 0.0;
        bool increasing = true, adjacent = true, gains_match = true;
        options.on_move = [&](const MoveEvent& e) {
          const auto now = expanded(e);
          // the moved set shared an edge with its target before moving
          bool touches = false;
          for (std::size_t k = 0; k < h.edge_count() && !touches; ++k) {
            bool has_set = false, has_target = false;
            for (int v : h.edge(k)) {
              const int unit = e.node_to_unit[v];
              has_set |= unit == e.mover;
              has_target |= unit != e.mover && e.level_labels[unit] == e.to;
            }
            touches = has_set && has_target;
          }
          adjacent &= touches;
          const double v = value(now);
          increasing &= v > last;
          gains_match &= std::abs((v - last) - e.gain) <= 1e-8 * std::max(1.0, std::abs(v));
          total_gain += e.gain;
          last = v;
        };
        const auto result = symmetric_hmll(h, m, options);
        CHECK(increasing);
        CHECK(adjacent);
        CHECK(gains_match);
        CHECK(value(result.labels) - start == doctest::Approx(total_gain).epsilon(1e-8));
        options.on_move = nullptr;
        CHECK(symmetric_hmll_step(h, m, result.labels, options) == result.labels);
      }
    }
  }
}

TEST_CASE("symmetric HMLL with AON matches the specialized optimizer") {
  std::mt19937_64 rng(35);
  for (int t = 0; t < 20; ++t) {
    const int n = 20;
    const auto h = oracle::random_hypergraph(rng, n, 45, 2, 4);
    const auto m = estimate_omega(h, oracle::random_labels(rng, n, 3), Family::Aon);
    std::vector<std::tuple<int, int, int>> sym_moves, aon_moves;
    LouvainOptions options;
    options.on_move = [&](const MoveEvent& e) { sym_moves.emplace_back(e.mover, e.from, e.to); };
    const auto a = symmetric_hmll(h, m, options);
    options.on_move = [&](const MoveEvent& e) { aon_moves.emplace_back(e.mover, e.from, e.to); };
    const auto b = aon_hmll(h, m, options);
    CHECK(sym_moves == aon_moves);
    CHECK(a.labels == b.labels);
  }
}

TEST_CASE("sweep cap is reported") {
  const auto h = two_blobs();
  const auto m = estimate_omega(h, blob_truth(), Family::Aon);
  LouvainOptions options;
  options.max_sweeps = 1;
  LouvainStats stats;
  symmetric_hmll_step(h, m, singleton_labels(10), options, &stats);
  CHECK(stats.hit_sweep_cap);
  CHECK(stats.sweeps == 1);
}

TEST_CASE("collapse example") {
  std::vector<EdgeInput> edges{{{1, 2}, 1}, {{1, 2, 3}, 1}};
  const auto h = build_hypergraph(edges);
  const auto c = collapse(h, std::vector<int>{1, 1, 2});
  CHECK(c.supernode_count == 2);
  CHECK(c.fixed_internal[2] == 1.0);
  CHECK(c.fixed_internal[3] == 0.0);
  REQUIRE(c.edge_count() == 1);
  CHECK(std::vector<int>(c.edge(0).begin(), c.edge(0).end()) == std::vector<int>{0, 1});
  CHECK(c.original_size[0] == 3);
  CHECK(c.weight[0] == 1.0);
  CHECK(c.degrees == std::vector<double>{h.degree(0) + h.degree(1), h.degree(2)});
  CHECK(c.member_count == std::vector<int>{2, 1});
}

TEST_CASE("collapse extremes and deduplication") {
  std::vector<EdgeInput> edges{{{1, 3}, 1}, {{2, 3}, 1}, {{1, 2, 3}, 1}, {{4, 5}, 2}};
  const auto h = build_hypergraph(edges);

  const auto s = collapse(h, singleton_labels(5));
  CHECK(s.supernode_count == 5);
  CHECK(s.edge_count() == h.edge_count());
  double fixed = 0.0;
  for (double w : s.fixed_internal) fixed += w;
  CHECK(fixed == 0.0);

  const auto one = collapse(h, std::vector<int>(5, 0));
  CHECK(one.supernode_count == 1);
  CHECK(one.edge_count() == 0);
  CHECK(one.fixed_internal[2] == 4.0);
  CHECK(one.fixed_internal[3] == 1.0);

  const auto c = collapse(h, std::vector<int>{0, 0, 1, 2, 2});
  // {1,3} and {2,3} merge; {1,2,3} keeps its own size
  REQUIRE(c.edge_count() == 2);
  for (std::size_t e = 0; e < c.edge_count(); ++e) {
    CHECK(c.edge(e).size() == 2);
    CHECK(c.weight[e] == (c.original_size[e] == 2 ? 2.0 : 1.0));
  }
  double total = 0.0;
  for (double d : c.degrees) total += d;
  CHECK(total == h.volume());
}

TEST_CASE("AON delta examples") {
  std::vector<EdgeInput> edges{{{1, 4}, 2}, {{2, 4}, 2}, {{3, 4}, 6}};
  const auto h = build_hypergraph(edges);
  const auto c = collapse(h, singleton_labels(4));
  AonParams params;
  params.beta = {0, 0, 1.0};
  params.gamma = {0, 0, 0.5};
  const auto w = AonWeights::from_params(params, 1.0);
  CHECK(delta_q_aon(c, std::vector<int>{0, 0, 1, 2}, 0, 1, w) == -8.0);
  CHECK(delta_q_aon(c, std::vector<int>{0, 0, 1, 2}, 0, 0, w) == 0.0);

  std::vector<EdgeInput> tri{{{1, 2, 3}, 2}};
  const auto h3 = build_hypergraph(tri);
  const auto c3 = collapse(h3, singleton_labels(3));
  AonParams cut_only;
  cut_only.beta = {0, 0, 0, 1.0};
  cut_only.gamma = {0, 0, 0, 0};
  CHECK(delta_q_aon(c3, std::vector<int>{0, 0, 1}, 2, 0, AonWeights::from_params(cut_only, 1.0)) == 2.0);
}

TEST_CASE("AON delta matches recomputation") {
  std::mt19937_64 rng(37);
  for (int t = 0; t < 60; ++t) {
    const int n = 14;
    const auto h = oracle::random_hypergraph(rng, n, 30, 2, 5, 2);
    const auto coarse = oracle::random_labels(rng, n, 8);
    const auto c = collapse(h, coarse);
    const auto zbar = oracle::random_labels(rng, c.supernode_count, 4);
    std::uniform_real_distribution<double> u(0.2, 2.0), g(1e-5, 1e-2);
    AonParams params;
    params.beta = {0, 0, u(rng), u(rng), u(rng), u(rng)};
    params.gamma = {0, 0, g(rng), g(rng), g(rng), g(rng)};
    const auto w = AonWeights::from_params(params, h.volume());
    std::uniform_int_distribution<int> pick(0, c.supernode_count - 1);
    const int i = pick(rng);
    for (int target = 0; target < c.supernode_count; ++target) {
      auto after = zbar;
      after[i] = target;
      if (count_clusters(after) > count_clusters(zbar)) continue;  // moves go to occupied clusters
      for (bool reg : {false, true}) {
        double expected = objective_aon_collapsed(c, after, w) - objective_aon_collapsed(c, zbar, w);
        if (reg) expected += regularized(0.0, n, count_clusters(after)) - regularized(0.0, n, count_clusters(zbar));
        const double scale = std::max(1.0, std::abs(objective_aon_collapsed(c, zbar, w)));
        CHECK(std::abs(delta_q_aon(c, zbar, i, target, w, reg, n) - expected) <= 1e-12 * scale);
      }
    }
  }
}

TEST_CASE("collapse preserves the AON objective") {
  std::mt19937_64 rng(39);
  for (int t = 0; t < 40; ++t) {
    const int n = 15;
    const auto h = oracle::random_hypergraph(rng, n, 30, 2, 4, 3);
    const auto z = oracle::random_labels(rng, n, 6);
    AonParams params;
    params.beta = {0, 0, 1.0, 0.7, 1.3};
    params.gamma = {0, 0, 1e-3, 1e-5, 1e-7};
    const auto w = AonWeights::from_params(params, h.volume());
    const auto c = collapse(h, z);
    const auto identity = singleton_labels(c.supernode_count);
    CHECK(objective_aon_collapsed(c, identity, w) == doctest::Approx(objective_q_aon(h, z, w)).epsilon(1e-12));
    const auto zbar = oracle::random_labels(rng, c.supernode_count, 3);
    CHECK(objective_aon_collapsed(c, zbar, w) ==
          doctest::Approx(objective_q_aon(h, expand(c, zbar), w)).epsilon(1e-12));
    CHECK(expand(c, identity) == compact_labels(z));
  }
}

TEST_CASE("expand composes memberships") {
  std::vector<EdgeInput> edges{{{1, 2}, 1}, {{3, 4}, 1}, {{2, 3}, 1}};
  const auto h = build_hypergraph(edges);
  const auto c = collapse(h, std::vector<int>{5, 5, 7, 9});
  CHECK(expand(c, std::vector<int>{2, 2, 1}) == std::vector<int>{0, 0, 0, 1});
  CHECK_THROWS_AS(expand(c, std::vector<int>{0, 1}), std::invalid_argument);
}

TEST_CASE("AON step merges tightly joined supernodes") {
  // three disconnected pairs pad the volume to 72 so that 5 - 15 * 16 / 72 > 0
  std::vector<EdgeInput> edges{{{1, 2}, 5},  {{3, 4}, 5},   {{5, 6}, 5},   {{2, 3}, 5},
                               {{4, 5}, 1},  {{7, 8}, 5},   {{9, 10}, 5},  {{11, 12}, 5}};
  const auto h = build_hypergraph(edges);
  const auto c = collapse(h, std::vector<int>{0, 0, 1, 1, 2, 2, 3, 3, 4, 4, 5, 5});
  const auto w = AonWeights::from_model(strict_modularity_model(h), h.volume());
  LouvainStats stats;
  const auto zbar = aon_louvain_step(c, w, 12, {}, &stats);
  CHECK(stats.moves == 1);
  CHECK(zbar[0] == zbar[1]);
  CHECK(zbar[2] != zbar[0]);
  CHECK(aon_louvain_step(collapse(h, expand(c, zbar)), w, 12) == singleton_labels(5));
}

TEST_CASE("AON HMLL on two blobs matches the exhaustive optimum") {
  const auto h = two_blobs();
  const auto m = estimate_omega(h, blob_truth(), Family::Aon);
  const auto w = AonWeights::from_model(m, h.volume());
  const auto result = aon_hmll(h, m);
  CHECK(result.labels == blob_truth());
  const auto best = exhaustive_argmax(10, [&](const std::vector<int>& y) { return objective_q_aon(h, y, w); });
  CHECK(compact_labels(best) == result.labels);
  const auto again = aon_hmll(h, m, {}, result.labels);
  CHECK(again.labels == result.labels);
  CHECK(again.stats.moves == 0);
}

TEST_CASE("AON HMLL moves increase the objective") {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 20; ++t) {
    const int n = 40;
    const auto h = oracle::random_hypergraph(rng, n, 90, 2, 4);
    const auto truth = oracle::random_labels(rng, n, 4);
    const auto m = estimate_omega(h, truth, Family::Aon);
    const auto w = AonWeights::from_model(m, h.volume());
    for (bool reg : {false, true}) {
      LouvainOptions options;
      options.regularize = reg;
      options.shuffle = t % 2 == 1;
      options.seed = t;
      auto value = [&](const std::vector<int>& z) {
        const double q = objective_q_aon(h, z, w);
        return reg ? regularized(q, n, count_clusters(z)) : q;
      };
      double last = value(singleton_labels(n));
      bool increasing = true, gains_match = true;
      options.on_move = [&](const MoveEvent& e) {
        const double v = value(expanded(e));
        increasing &= v > last;
        gains_match &= std::abs((v - last) - e.gain) <= 1e-8 * std::max(1.0, std::abs(v));
        last = v;
      };
      const auto a = aon_hmll(h, w, options);
      CHECK(increasing);
      CHECK(gains_match);
      options.on_move = nullptr;
      const auto b = aon_hmll(h, w, options);
      CHECK(a.labels == b.labels);
      CHECK(aon_hmll(h, w, options, a.labels).labels == a.labels);
    }
  }
}

TEST_CASE("dyadic reduction on a small graph") {
  std::mt19937_64 rng(43);
  for (int t = 0; t < 20; ++t) {
    const auto h = oracle::random_hypergraph(rng, 25, 60, 2, 2, 3);
    const auto g = clique_projection(h, false);
    const double gamma = 1.0 / 256.0;
    std::vector<oracle::Move> expected;
    const auto reference = oracle::reference_dyadic_louvain(g, gamma, &expected);
    AonParams params;
    params.beta = {0, 0, 1.0};
    params.gamma = {0, 0, gamma};
    std::vector<std::tuple<int, int, int>> moves;
    LouvainOptions options;
    options.on_move = [&](const MoveEvent& e) { moves.emplace_back(e.mover, e.from, e.to); };
    const auto result = aon_hmll(h, AonWeights::from_params(params, 1.0), options);
    REQUIRE(moves.size() == expected.size());
    for (std::size_t i = 0; i < moves.size(); ++i)
      CHECK(moves[i] == std::make_tuple(expected[i].mover, expected[i].from, expected[i].to));
    CHECK(result.labels == reference);
  }
}
