#include <doctest.h>

#include <cmath>
#include <random>

#include "dchsbm/clustering.hpp"
#include "dchsbm/cuts.hpp"
#include "dchsbm/estimation.hpp"
#include "oracles.hpp"

using namespace dchsbm;

namespace {

const Family kFamilies[] = {Family::Aon, Family::GroupNumber, Family::RelativePlurality, Family::Pairwise};

Hypergraph worked_example() {
  std::vector<EdgeInput> edges{{{1, 2}, 1}, {{3, 4}, 1}, {{1, 3}, 1}};
  return build_hypergraph(edges);
}

AffinityModel random_aon(std::mt19937_64& rng, int kmax) {
  std::uniform_real_distribution<double> u(-8.0, 0.0);
  AffinityModel m(Family::Aon);
  m.set_log(1, 1, u(rng));
  for (int k = 2; k <= kmax; ++k) {
    m.set_log(k, 0, u(rng));
    m.set_log(k, 1, u(rng));
  }
  return m;
}

}  // namespace

TEST_CASE("theta estimate is the degree vector") {
  std::vector<EdgeInput> edges{{{1, 2}, 1}, {{1, 2}, 1}, {{1, 2, 3}, 1}};
  BuildOptions options;
  options.min_nodes = 4;
  const auto h = build_hypergraph(edges, options);
  CHECK(estimate_theta(h) == std::vector<double>{3, 3, 1, 0});
}

TEST_CASE("theta estimate sums to cluster volumes") {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 20; ++t) {
    const auto h = oracle::random_hypergraph(rng, 10, 20, 2, 4);
    const auto z = oracle::random_labels(rng, 10, 3);
    const auto theta = estimate_theta(h);
    const Clustering c(h, z);
    const auto compact = compact_labels(z);
    std::vector<double> sums(c.cluster_count(), 0.0);
    for (int i = 0; i < 10; ++i) sums[compact[i]] += theta[i];
    for (int l = 0; l < c.cluster_count(); ++l) CHECK(sums[l] == c.volumes()[l]);
  }
}

TEST_CASE("worked omega example") {
  const auto h = worked_example();
  const std::vector<int> z{1, 1, 2, 2};
  const auto m = estimate_omega(h, z, Family::Aon);
  CHECK(m.value(2, 1) == doctest::Approx(1.0 / 9.0).epsilon(1e-14));
  CHECK(m.value(2, 0) == doctest::Approx(1.0 / 18.0).epsilon(1e-14));
  CHECK(m.status(2, 1) == StratumStatus::Fitted);
  CHECK(m.status(2, 0) == StratumStatus::Fitted);

  // grid search over both rates lands on the closed form
  double best_q = -1e300, best1 = 0, best0 = 0;
  for (int a = 1; a <= 400; ++a)
    for (int b = 1; b <= 400; ++b) {
      AffinityModel trial(Family::Aon);
      trial.set(2, 1, a / 1800.0);
      trial.set(2, 0, b / 1800.0);
      const double q = objective_q_symmetric(h, z, trial);
      if (q > best_q) {
        best_q = q;
        best1 = a / 1800.0;
        best0 = b / 1800.0;
      }
    }
  CHECK(best1 == doctest::Approx(1.0 / 9.0));
  CHECK(best0 == doctest::Approx(1.0 / 18.0));
}

TEST_CASE("empty strata are smoothed or imputed") {
  std::vector<EdgeInput> edges{{{1, 2}, 1}, {{3, 4}, 1}, {{1, 2, 5}, 1}, {{3, 4, 6}, 1}};
  const auto h = build_hypergraph(edges);
  const std::vector<int> z{0, 0, 1, 1, 0, 1};
  const auto aon = estimate_omega(h, z, Family::Aon);
  CHECK(aon.status(2, 0) == StratumStatus::Smoothed);
  // mass of mixed pairs: vol = (5, 5) -> 2 * 5 * 5 = 50
  CHECK(aon.value(2, 0) == doctest::Approx(1.0 / 100.0).epsilon(1e-14));
  CHECK(aon.status(3, 0) == StratumStatus::Smoothed);
  CHECK(std::isfinite(objective_q_symmetric(h, z, aon)));

  const auto gn = estimate_omega(h, z, Family::GroupNumber);
  CHECK(gn.status(3, 3) == StratumStatus::Imputed);
  CHECK(gn.log_value(3, 3) == std::min(gn.log_value(3, 1), gn.log_value(3, 2)));
  CHECK(gn.status(3, 1) == StratumStatus::Fitted);
}

TEST_CASE("symmetric objective matches the direct sum") {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 60; ++t) {
    const auto h = oracle::random_hypergraph(rng, 8, 14, 1, 4, 2);
    const auto z = oracle::random_labels(rng, 8, 3);
    for (Family f : kFamilies) {
      AffinityModel m(f);
      std::uniform_real_distribution<double> u(0.01, 2.0);
      for (int k = 1; k <= 4; ++k)
        for (int index : stratum_indices(f, k)) m.set(k, index, u(rng));
      const double expected = oracle::brute_q_symmetric(h, z, [&](const PartitionVector& p) { return m.evaluate(p); });
      CHECK(objective_q_symmetric(h, z, m) == doctest::Approx(expected).epsilon(1e-12));
    }
  }
}

TEST_CASE("symmetric objective errors") {
  const auto h = worked_example();
  const std::vector<int> z{1, 1, 2, 2};
  AffinityModel zero(Family::Aon);
  zero.set(2, 1, 1.0);
  zero.set(2, 0, 0.0);
  CHECK_THROWS_AS(objective_q_symmetric(h, z, zero), std::domain_error);
  AffinityModel partial(Family::Aon);
  partial.set(2, 1, 1.0);
  CHECK_THROWS_AS(objective_q_symmetric(h, z, partial), MissingParameter);
  CHECK_THROWS_AS(objective_q_symmetric(h, std::vector<int>{0}, partial), std::invalid_argument);
}

TEST_CASE("constant AON affinity makes the objective label independent") {
  std::mt19937_64 rng(13);
  const auto h = oracle::random_hypergraph(rng, 10, 25, 2, 4);
  const double w = 0.003;
  AffinityModel m(Family::Aon);
  for (int k = 2; k <= 4; ++k) {
    m.set(k, 0, w);
    m.set(k, 1, w);
  }
  double expected = 0.0;
  for (int k : h.realized_sizes()) expected += h.size_count(k) * std::log(w) - w * std::pow(h.volume(), k);
  for (int t = 0; t < 20; ++t) {
    const auto z = oracle::random_labels(rng, 10, 4);
    CHECK(objective_q_symmetric(h, z, m) == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("AON objective matches its definition") {
  std::mt19937_64 rng(14);
  for (int t = 0; t < 60; ++t) {
    const auto h = oracle::random_hypergraph(rng, 9, 16, 1, 4, 2);
    const auto z = oracle::random_labels(rng, 9, 4);
    std::uniform_real_distribution<double> u(0.1, 2.0), g(1e-4, 1e-2);
    AonParams params;
    params.beta = {0, 0, u(rng), u(rng), u(rng)};
    params.gamma = {0, 0, g(rng), g(rng), g(rng)};
    const double expected = oracle::brute_q_aon(h, z, params.beta, params.gamma);
    CHECK(objective_q_aon(h, z, params) == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("AON objective of one cluster") {
  std::mt19937_64 rng(15);
  const auto h = oracle::random_hypergraph(rng, 9, 16, 2, 4);
  AonParams params;
  params.beta = {0, 0, 1.0, 0.5, 2.0};
  params.gamma = {0, 0, 0.01, 0.001, 1e-5};
  double expected = 0.0;
  for (int k = 2; k <= 4; ++k) expected -= params.beta[k] * params.gamma[k] * std::pow(h.volume(), k);
  CHECK(objective_q_aon(h, std::vector<int>(9, 3), params) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("symmetric and AON objectives differ by a constant") {
  std::mt19937_64 rng(16);
  for (int t = 0; t < 40; ++t) {
    const auto h = oracle::random_hypergraph(rng, 10, 20, 1, 4, 3);
    const auto m = random_aon(rng, 4);
    const auto weights = AonWeights::from_model(m, h.volume());
    const double j = aon_constant(h, m);
    for (int s = 0; s < 5; ++s) {
      const auto z = oracle::random_labels(rng, 10, 1 + s);
      const double diff = objective_q_symmetric(h, z, m) - objective_q_aon(h, z, weights);
      CHECK(diff == doctest::Approx(j).epsilon(1e-8));
    }
  }
}

TEST_CASE("fitted omega is a stationary point") {
  std::mt19937_64 rng(18);
  for (int t = 0; t < 30; ++t) {
    const auto h = oracle::random_hypergraph(rng, 12, 40, 2, 4, 2);
    const auto z = oracle::random_labels(rng, 12, 3);
    for (Family f : kFamilies) {
      const auto m = estimate_omega(h, z, f);
      const double q = objective_q_symmetric(h, z, m);
      for (const auto& [s, e] : m.entries()) {
        if (e.status != StratumStatus::Fitted) continue;
        for (double factor : {1.01, 0.99}) {
          AffinityModel moved = m;
          moved.set_log(s.size, s.index, e.log_value + std::log(factor), e.status);
          CHECK(objective_q_symmetric(h, z, moved) < q + 1e-9 * std::abs(q));
        }
      }
    }
  }
}

TEST_CASE("strict modularity model") {
  std::mt19937_64 rng(20);
  const auto h = oracle::random_hypergraph(rng, 10, 30, 2, 4);
  const auto m = strict_modularity_model(h);
  const auto p = aon_params(m);
  for (int k : h.realized_sizes()) {
    CHECK(p.beta[k] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(p.gamma[k] == doctest::Approx(h.size_count(k) / std::pow(h.volume(), k)).epsilon(1e-10));
  }
}

TEST_CASE("likelihood constants") {
  std::vector<EdgeInput> edges{{{1, 2, 3}, 2}, {{4, 4}, 1}};
  const auto h = build_hypergraph(edges);
  const auto c = likelihood_constants(h);
  CHECK(c.degree_term == doctest::Approx(3 * 2 * std::log(2.0) + 2 * std::log(2.0)));
  CHECK(c.combinatorial_term == doctest::Approx(2 * std::log(6.0) - std::log(2.0)));
}

TEST_CASE("regularized objective penalizes clusters") {
  CHECK(regularized(-10.0, 5, 1) == -10.0);
  CHECK(regularized(-10.0, 5, 2) == doctest::Approx(-10.0 - 5 * std::log(2.0)));
  for (int l = 1; l < 20; ++l) CHECK(regularized(0.0, 7, l) > regularized(0.0, 7, l + 1));
}

TEST_CASE("BIC uses the parameter count and total edge weight") {
  const auto h = worked_example();
  const std::vector<int> z{1, 1, 2, 2};
  const auto aon = bic(h, z, Family::Aon);
  CHECK(aon.parameters == 4);
  CHECK(aon.log_likelihood == doctest::Approx(objective_q_symmetric(h, z, aon.omega)));
  CHECK(aon.bic == doctest::Approx(4 * std::log(3.0) - 2 * aon.log_likelihood));
  // GN with two clusters on a graph fits the same rates with fewer parameters
  const auto gn = bic(h, z, Family::GroupNumber);
  CHECK(gn.parameters == 2);
  CHECK(gn.log_likelihood == doctest::Approx(aon.log_likelihood));
  CHECK(gn.bic < aon.bic);
}

TEST_CASE("dyadic modularity") {
  std::vector<EdgeInput> edges{{{1, 2}, 1}, {{3, 4}, 1}};
  const auto g = build_hypergraph(edges);
  CHECK(dyadic_modularity(g, std::vector<int>{0, 0, 1, 1}) == doctest::Approx(0.5));
  CHECK(dyadic_modularity(g, std::vector<int>{0, 0, 0, 0}) == doctest::Approx(0.0));
  std::vector<EdgeInput> tri{{{1, 2, 3}, 1}};
  CHECK_THROWS_AS(dyadic_modularity(build_hypergraph(tri), std::vector<int>{0, 0, 0}), std::invalid_argument);
}

TEST_CASE("coordinate ascent") {
  std::mt19937_64 rng(22);
  const auto h = oracle::random_hypergraph(rng, 30, 80, 2, 4);

  SUBCASE("fixed omega single round") {
    FitOptions options;
    options.initial = strict_modularity_model(h);
    options.refit = false;
    const auto report = coordinate_ascent(h, options);
    CHECK(report.iterations == 1);
    CHECK(report.trace.size() == 1);
    CHECK(serialize(report.omega) == serialize(*options.initial));
    CHECK(report.q_value == doctest::Approx(objective_q_symmetric(h, report.labels, report.omega)));
  }

  SUBCASE("deterministic and best of rounds") {
    FitOptions options;
    options.rounds = 5;
    options.regularize = true;
    options.shuffle = true;
    options.seed = 99;
    const auto a = coordinate_ascent(h, options);
    const auto b = coordinate_ascent(h, options);
    CHECK(a.labels == b.labels);
    CHECK(a.q_value == b.q_value);
    CHECK(serialize(a.omega) == serialize(b.omega));
    double best = -1e300;
    for (const auto& r : a.trace) best = std::max(best, r.objective);
    CHECK(a.regularized_value == best);
    CHECK(a.regularized_value == doctest::Approx(regularized(a.q_value, 30, a.clusters)));
    CHECK(a.trace[a.best_round].objective == best);
  }

  SUBCASE("first round fitted on a given partition") {
    const auto start = oracle::random_labels(rng, 30, 3);
    FitOptions options;
    options.rounds = 3;
    options.initial_labels = start;
    FitOptions explicit_model = options;
    explicit_model.initial_labels.clear();
    explicit_model.initial = estimate_omega(h, start, Family::Aon);
    const auto a = coordinate_ascent(h, options);
    const auto b = coordinate_ascent(h, explicit_model);
    CHECK(a.labels == b.labels);
    CHECK(a.q_value == b.q_value);
    options.initial_labels.pop_back();
    CHECK_THROWS_AS(coordinate_ascent(h, options), std::invalid_argument);
  }

  SUBCASE("symmetric optimizer with other families") {
    FitOptions options;
    options.family = Family::GroupNumber;
    options.optimizer = Optimizer::SymmetricHmll;
    options.rounds = 2;
    const auto report = coordinate_ascent(h, options);
    CHECK(report.labels.size() == 30);
    CHECK(report.omega.family() == Family::GroupNumber);
  }

  SUBCASE("mismatches are rejected") {
    FitOptions options;
    options.family = Family::GroupNumber;
    CHECK_THROWS_AS(coordinate_ascent(h, options), std::invalid_argument);
    options.family = Family::Aon;
    options.optimizer = Optimizer::Gmll;
    CHECK_THROWS_AS(coordinate_ascent(h, options), std::invalid_argument);
    options.optimizer = Optimizer::AonHmll;
    options.selection = Selection::DyadicModularity;
    CHECK_THROWS_AS(coordinate_ascent(h, options), std::invalid_argument);
    options.selection = Selection::Likelihood;
    options.rounds = 0;
    CHECK_THROWS_AS(coordinate_ascent(h, options), std::invalid_argument);
  }
}
