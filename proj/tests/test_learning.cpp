#include <doctest.h>

#include <cmath>

#include "bnactive/inference.hpp"
#include "bnactive/search.hpp"
#include "test_support.hpp"

using namespace bnactive;
using namespace bnactive::testing;

namespace {

Dataset observational(const BayesNet& net, int n, std::uint64_t seed) {
  Dataset ds(net.variables());
  Rng rng(seed);
  ForwardSampler sampler(net, {});
  for (int i = 0; i < n; ++i) ds.append(record_from(sampler.draw(rng), {}));
  return ds;
}

double exhaustive_best_score(const Dataset& ds, const ScoreConfig& cfg) {
  double best = -std::numeric_limits<double>::infinity();
  for (const Dag& dag : all_dags(ds.variable_count()))
    best = std::max(best, structure_log_score(ds, dag, cfg));
  return best;
}

}  // namespace

TEST_SUITE("learning") {

TEST_CASE("families with only intervened records score zero") {
  std::vector<Variable> schema{{"A", {"s0", "s1"}}};
  Dataset ds(schema);
  for (int i = 0; i < 5; ++i) ds.append(Record{{1}, {true}});
  CHECK(family_log_score(ds, 0, {}, {}) == 0.0);
}

TEST_CASE("closed-form marginal likelihood of three observations") {
  std::vector<Variable> schema{{"A", {"s0", "s1"}}};
  Dataset ds(schema);
  for (int v : {0, 0, 1}) ds.append(Record{{v}, {false}});
  CHECK(family_log_score(ds, 0, {}, {}) ==
        doctest::Approx(std::log(1.0 / 16.0)).epsilon(1e-12));
}

TEST_CASE("an uninformative parent never improves the score") {
  // 200 records, child balanced identically in both parent halves
  std::vector<Variable> schema{{"A", {"s0", "s1"}}, {"B", {"s0", "s1"}}};
  Dataset ds(schema);
  for (int i = 0; i < 200; ++i) ds.append(Record{{i % 2, (i / 2) % 2}, {false, false}});
  std::vector<int> parent{0};
  CHECK(family_log_score(ds, 1, parent, {}) < family_log_score(ds, 1, {}, {}));
}

TEST_CASE("fit_parameters returns the prior mean without data") {
  std::vector<Variable> schema{{"A", {"s0", "s1"}}};
  Dataset ds(schema);
  auto net = fit_parameters(Dag(1), ds, {});
  CHECK(net.cpt(0)(0, 0) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("fit_parameters matches the posterior-mean formula") {
  std::vector<Variable> schema{{"A", {"s0", "s1"}}};
  Dataset ds(schema);
  for (int i = 0; i < 3; ++i) ds.append(Record{{1}, {false}});
  auto net = fit_parameters(Dag(1), ds, {});
  CHECK(net.cpt(0)(0, 0) == doctest::Approx(0.125).epsilon(1e-15));
  CHECK(net.cpt(0)(0, 1) == doctest::Approx(0.875).epsilon(1e-15));
}

TEST_CASE("records intervened on the child contribute nothing to its fit") {
  std::vector<Variable> schema{{"A", {"s0", "s1"}}};
  Dataset ds(schema);
  for (int i = 0; i < 100; ++i) ds.append(Record{{1}, {true}});
  auto net = fit_parameters(Dag(1), ds, {});
  CHECK(net.cpt(0)(0, 0) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("fitted rows are strictly positive and normalized") {
  Rng net_rng(17);
  auto truth = random_network(4, 3, 0.5, 3, 0.5, net_rng);
  auto ds = observational(truth, 80, 18);
  Rng rng(19);
  auto net = local_search(ds, {}, {}, rng);
  for (int v = 0; v < net.size(); ++v) {
    for (int c = 0; c < net.cpt(v).config_count(); ++c) {
      double sum = 0.0;
      for (int s = 0; s < net.arity(v); ++s) {
        CHECK(net.cpt(v)(c, s) > 0.0);
        sum += net.cpt(v)(c, s);
      }
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("independent variables learn the empty graph") {
  auto truth = make_net({2, 2}, {}, {{{0.5, 0.5}}, {{0.5, 0.5}}});
  auto ds = observational(truth, 50, 23);

  ScoreConfig cfg;
  // empty graph must beat both single-edge structures on this data
  double empty_score = structure_log_score(ds, Dag(2), cfg);
  for (const Dag& dag : all_dags(2))
    if (dag.edge_count() > 0)
      CHECK(empty_score > structure_log_score(ds, dag, cfg));

  Rng rng(24);
  CHECK(local_search(ds, cfg, {}, rng).dag().edge_count() == 0);
}

TEST_CASE("a strongly coupled pair learns one edge") {
  auto truth = chain2(0.5, 0.95, 0.05);  // P(X1 = X0) = 0.95
  auto ds = observational(truth, 500, 29);
  Rng rng(30);
  auto learned = local_search(ds, {}, {}, rng);
  CHECK(learned.dag().edge_count() == 1);

  // both orientations score equally (likelihood equivalence)
  Dag forward(2), backward(2);
  forward.add_edge(0, 1);
  backward.add_edge(1, 0);
  CHECK(structure_log_score(ds, forward, {}) ==
        doctest::Approx(structure_log_score(ds, backward, {})).epsilon(1e-9));
  CHECK(structure_log_score(ds, learned.dag(), {}) ==
        doctest::Approx(exhaustive_best_score(ds, {})).epsilon(1e-9));
}

TEST_CASE("all-intervened data yields the empty graph") {
  std::vector<Variable> schema{{"A", {"s0", "s1"}}, {"B", {"s0", "s1"}}};
  Dataset ds(schema);
  for (int i = 0; i < 30; ++i) ds.append(Record{{i % 2, 1 - i % 2}, {true, true}});
  Rng rng(31);
  CHECK(local_search(ds, {}, {}, rng).dag().edge_count() == 0);
}

TEST_CASE("total score decomposes over families") {
  Rng net_rng(37);
  auto truth = random_network(4, 2, 0.5, 3, 1.0, net_rng);
  auto ds = observational(truth, 120, 38);
  Rng rng(39);
  auto learned = local_search(ds, {}, {}, rng);

  double total = structure_log_score(ds, learned.dag(), {});
  double sum = 0.0;
  for (int v = 0; v < learned.size(); ++v)
    sum += family_log_score(ds, v, learned.dag().parents(v), {});
  CHECK(total == doctest::Approx(sum).epsilon(1e-9));
}

TEST_CASE("duplicating a do_child record never changes the child's scores") {
  Rng net_rng(41);
  auto truth = random_network(3, 2, 0.5, 2, 1.0, net_rng);
  Dataset ds(truth.variables());
  Rng rng(42);
  ForwardSampler plain(truth, {});
  for (int i = 0; i < 40; ++i) ds.append(record_from(plain.draw(rng), {}));
  Intervention q{{1, 1}};
  ForwardSampler clamped(truth, q);
  Record flagged = record_from(clamped.draw(rng), q);
  ds.append(flagged);

  Dataset doubled = ds;
  doubled.append(flagged);

  for (const Dag& dag : all_dags(3)) {
    CHECK(family_log_score(ds, 1, dag.parents(1), {}) ==
          doctest::Approx(family_log_score(doubled, 1, dag.parents(1), {}))
              .epsilon(1e-12));
  }
}

TEST_CASE("three-node search recovers the exhaustive optimum") {
  const auto dags = all_dags(3);
  REQUIRE(dags.size() == 25);

  int hits = 0;
  const int trials = 50;
  for (int t = 0; t < trials; ++t) {
    Rng net_rng(1000 + t);
    Dag true_dag = dags[t % dags.size()];
    std::vector<Variable> vars;
    for (int v = 0; v < 3; ++v)
      vars.push_back({"X" + std::to_string(v), {"s0", "s1"}});
    auto cpts = random_cpts(vars, true_dag, 0.4, net_rng);
    BayesNet truth(vars, true_dag, std::move(cpts));

    auto ds = observational(truth, 300, 2000 + t);
    Rng rng(3000 + t);
    auto learned = local_search(ds, {}, {}, rng);
    double got = structure_log_score(ds, learned.dag(), {});
    if (std::abs(got - exhaustive_best_score(ds, {})) < 1e-9) ++hits;
  }
  CHECK(hits >= 45);  // >= 90%
}

TEST_CASE("search is deterministic given the seed") {
  Rng net_rng(51);
  auto truth = random_network(5, 3, 0.4, 3, 0.7, net_rng);
  auto ds = observational(truth, 100, 52);
  Rng a(53), b(53);
  auto first = local_search(ds, {}, {}, a);
  auto second = local_search(ds, {}, {}, b);
  CHECK(first.dag() == second.dag());
  for (int v = 0; v < first.size(); ++v) CHECK(first.cpt(v) == second.cpt(v));
}

}  // TEST_SUITE
