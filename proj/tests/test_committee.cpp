#include <doctest.h>

#include "bnactive/divergence.hpp"
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

bool nets_equal(const BayesNet& a, const BayesNet& b) {
  if (!(a.dag() == b.dag())) return false;
  for (int v = 0; v < a.size(); ++v)
    if (!(a.cpt(v) == b.cpt(v))) return false;
  return true;
}

}  // namespace

TEST_SUITE("committee") {

TEST_CASE("a committee of one has weight one") {
  Rng net_rng(61);
  auto truth = random_network(3, 2, 0.5, 2, 1.0, net_rng);
  auto ds = observational(truth, 40, 62);
  auto c = build_committee(ds, 1, {}, {}, 63);
  CHECK(c.size() == 1);
  CHECK(c.weight(0) == 1.0);
}

TEST_CASE("weights must be a distribution over members") {
  auto net = root_net({0.5, 0.5});
  CHECK_THROWS_AS(Committee({net, net}, {0.7, 0.7}), error);
  CHECK_THROWS_AS(Committee({net, net}, {0.5}), shape_error);
  CHECK_THROWS_AS(Committee({}, {}), error);
}

TEST_CASE("identical seeds rebuild identical committees") {
  Rng net_rng(64);
  auto truth = random_network(4, 3, 0.4, 3, 0.7, net_rng);
  auto ds = observational(truth, 60, 65);
  auto a = build_committee(ds, 2, {}, {}, 66);
  auto b = build_committee(ds, 2, {}, {}, 66);
  for (int i = 0; i < 2; ++i) CHECK(nets_equal(a.member(i), b.member(i)));
}

TEST_CASE("members own their streams: growing K keeps earlier members") {
  Rng net_rng(67);
  auto truth = random_network(4, 3, 0.4, 3, 0.7, net_rng);
  auto ds = observational(truth, 60, 68);
  auto small = build_committee(ds, 2, {}, {}, 69);
  auto large = build_committee(ds, 3, {}, {}, 69);
  CHECK(nets_equal(small.member(0), large.member(0)));
  CHECK(nets_equal(small.member(1), large.member(1)));
}

TEST_CASE("an empty dataset is rejected") {
  Dataset ds(std::vector<Variable>{{"A", {"s0", "s1"}}});
  CHECK_THROWS_AS(build_committee(ds, 2, {}, {}, 1), empty_data_error);
}

TEST_CASE("abundant data from an identifiable net dissolves disagreement") {
  // strongly coupled 3-node chain
  auto truth = make_net({2, 2, 2}, {{0, 1}, {1, 2}},
                        {{{0.7, 0.3}},
                         {{0.9, 0.1}, {0.1, 0.9}},
                         {{0.85, 0.15}, {0.15, 0.85}}});
  auto ds = observational(truth, 5000, 71);
  auto c = build_committee(ds, 2, {}, {}, 72);

  double s0 = structure_log_score(ds, c.member(0).dag(), {});
  double s1 = structure_log_score(ds, c.member(1).dag(), {});
  CHECK(s0 == doctest::Approx(s1).epsilon(1e-6));

  CHECK(js(c, {}, Method::family_exact()).value < 0.01);
  CHECK(bjs(c, {}, Method::family_exact()).value < 0.01);
  CHECK(kl2(c, {}, Method::family_exact()).value < 0.01);
}

}  // TEST_SUITE
