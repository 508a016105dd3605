#ifndef BNACTIVE_TEST_SUPPORT_HPP
#define BNACTIVE_TEST_SUPPORT_HPP

#include <cmath>
#include <functional>
#include <vector>

#include "bnactive/bayes_net.hpp"
#include "bnactive/committee.hpp"
#include "bnactive/generate.hpp"

namespace bnactive::testing {

// Builder: arities per variable, edges as (parent, child), rows per
// variable in parent-config order.
inline BayesNet make_net(const std::vector<int>& arities,
                         const std::vector<std::pair<int, int>>& edges,
                         const std::vector<std::vector<std::vector<double>>>& rows) {
  std::vector<Variable> vars(arities.size());
  for (std::size_t v = 0; v < arities.size(); ++v) {
    vars[v].name = "X" + std::to_string(v);
    for (int s = 0; s < arities[v]; ++s)
      vars[v].states.push_back("s" + std::to_string(s));
  }
  Dag dag(static_cast<int>(arities.size()));
  for (const auto& [p, c] : edges) dag.add_edge(p, c);
  std::vector<Cpt> cpts;
  for (std::size_t v = 0; v < arities.size(); ++v) {
    Cpt cpt(static_cast<int>(v), arities[v],
            static_cast<int>(rows[v].size()));
    for (std::size_t c = 0; c < rows[v].size(); ++c)
      cpt.set_row(static_cast<int>(c), rows[v][c]);
    cpts.push_back(std::move(cpt));
  }
  return BayesNet(std::move(vars), std::move(dag), std::move(cpts));
}

// Single variable with the given distribution.
inline BayesNet root_net(const std::vector<double>& p) {
  return make_net({static_cast<int>(p.size())}, {}, {{p}});
}

// X0 -> X1, both binary: P(X0=0) = p0, P(X1=0 | X0) = rows.
inline BayesNet chain2(double p0, double p1_given0, double p1_given1) {
  return make_net({2, 2}, {{0, 1}},
                  {{{p0, 1 - p0}},
                   {{p1_given0, 1 - p1_given0}, {p1_given1, 1 - p1_given1}}});
}

// Iterate every full configuration of the given arities (last fastest).
inline void for_all_configs(const std::vector<int>& arities,
                            const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> x(arities.size(), 0);
  while (true) {
    f(x);
    int i = static_cast<int>(x.size()) - 1;
    for (; i >= 0; --i) {
      if (++x[i] < arities[i]) break;
      x[i] = 0;
    }
    if (i < 0) break;
  }
}

inline std::vector<int> net_arities(const BayesNet& net) {
  std::vector<int> arities(net.size());
  for (int v = 0; v < net.size(); ++v) arities[v] = net.arity(v);
  return arities;
}

// Brute-force joint table of the mutilated network, built directly from
// the CPT data: the oracle the inference code is checked against. Row
// indices are recomputed locally rather than through the library.
inline double oracle_joint_prob(const BayesNet& net, const std::vector<int>& x,
                                const Intervention& q) {
  double p = 1.0;
  for (int v = 0; v < net.size(); ++v) {
    if (auto forced = q.forced_state(v)) {
      if (x[v] != *forced) return 0.0;
      continue;
    }
    int config = 0;
    for (int parent : net.dag().parents(v))
      config = config * net.arity(parent) + x[parent];
    p *= net.cpt(v)(config, x[v]);
  }
  return p;
}

// All DAGs over n variables (3 relations per unordered pair, acyclic only).
inline std::vector<Dag> all_dags(int n) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);

  std::vector<Dag> dags;
  std::vector<int> relation(pairs.size(), 0);
  while (true) {
    Dag dag(n);
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      if (relation[k] == 1) dag.add_edge(pairs[k].first, pairs[k].second);
      if (relation[k] == 2) dag.add_edge(pairs[k].second, pairs[k].first);
    }
    if (dag.is_acyclic()) dags.push_back(std::move(dag));

    int i = static_cast<int>(relation.size()) - 1;
    for (; i >= 0; --i) {
      if (++relation[i] < 3) break;
      relation[i] = 0;
    }
    if (i < 0) break;
  }
  return dags;
}

// Sub-network over a block of variables; every parent must lie inside the
// block (callers use this only on block-factorized networks).
inline BayesNet restrict_to_block(const BayesNet& net,
                                  const std::vector<int>& block) {
  std::vector<int> position(net.size(), -1);
  for (std::size_t i = 0; i < block.size(); ++i) position[block[i]] = static_cast<int>(i);

  std::vector<Variable> vars;
  Dag dag(static_cast<int>(block.size()));
  std::vector<Cpt> cpts;
  for (std::size_t i = 0; i < block.size(); ++i) {
    const int v = block[i];
    vars.push_back(net.variable(v));
    for (int p : net.dag().parents(v)) {
      if (position[p] < 0)
        throw error("block is not closed under parents");
      dag.add_edge(position[p], static_cast<int>(i));
    }
    Cpt cpt = net.cpt(v);
    Cpt renumbered(static_cast<int>(i), cpt.arity(), cpt.config_count());
    for (int c = 0; c < cpt.config_count(); ++c)
      renumbered.set_row(c, cpt.row(c));
    cpts.push_back(std::move(renumbered));
  }
  return BayesNet(std::move(vars), std::move(dag), std::move(cpts));
}

// Partition of the variables into independent sub-domains; only used by
// the additivity suites.
struct FactoredDomain {
  std::vector<std::vector<int>> blocks;

  FactoredDomain(int variable_count, std::vector<std::vector<int>> parts)
      : blocks(std::move(parts)) {
    std::vector<char> seen(variable_count, 0);
    for (const auto& block : blocks) {
      for (int v : block) {
        if (v < 0 || v >= variable_count || seen[v])
          throw error("blocks must be disjoint and in range");
        seen[v] = 1;
      }
    }
    for (char c : seen)
      if (!c) throw error("blocks must cover every variable");
  }

  // Committee of member restrictions to one block.
  Committee restrict(const Committee& c, std::size_t block) const {
    std::vector<BayesNet> nets;
    for (int m = 0; m < c.size(); ++m)
      nets.push_back(restrict_to_block(c.member(m), blocks[block]));
    return Committee(std::move(nets), c.weights());
  }
};

// The 37-variable, 46-edge alarm-network structure with fresh random
// rows; a compatible stand-in for the benchmark file (the original
// parameterization is an input, never shipped).
BayesNet alarm_compatible_network(std::uint64_t seed);

}  // namespace bnactive::testing

#endif
