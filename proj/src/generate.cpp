#include "bnactive/generate.hpp"

#include <cmath>
#include <numbers>

namespace bnactive {

namespace {

double normal_draw(Rng& rng) {
  double u1 = 1.0 - rng.uniform();  // (0, 1]
  double u2 = rng.uniform();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

// Marsaglia-Tsang, with the power boost for alpha < 1.
double gamma_draw(double alpha, Rng& rng) {
  if (alpha < 1.0) {
    double u = 1.0 - rng.uniform();
    return gamma_draw(alpha + 1.0, rng) * std::pow(u, 1.0 / alpha);
  }
  const double d = alpha - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  while (true) {
    double x = normal_draw(rng);
    double v = 1.0 + c * x;
    if (v <= 0.0) continue;
    v = v * v * v;
    double u = rng.uniform();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v)))
      return d * v;
  }
}

}  // namespace

Dag random_dag(int variable_count, double edge_density, int max_parents,
               Rng& rng) {
  std::vector<int> perm(variable_count);
  for (int i = 0; i < variable_count; ++i) perm[i] = i;
  for (int i = variable_count - 1; i > 0; --i)
    std::swap(perm[i], perm[rng.uniform_int(i + 1)]);

  Dag dag(variable_count);
  for (int i = 0; i < variable_count; ++i) {
    for (int j = i + 1; j < variable_count; ++j) {
      if (rng.uniform() < edge_density &&
          static_cast<int>(dag.parents(perm[j]).size()) < max_parents)
        dag.add_edge(perm[i], perm[j]);
    }
  }
  return dag;
}

std::vector<Cpt> random_cpts(const std::vector<Variable>& vars, const Dag& dag,
                             double cpt_alpha, Rng& rng) {
  std::vector<Cpt> cpts;
  cpts.reserve(vars.size());
  for (int v = 0; v < static_cast<int>(vars.size()); ++v) {
    const int arity = vars[v].arity();
    Cpt cpt(v, arity, config_count_for(dag, vars, v));
    for (int c = 0; c < cpt.config_count(); ++c) {
      // Dirichlet via normalized Gamma(alpha) draws (Marsaglia-Tsang
      // needs alpha >= 1; boost for alpha < 1 with the standard power trick)
      double total = 0.0;
      std::vector<double> g(arity);
      for (int s = 0; s < arity; ++s) {
        g[s] = std::max(gamma_draw(cpt_alpha, rng), 1e-12);
        total += g[s];
      }
      for (int s = 0; s < arity; ++s) cpt.at(c, s) = g[s] / total;
    }
    cpts.push_back(std::move(cpt));
  }
  return cpts;
}

std::vector<Variable> random_schema(int variable_count, int max_arity,
                                    Rng& rng) {
  if (max_arity < 2) throw error("max arity must be >= 2");
  std::vector<Variable> vars(variable_count);
  for (int v = 0; v < variable_count; ++v) {
    vars[v].name = "X" + std::to_string(v);
    const int arity = 2 + rng.uniform_int(max_arity - 1);
    for (int s = 0; s < arity; ++s)
      vars[v].states.push_back("s" + std::to_string(s));
  }
  return vars;
}

BayesNet random_network(int variable_count, int max_arity, double edge_density,
                        int max_parents, double cpt_alpha, Rng& rng) {
  auto vars = random_schema(variable_count, max_arity, rng);
  Dag dag = random_dag(variable_count, edge_density, max_parents, rng);
  auto cpts = random_cpts(vars, dag, cpt_alpha, rng);
  return BayesNet(std::move(vars), std::move(dag), std::move(cpts));
}

}  // namespace bnactive
