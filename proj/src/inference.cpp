#include "bnactive/inference.hpp"

#include <cmath>
#include <limits>

namespace bnactive {

void check_intervention(const BayesNet& net, const Intervention& q) {
  for (const auto& [var, state] : q.assignments()) {
    if (var < 0 || var >= net.size())
      throw invalid_intervention_error("unknown variable index " +
                                       std::to_string(var));
    if (state < 0 || state >= net.arity(var))
      throw invalid_intervention_error(
          "state " + std::to_string(state) + " out of range for variable " +
          net.variable(var).name);
  }
}

BayesNet mutilate(const BayesNet& net, const Intervention& q) {
  check_intervention(net, q);
  Dag dag = net.dag();
  std::vector<Cpt> cpts;
  cpts.reserve(net.size());
  for (int v = 0; v < net.size(); ++v) {
    if (auto forced = q.forced_state(v)) {
      for (int p : std::vector<int>(dag.parents(v))) dag.remove_edge(p, v);
      Cpt degenerate(v, net.arity(v), 1);
      degenerate.at(0, *forced) = 1.0;
      cpts.push_back(std::move(degenerate));
    } else {
      cpts.push_back(net.cpt(v));
    }
  }
  return BayesNet(net.variables(), std::move(dag), std::move(cpts));
}

double joint_log_prob(const BayesNet& net, std::span<const int> x,
                      const Intervention& q) {
  check_intervention(net, q);
  if (static_cast<int>(x.size()) != net.size())
    throw shape_error("assignment length " + std::to_string(x.size()) +
                      " does not match variable count");
  for (int v = 0; v < net.size(); ++v) {
    if (x[v] < 0 || x[v] >= net.arity(v))
      throw shape_error("state out of range for variable " +
                        net.variable(v).name);
  }

  double log_p = 0.0;
  for (int v = 0; v < net.size(); ++v) {
    if (auto forced = q.forced_state(v)) {
      if (x[v] != *forced) return -std::numeric_limits<double>::infinity();
      continue;
    }
    double p = net.cpt(v)(net.parent_config(v, x), x[v]);
    if (p <= 0.0) return -std::numeric_limits<double>::infinity();
    log_p += std::log(p);
  }
  return log_p;
}

long long free_state_count(const BayesNet& net, const Intervention& q) {
  const long long cap = 1LL << 62;
  long long count = 1;
  for (int v = 0; v < net.size(); ++v) {
    if (q.intervenes(v)) continue;
    count *= net.arity(v);
    if (count > cap / 4) return cap;
  }
  return count;
}

MarginalTable exact_marginal(const BayesNet& net,
                             std::span<const int> target_vars,
                             const Intervention& q, long long budget) {
  MarginalTable table;
  table.vars.assign(target_vars.begin(), target_vars.end());
  long long cells = 1;
  for (int v : target_vars) {
    if (v < 0 || v >= net.size())
      throw shape_error("target variable index out of range");
    table.arities.push_back(net.arity(v));
    cells *= net.arity(v);
  }
  if (cells > budget)
    throw enumeration_limit_error("marginal table exceeds budget");
  table.p.assign(static_cast<std::size_t>(cells), 0.0);

  std::vector<int> states(target_vars.size());
  for_each_joint_config(net, q, budget, [&](std::span<const int> x, double p) {
    for (std::size_t i = 0; i < table.vars.size(); ++i) states[i] = x[table.vars[i]];
    table.p[table.index_of(states)] += p;
  });
  return table;
}

ForwardSampler::ForwardSampler(const BayesNet& net, const Intervention& q)
    : net_(&net), q_(q) {
  check_intervention(net, q);
  Dag dag = net.dag();
  for (const auto& [var, state] : q.assignments())
    for (int p : std::vector<int>(dag.parents(var))) dag.remove_edge(p, var);
  order_ = dag.topological_order();
}

void ForwardSampler::draw(std::span<int> out, Rng& rng) const {
  for (int v : order_) {
    if (auto forced = q_.forced_state(v)) {
      out[v] = *forced;
    } else {
      const Cpt& cpt = net_->cpt(v);
      out[v] = rng.categorical(cpt.row(net_->parent_config(v, out)));
    }
  }
}

std::vector<int> ForwardSampler::draw(Rng& rng) const {
  std::vector<int> x(net_->size());
  draw(x, rng);
  return x;
}

std::vector<std::vector<int>> forward_sample(const BayesNet& net,
                                             const Intervention& q, int n,
                                             Rng& rng) {
  if (n < 1) throw error("sample count must be >= 1");
  ForwardSampler sampler(net, q);
  std::vector<std::vector<int>> samples;
  samples.reserve(n);
  for (int i = 0; i < n; ++i) samples.push_back(sampler.draw(rng));
  return samples;
}

namespace {

double row_entropy(std::span<const double> row) {
  double h = 0.0;
  for (double p : row)
    if (p > 0.0) h -= p * std::log(p);
  return h;
}

}  // namespace

double model_entropy(const BayesNet& net, const Intervention& q,
                     long long budget) {
  // accumulate parent-configuration marginals for every free family
  std::vector<std::vector<double>> parent_marginals(net.size());
  for (int v = 0; v < net.size(); ++v)
    if (!q.intervenes(v))
      parent_marginals[v].assign(net.cpt(v).config_count(), 0.0);

  for_each_joint_config(net, q, budget, [&](std::span<const int> x, double p) {
    for (int v = 0; v < net.size(); ++v)
      if (!q.intervenes(v)) parent_marginals[v][net.parent_config(v, x)] += p;
  });

  double h = 0.0;
  for (int v = 0; v < net.size(); ++v) {
    if (q.intervenes(v)) continue;
    const Cpt& cpt = net.cpt(v);
    for (int c = 0; c < cpt.config_count(); ++c) {
      double w = parent_marginals[v][c];
      if (w > 0.0) h += w * row_entropy(cpt.row(c));
    }
  }
  return h;
}

double model_entropy_sampled(const BayesNet& net, const Intervention& q, int n,
                             Rng& rng) {
  if (n < 1) throw error("sample count must be >= 1");
  ForwardSampler sampler(net, q);

  // row entropies are reused across samples
  std::vector<std::vector<double>> entropies(net.size());
  for (int v = 0; v < net.size(); ++v) {
    if (q.intervenes(v)) continue;
    const Cpt& cpt = net.cpt(v);
    entropies[v].resize(cpt.config_count());
    for (int c = 0; c < cpt.config_count(); ++c)
      entropies[v][c] = row_entropy(cpt.row(c));
  }

  std::vector<int> x(net.size());
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    sampler.draw(x, rng);
    for (int v = 0; v < net.size(); ++v)
      if (!q.intervenes(v)) total += entropies[v][net.parent_config(v, x)];
  }
  return total / n;
}

}  // namespace bnactive
