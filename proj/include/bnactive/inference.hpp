#ifndef BNACTIVE_INFERENCE_HPP
#define BNACTIVE_INFERENCE_HPP

#include <span>
#include <vector>

#include "bnactive/bayes_net.hpp"
#include "bnactive/rng.hpp"

namespace bnactive {

inline constexpr long long kDefaultEnumBudget = 1LL << 20;

// Throws invalid_intervention_error on unknown variables or bad states.
void check_intervention(const BayesNet& net, const Intervention& q);

// Remove all edges into intervened variables and clamp each to its forced
// state with a single degenerate row. Everything else is shared unchanged.
BayesNet mutilate(const BayesNet& net, const Intervention& q);

// ln P(x | do(q), net) via the truncated factorization; -infinity when x
// contradicts q.
double joint_log_prob(const BayesNet& net, std::span<const int> x,
                      const Intervention& q);

// Product of the arities of non-intervened variables, saturating.
long long free_state_count(const BayesNet& net, const Intervention& q);

struct MarginalTable {
  std::vector<int> vars;     // in requested order
  std::vector<int> arities;  // matching vars
  std::vector<double> p;     // lexicographic, last variable fastest

  int index_of(std::span<const int> states) const {
    int idx = 0;
    for (std::size_t i = 0; i < arities.size(); ++i)
      idx = idx * arities[i] + states[i];
    return idx;
  }
  double at(std::span<const int> states) const { return p[index_of(states)]; }
};

// Marginal of P(.|do(q), net) over target_vars by full enumeration.
// Throws enumeration_limit_error when the free state space exceeds budget.
MarginalTable exact_marginal(const BayesNet& net, std::span<const int> target_vars,
                             const Intervention& q,
                             long long budget = kDefaultEnumBudget);

// Ancestral sampler over the mutilated network. The topological order is
// recomputed after mutilation (ascending-index tie break).
class ForwardSampler {
 public:
  ForwardSampler(const BayesNet& net, const Intervention& q);

  void draw(std::span<int> out, Rng& rng) const;
  std::vector<int> draw(Rng& rng) const;

  const Intervention& intervention() const { return q_; }

 private:
  const BayesNet* net_;
  Intervention q_;
  std::vector<int> order_;
};

std::vector<std::vector<int>> forward_sample(const BayesNet& net,
                                             const Intervention& q, int n,
                                             Rng& rng);

// H(P(X | do(q), net)) in nats via the family decomposition
//   sum_j sum_{pi_j} P(pi_j | do(q)) H(X_j | pi_j),
// intervened variables excluded. Exact parent marginals by enumeration.
double model_entropy(const BayesNet& net, const Intervention& q,
                     long long budget = kDefaultEnumBudget);

// Same decomposition with parent marginals estimated from n forward samples.
double model_entropy_sampled(const BayesNet& net, const Intervention& q, int n,
                             Rng& rng);

// Enumerate every configuration consistent with q together with its joint
// probability under do(q). f(x, p) is called once per configuration.
template <class F>
void for_each_joint_config(const BayesNet& net, const Intervention& q,
                           long long budget, F&& f) {
  check_intervention(net, q);
  if (free_state_count(net, q) > budget)
    throw enumeration_limit_error("joint state space exceeds budget");

  const int n = net.size();
  std::vector<int> x(n, 0);
  std::vector<int> free_vars;
  for (int v = 0; v < n; ++v) {
    if (auto s = q.forced_state(v)) {
      x[v] = *s;
    } else {
      free_vars.push_back(v);
    }
  }

  const std::span<const int> view(x);
  while (true) {
    double p = 1.0;
    for (int v = 0; v < n; ++v) {
      if (q.intervenes(v)) continue;
      p *= net.cpt(v)(net.parent_config(v, view), x[v]);
    }
    f(view, p);

    int i = static_cast<int>(free_vars.size()) - 1;
    for (; i >= 0; --i) {
      int v = free_vars[i];
      if (++x[v] < net.arity(v)) break;
      x[v] = 0;
    }
    if (i < 0) break;
  }
}

}  // namespace bnactive

#endif
