#ifndef BNACTIVE_GENERATE_HPP
#define BNACTIVE_GENERATE_HPP

#include "bnactive/bayes_net.hpp"
#include "bnactive/rng.hpp"

namespace bnactive {

// Random DAG over a random topological order; each forward pair becomes
// an edge with probability edge_density, subject to the parent cap.
Dag random_dag(int variable_count, double edge_density, int max_parents,
               Rng& rng);

// Rows drawn from a symmetric Dirichlet(cpt_alpha); smaller alpha gives
// more deterministic rows, which makes structures easier to identify.
std::vector<Cpt> random_cpts(const std::vector<Variable>& vars, const Dag& dag,
                             double cpt_alpha, Rng& rng);

// Variables X0..X{N-1} with arities uniform in [2, max_arity] and states
// s0..s{r-1}.
std::vector<Variable> random_schema(int variable_count, int max_arity,
                                    Rng& rng);

BayesNet random_network(int variable_count, int max_arity, double edge_density,
                        int max_parents, double cpt_alpha, Rng& rng);

}  // namespace bnactive

#endif
