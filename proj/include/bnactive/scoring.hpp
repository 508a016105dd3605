#ifndef BNACTIVE_SCORING_HPP
#define BNACTIVE_SCORING_HPP

#include <span>

#include "bnactive/dataset.hpp"

namespace bnactive {

struct ScoreConfig {
  double equivalent_sample_size = 1.0;
  int max_parents = 4;
};

// Log Dirichlet-multinomial marginal likelihood of one family under BDeu
// hyperparameters ess / (r * #configs). Records flagged as intervened on
// the child are excluded from the sufficient statistics, so experimental
// data informs only the other families.
double family_log_score(const Dataset& ds, int child,
                        std::span<const int> parents, const ScoreConfig& cfg);

// Sum of family scores over the dag (uniform structure prior).
double structure_log_score(const Dataset& ds, const Dag& dag,
                           const ScoreConfig& cfg);

// Dirichlet posterior-mean parameters for a fixed structure. Rows are
// strictly positive for ess > 0 and sum to one by construction.
BayesNet fit_parameters(const Dag& dag, const Dataset& ds,
                        const ScoreConfig& cfg);

}  // namespace bnactive

#endif
