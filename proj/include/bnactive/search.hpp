#ifndef BNACTIVE_SEARCH_HPP
#define BNACTIVE_SEARCH_HPP

#include "bnactive/scoring.hpp"

namespace bnactive {

struct SearchConfig {
  int restarts = 3;     // first restart always starts from the empty graph
  int max_flips = 500;  // cap on accepted moves per climb
};

// Greedy hill climbing over {add, delete, reverse} edge moves, accepting
// the best strictly improving acyclicity-preserving move until none is
// left. Ties break on the lowest (child, parent, move-type) tuple. Returns
// the best structure across restarts.
Dag search_structure(const Dataset& ds, const ScoreConfig& cfg,
                     const SearchConfig& scfg, Rng& rng);

// search_structure + fit_parameters.
BayesNet local_search(const Dataset& ds, const ScoreConfig& cfg,
                      const SearchConfig& scfg, Rng& rng);

}  // namespace bnactive

#endif
