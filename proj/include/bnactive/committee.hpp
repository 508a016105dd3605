#ifndef BNACTIVE_COMMITTEE_HPP
#define BNACTIVE_COMMITTEE_HPP

#include <filesystem>

#include "bnactive/search.hpp"

namespace bnactive {

// A weighted set of models over a shared schema, representing the
// learner's current uncertainty.
class Committee {
 public:
  Committee(std::vector<BayesNet> members, std::vector<double> weights);

  int size() const { return static_cast<int>(members_.size()); }
  const BayesNet& member(int i) const { return members_[i]; }
  double weight(int i) const { return weights_[i]; }
  const std::vector<double>& weights() const { return weights_; }
  const std::vector<Variable>& schema() const {
    return members_.front().variables();
  }

 private:
  std::vector<BayesNet> members_;
  std::vector<double> weights_;
};

// Bagged committee: member i is learned from an independent bootstrap
// resample of the data, weights uniform 1/K. Each member owns derived
// rng streams, so members can be built in any order (or in parallel)
// with identical results.
Committee build_committee(const Dataset& ds, int committee_size,
                          const ScoreConfig& cfg, const SearchConfig& scfg,
                          std::uint64_t seed);

// committee.json manifest naming per-member network files plus weights.
void save_committee(const Committee& committee,
                    const std::filesystem::path& dir);
Committee load_committee(const std::filesystem::path& manifest);

}  // namespace bnactive

#endif
