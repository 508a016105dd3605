#ifndef BNACTIVE_ACTIVE_HPP
#define BNACTIVE_ACTIVE_HPP

#include <array>

#include "bnactive/query.hpp"

namespace bnactive {

struct Strategy {
  enum class Kind { Passive, Random, Active };

  Kind kind = Kind::Passive;
  int random_size = 0;                      // for random(k)
  MeasureKind measure = MeasureKind::Kl2;   // for active(measure)

  // "passive" | "random:K" | "active:js|bjs|kl2"
  static Strategy parse(std::string_view text);
  std::string name() const;
};

inline constexpr std::array<int, 4> kPredictiveSizes{0, 1, 5, 10};

struct LoopConfig {
  int steps = 0;                  // T
  int initial_observational = 20; // N0
  int committee_size = 2;         // K
  int rebuild_every = 1;          // committee rebuilt from scratch each step
  int eval_every = 0;             // 0 = evaluate at the final step only
  int bootstrap_eval_count = 50;  // B structure re-learnings per evaluation
  int predictive_trials = 20;     // sampled interventions per size > 1
};

struct StepReport {
  int step = 0;
  Intervention query;
  std::string measure;  // empty for passive/random
  double score = 0.0;
  double score_se = 0.0;
  bool evaluated = false;
  double edge_error = 0.0;
  double edge_entropy = 0.0;
  std::array<double, 4> predictive_kl{};  // at kPredictiveSizes
};

// One experimental response: a forward sample from mutilate(true_net, q)
// with intervention flags set exactly on the queried variables.
Record oracle_respond(const BayesNet& true_net, const Intervention& q,
                      Rng& rng);

// Pair-relation edge error after bootstrap re-learning: for every
// unordered variable pair the relation is one of {->, <-, none}; the
// error is the summed frequency of getting the true relation wrong.
double edge_error(std::span<const Dag> bootstrap_dags, const Dag& true_dag);

// Summed entropy (nats) of the empirical pair-relation distributions.
double edge_entropy(std::span<const Dag> bootstrap_dags);

// Mean KL(true || learned) over interventions of the given size;
// exhaustive for size <= 1 on nets of <= 12 variables, otherwise `trials`
// uniformly drawn interventions. Sizes above the variable count clamp.
double predictive_accuracy(const BayesNet& true_net, const BayesNet& learned,
                           int intervention_size, int trials, Rng& rng,
                           long long budget = kDefaultEnumBudget,
                           int fallback_samples = 10000);

// Closed-loop structure recovery against a hidden true network: draw N0
// observational records, then per step build the committee (active only),
// choose a query, record the oracle's response, and on evaluation steps
// report edge metrics over B bootstrap re-learnings plus predictive KL of
// a model fit to all data so far. Deterministic given the seed.
std::vector<StepReport> run_active(const BayesNet& true_net,
                                   const Strategy& strategy,
                                   const LoopConfig& lc, const ScoreConfig& cfg,
                                   const SearchConfig& scfg,
                                   const QueryConfig& qcfg,
                                   const Method& method, std::uint64_t seed);

}  // namespace bnactive

#endif
