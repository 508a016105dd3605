#ifndef BNACTIVE_QUERY_HPP
#define BNACTIVE_QUERY_HPP

#include <limits>

#include "bnactive/divergence.hpp"

namespace bnactive {

enum class MeasureKind { Js, Bjs, Kl2 };

MeasureKind parse_measure(std::string_view name);  // "js" | "bjs" | "kl2"
std::string measure_name(MeasureKind measure);

struct QueryConfig {
  MeasureKind measure = MeasureKind::Kl2;
  int budget = std::numeric_limits<int>::max();  // max query variables
  double threshold_abs = 1e-6;
  double threshold_z = 2.0;  // multiplies the candidate's std_error
  std::vector<int> candidate_vars;  // empty = all variables
};

DivergenceEstimate score_query(const Committee& c, const Intervention& q,
                               const QueryConfig& cfg, const Method& method,
                               std::uint64_t seed = 0);

struct QueryResult {
  Intervention query;
  DivergenceEstimate score;
};

// Greedy rounds of ascending query size: every (unused candidate, state)
// extension is scored and the best one is added while it beats the
// current score by max(threshold_abs, threshold_z * std_error). Ties
// break on (variable index, state index). The empty query is a valid
// outcome.
QueryResult greedy_query(const Committee& c, const QueryConfig& cfg,
                         const Method& method, std::uint64_t seed = 0);

}  // namespace bnactive

#endif
