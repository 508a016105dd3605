#include "bnactive/query.hpp"

namespace bnactive {

MeasureKind parse_measure(std::string_view name) {
  if (name == "js") return MeasureKind::Js;
  if (name == "bjs") return MeasureKind::Bjs;
  if (name == "kl2") return MeasureKind::Kl2;
  throw error("unknown measure '" + std::string(name) + "'");
}

std::string measure_name(MeasureKind measure) {
  switch (measure) {
    case MeasureKind::Js:
      return "js";
    case MeasureKind::Bjs:
      return "bjs";
    default:
      return "kl2";
  }
}

DivergenceEstimate score_query(const Committee& c, const Intervention& q,
                               const QueryConfig& cfg, const Method& method,
                               std::uint64_t seed) {
  if (q.size() > cfg.budget)
    throw error("query exceeds the variable budget");
  switch (cfg.measure) {
    case MeasureKind::Js:
      return js(c, q, method, seed);
    case MeasureKind::Bjs:
      return bjs(c, q, method, seed);
    default:
      return kl2(c, q, method, seed);
  }
}

QueryResult greedy_query(const Committee& c, const QueryConfig& cfg,
                         const Method& method, std::uint64_t seed) {
  const auto& schema = c.schema();
  std::vector<int> candidates = cfg.candidate_vars;
  if (candidates.empty())
    for (int v = 0; v < static_cast<int>(schema.size()); ++v)
      candidates.push_back(v);

  Intervention query;
  DivergenceEstimate current =
      score_query(c, query, cfg, method, derive_seed(seed, "round=0/base"));

  for (int round = 1; query.size() < cfg.budget; ++round) {
    int best_var = -1, best_state = -1;
    DivergenceEstimate best;

    for (int var : candidates) {
      if (query.intervenes(var)) continue;
      for (int state = 0; state < schema[var].arity(); ++state) {
        Intervention extended = query;
        extended.set(var, state);
        auto ext_seed = derive_seed(
            seed, "round=" + std::to_string(round) + "/var=" +
                      std::to_string(var) + "/state=" + std::to_string(state));
        auto est = score_query(c, extended, cfg, method, ext_seed);
        if (best_var < 0 || est.value > best.value) {
          best = est;
          best_var = var;
          best_state = state;
        }
      }
    }

    if (best_var < 0) break;
    double threshold =
        std::max(cfg.threshold_abs, cfg.threshold_z * best.std_error);
    if (best.value <= current.value + threshold) break;
    query.set(best_var, best_state);
    current = best;
  }
  return {query, current};
}

}  // namespace bnactive
