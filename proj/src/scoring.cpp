#include "bnactive/scoring.hpp"

#include <cmath>

namespace bnactive {

namespace {

// counts[config * arity + state] over records not intervened on the child
std::vector<int> family_counts(const Dataset& ds, int child,
                               std::span<const int> parents) {
  const auto& schema = ds.schema();
  const int arity = schema[child].arity();
  long long configs = 1;
  for (int p : parents) configs *= schema[p].arity();

  std::vector<int> counts(static_cast<std::size_t>(configs) * arity, 0);
  for (const auto& rec : ds.records()) {
    if (rec.intervened[child]) continue;
    int config = 0;
    for (int p : parents) config = config * schema[p].arity() + rec.values[p];
    ++counts[static_cast<std::size_t>(config) * arity + rec.values[child]];
  }
  return counts;
}

}  // namespace

double family_log_score(const Dataset& ds, int child,
                        std::span<const int> parents, const ScoreConfig& cfg) {
  const auto& schema = ds.schema();
  const int arity = schema[child].arity();
  const auto counts = family_counts(ds, child, parents);
  const int configs = static_cast<int>(counts.size()) / arity;

  const double alpha_cell = cfg.equivalent_sample_size / (arity * configs);
  const double alpha_row = cfg.equivalent_sample_size / configs;

  double score = 0.0;
  for (int c = 0; c < configs; ++c) {
    int row_total = 0;
    for (int s = 0; s < arity; ++s) {
      int n = counts[static_cast<std::size_t>(c) * arity + s];
      if (n > 0)
        score += std::lgamma(alpha_cell + n) - std::lgamma(alpha_cell);
      row_total += n;
    }
    if (row_total > 0)
      score += std::lgamma(alpha_row) - std::lgamma(alpha_row + row_total);
  }
  return score;
}

double structure_log_score(const Dataset& ds, const Dag& dag,
                           const ScoreConfig& cfg) {
  double score = 0.0;
  for (int v = 0; v < dag.size(); ++v)
    score += family_log_score(ds, v, dag.parents(v), cfg);
  return score;
}

BayesNet fit_parameters(const Dag& dag, const Dataset& ds,
                        const ScoreConfig& cfg) {
  const auto& schema = ds.schema();
  std::vector<Cpt> cpts;
  cpts.reserve(schema.size());
  for (int v = 0; v < static_cast<int>(schema.size()); ++v) {
    const int arity = schema[v].arity();
    const auto counts = family_counts(ds, v, dag.parents(v));
    const int configs = static_cast<int>(counts.size()) / arity;
    const double alpha_cell = cfg.equivalent_sample_size / (arity * configs);

    Cpt cpt(v, arity, configs);
    for (int c = 0; c < configs; ++c) {
      double total = 0.0;
      for (int s = 0; s < arity; ++s)
        total += alpha_cell + counts[static_cast<std::size_t>(c) * arity + s];
      for (int s = 0; s < arity; ++s)
        cpt.at(c, s) =
            (alpha_cell + counts[static_cast<std::size_t>(c) * arity + s]) /
            total;
    }
    cpts.push_back(std::move(cpt));
  }
  return BayesNet(schema, dag, std::move(cpts));
}

}  // namespace bnactive
