#include "bnactive/search.hpp"

#include <map>

namespace bnactive {

namespace {

class ScoredSearch {
 public:
  ScoredSearch(const Dataset& ds, const ScoreConfig& cfg)
      : ds_(ds), cfg_(cfg), cache_(ds.variable_count()) {}

  double family(int child, const std::vector<int>& parents) {
    auto& memo = cache_[child];
    auto it = memo.find(parents);
    if (it != memo.end()) return it->second;
    double score = family_log_score(ds_, child, parents, cfg_);
    memo.emplace(parents, score);
    return score;
  }

  double total(const Dag& dag) {
    double score = 0.0;
    for (int v = 0; v < dag.size(); ++v) score += family(v, dag.parents(v));
    return score;
  }

  // One greedy climb from `dag`; returns the final score.
  double climb(Dag& dag, int max_flips) {
    const int n = dag.size();

    for (int flips = 0; flips < max_flips; ++flips) {
      double best_delta = 0.0;
      int best_child = -1, best_parent = -1, best_type = -1;

      for (int child = 0; child < n; ++child) {
        const double child_base = family(child, dag.parents(child));
        for (int parent = 0; parent < n; ++parent) {
          if (parent == child) continue;
          const bool present = dag.has_edge(parent, child);

          // add
          if (!present &&
              static_cast<int>(dag.parents(child).size()) < cfg_.max_parents &&
              !dag.path_exists(child, parent)) {
            auto ps = with(dag.parents(child), parent);
            double delta = family(child, ps) - child_base;
            consider(delta, child, parent, 0, best_delta, best_child,
                     best_parent, best_type);
          }
          // delete
          if (present) {
            auto ps = without(dag.parents(child), parent);
            double delta = family(child, ps) - child_base;
            consider(delta, child, parent, 1, best_delta, best_child,
                     best_parent, best_type);
          }
          // reverse: parent->child becomes child->parent
          if (present &&
              static_cast<int>(dag.parents(parent).size()) < cfg_.max_parents) {
            dag.remove_edge(parent, child);
            const bool ok = !dag.path_exists(parent, child);
            if (ok) {
              double delta = family(child, dag.parents(child)) - child_base +
                             family(parent, with(dag.parents(parent), child)) -
                             family(parent, dag.parents(parent));
              consider(delta, child, parent, 2, best_delta, best_child,
                       best_parent, best_type);
            }
            dag.add_edge(parent, child);
          }
        }
      }

      if (best_child < 0) break;
      switch (best_type) {
        case 0:
          dag.add_edge(best_parent, best_child);
          break;
        case 1:
          dag.remove_edge(best_parent, best_child);
          break;
        default:
          dag.remove_edge(best_parent, best_child);
          dag.add_edge(best_child, best_parent);
          break;
      }
    }
    return total(dag);
  }

 private:
  static std::vector<int> with(const std::vector<int>& ps, int v) {
    std::vector<int> out = ps;
    out.insert(std::lower_bound(out.begin(), out.end(), v), v);
    return out;
  }
  static std::vector<int> without(const std::vector<int>& ps, int v) {
    std::vector<int> out = ps;
    out.erase(std::find(out.begin(), out.end(), v));
    return out;
  }
  static void consider(double delta, int child, int parent, int type,
                       double& best_delta, int& best_child, int& best_parent,
                       int& best_type) {
    if (delta > best_delta) {
      best_delta = delta;
      best_child = child;
      best_parent = parent;
      best_type = type;
    }
  }

  const Dataset& ds_;
  const ScoreConfig& cfg_;
  std::vector<std::map<std::vector<int>, double>> cache_;
};

Dag random_restart_dag(int n, int max_parents, Rng& rng) {
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  for (int i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng.uniform_int(i + 1)]);

  Dag dag(n);
  const double p = n > 1 ? 2.0 / n : 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (rng.uniform() < p &&
          static_cast<int>(dag.parents(perm[j]).size()) < max_parents)
        dag.add_edge(perm[i], perm[j]);
    }
  }
  return dag;
}

}  // namespace

Dag search_structure(const Dataset& ds, const ScoreConfig& cfg,
                     const SearchConfig& scfg, Rng& rng) {
  if (ds.empty()) throw empty_data_error("cannot learn from an empty dataset");
  const int n = ds.variable_count();
  ScoredSearch search(ds, cfg);

  Dag best;
  double best_score = 0.0;
  for (int r = 0; r < std::max(1, scfg.restarts); ++r) {
    Dag dag = r == 0 ? Dag(n) : random_restart_dag(n, cfg.max_parents, rng);
    double score = search.climb(dag, scfg.max_flips);
    if (r == 0 || score > best_score) {
      best = std::move(dag);
      best_score = score;
    }
  }
  return best;
}

BayesNet local_search(const Dataset& ds, const ScoreConfig& cfg,
                      const SearchConfig& scfg, Rng& rng) {
  return fit_parameters(search_structure(ds, cfg, scfg, rng), ds, cfg);
}

}  // namespace bnactive
