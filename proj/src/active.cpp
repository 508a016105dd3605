#include "bnactive/active.hpp"

#include <cmath>
#include <optional>

namespace bnactive {

Strategy Strategy::parse(std::string_view text) {
  Strategy s;
  if (text == "passive") {
    s.kind = Kind::Passive;
    return s;
  }
  if (text.starts_with("random:")) {
    s.kind = Kind::Random;
    s.random_size = std::stoi(std::string(text.substr(7)));
    if (s.random_size < 0) throw error("random query size must be >= 0");
    return s;
  }
  if (text.starts_with("active:")) {
    s.kind = Kind::Active;
    s.measure = parse_measure(text.substr(7));
    return s;
  }
  throw error("unknown strategy '" + std::string(text) + "'");
}

std::string Strategy::name() const {
  switch (kind) {
    case Kind::Passive:
      return "passive";
    case Kind::Random:
      return "random:" + std::to_string(random_size);
    default:
      return "active:" + measure_name(measure);
  }
}

Record oracle_respond(const BayesNet& true_net, const Intervention& q,
                      Rng& rng) {
  ForwardSampler sampler(true_net, q);
  return record_from(sampler.draw(rng), q);
}

namespace {

// 0: low->high edge, 1: high->low edge, 2: none
int pair_relation(const Dag& dag, int low, int high) {
  if (dag.has_edge(low, high)) return 0;
  if (dag.has_edge(high, low)) return 1;
  return 2;
}

}  // namespace

double edge_error(std::span<const Dag> bootstrap_dags, const Dag& true_dag) {
  if (bootstrap_dags.empty())
    throw empty_data_error("edge_error needs at least one structure");
  for (const Dag& d : bootstrap_dags)
    if (d.size() != true_dag.size())
      throw shape_error("structure sizes disagree");

  const int n = true_dag.size();
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const int truth = pair_relation(true_dag, i, j);
      int hits = 0;
      for (const Dag& d : bootstrap_dags)
        if (pair_relation(d, i, j) == truth) ++hits;
      total += 1.0 - static_cast<double>(hits) / bootstrap_dags.size();
    }
  }
  return total;
}

double edge_entropy(std::span<const Dag> bootstrap_dags) {
  if (bootstrap_dags.size() < 2)
    throw empty_data_error("edge_entropy needs at least two structures");
  const int n = bootstrap_dags.front().size();
  for (const Dag& d : bootstrap_dags)
    if (d.size() != n) throw shape_error("structure sizes disagree");

  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      std::array<int, 3> counts{};
      for (const Dag& d : bootstrap_dags) ++counts[pair_relation(d, i, j)];
      for (int c : counts) {
        if (c == 0) continue;
        double p = static_cast<double>(c) / bootstrap_dags.size();
        total -= p * std::log(p);
      }
    }
  }
  return total;
}

namespace {

double intervention_kl(const BayesNet& truth, const BayesNet& learned,
                       const Intervention& q, long long budget,
                       int fallback_samples, Rng& rng) {
  if (free_state_count(truth, q) <= budget)
    return kl_between(truth, learned, q, Method::family_exact()).value;
  return kl_between(truth, learned, q, Method::family_sampled(fallback_samples),
                    rng.next_u64())
      .value;
}

}  // namespace

double predictive_accuracy(const BayesNet& true_net, const BayesNet& learned,
                           int intervention_size, int trials, Rng& rng,
                           long long budget, int fallback_samples) {
  if (!same_schema(true_net.variables(), learned.variables()))
    throw shape_error("predictive accuracy requires a shared schema");
  const int n = true_net.size();
  const int k = std::min(intervention_size, n);

  if (k == 0)
    return intervention_kl(true_net, learned, Intervention{}, budget,
                           fallback_samples, rng);

  if (k == 1 && n <= 12) {
    double total = 0.0;
    int count = 0;
    for (int v = 0; v < n; ++v) {
      for (int s = 0; s < true_net.arity(v); ++s) {
        Intervention q;
        q.set(v, s);
        total += intervention_kl(true_net, learned, q, budget,
                                 fallback_samples, rng);
        ++count;
      }
    }
    return total / count;
  }

  double total = 0.0;
  for (int t = 0; t < trials; ++t) {
    // k distinct variables without replacement, states uniform
    std::vector<int> pool(n);
    for (int v = 0; v < n; ++v) pool[v] = v;
    Intervention q;
    for (int pick = 0; pick < k; ++pick) {
      int idx = rng.uniform_int(static_cast<int>(pool.size()));
      int var = pool[idx];
      pool.erase(pool.begin() + idx);
      q.set(var, rng.uniform_int(true_net.arity(var)));
    }
    total += intervention_kl(true_net, learned, q, budget, fallback_samples,
                             rng);
  }
  return total / trials;
}

namespace {

Intervention random_query(const BayesNet& net, int k, Rng& rng) {
  const int n = net.size();
  std::vector<int> pool(n);
  for (int v = 0; v < n; ++v) pool[v] = v;
  Intervention q;
  for (int pick = 0; pick < std::min(k, n); ++pick) {
    int idx = rng.uniform_int(static_cast<int>(pool.size()));
    int var = pool[idx];
    pool.erase(pool.begin() + idx);
    q.set(var, rng.uniform_int(net.arity(var)));
  }
  return q;
}

void evaluate_step(StepReport& report, const BayesNet& truth,
                   const Dataset& data, const LoopConfig& lc,
                   const ScoreConfig& cfg, const SearchConfig& scfg,
                   long long budget, std::uint64_t seed) {
  std::vector<Dag> boot;
  boot.reserve(lc.bootstrap_eval_count);
  for (int b = 0; b < lc.bootstrap_eval_count; ++b) {
    const std::string label = "eval/boot=" + std::to_string(b);
    Rng resample_rng = stream(seed, label + "/resample");
    Rng search_rng = stream(seed, label + "/search");
    Dataset sample = bootstrap_resample(data, resample_rng);
    boot.push_back(search_structure(sample, cfg, scfg, search_rng));
  }
  report.edge_error = edge_error(boot, truth.dag());
  report.edge_entropy = edge_entropy(boot);

  Rng fit_rng = stream(seed, "eval/fit");
  BayesNet learned = local_search(data, cfg, scfg, fit_rng);
  for (std::size_t i = 0; i < kPredictiveSizes.size(); ++i) {
    Rng pkl_rng = stream(seed, "eval/pkl=" + std::to_string(kPredictiveSizes[i]));
    report.predictive_kl[i] =
        predictive_accuracy(truth, learned, kPredictiveSizes[i],
                            lc.predictive_trials, pkl_rng, budget);
  }
  report.evaluated = true;
}

}  // namespace

std::vector<StepReport> run_active(const BayesNet& true_net,
                                   const Strategy& strategy,
                                   const LoopConfig& lc, const ScoreConfig& cfg,
                                   const SearchConfig& scfg,
                                   const QueryConfig& qcfg,
                                   const Method& method, std::uint64_t seed) {
  if (lc.initial_observational < 1)
    throw error("initial observational sample must be >= 1");

  Dataset data(true_net.variables());
  {
    Rng init_rng = stream(seed, "init");
    for (int i = 0; i < lc.initial_observational; ++i)
      data.append(oracle_respond(true_net, Intervention{}, init_rng));
  }

  auto is_eval_step = [&](int t) {
    if (t == lc.steps) return true;
    return t > 0 && lc.eval_every > 0 && t % lc.eval_every == 0;
  };

  std::vector<StepReport> reports;
  if (lc.steps == 0) {
    StepReport report;
    report.step = 0;
    evaluate_step(report, true_net, data, lc, cfg, scfg, method.enum_budget,
                  derive_seed(seed, "step=0"));
    reports.push_back(std::move(report));
    return reports;
  }

  const int rebuild_every = std::max(1, lc.rebuild_every);
  std::optional<Committee> committee;
  for (int t = 1; t <= lc.steps; ++t) {
    const std::string step_label = "step=" + std::to_string(t);
    StepReport report;
    report.step = t;

    if (strategy.kind == Strategy::Kind::Active) {
      if (!committee || (t - 1) % rebuild_every == 0)
        committee =
            build_committee(data, lc.committee_size, cfg, scfg,
                            derive_seed(seed, step_label + "/committee"));
      QueryConfig step_cfg = qcfg;
      step_cfg.measure = strategy.measure;
      auto result = greedy_query(*committee, step_cfg, method,
                                 derive_seed(seed, step_label + "/query"));
      report.query = result.query;
      report.measure = measure_name(strategy.measure);
      report.score = result.score.value;
      report.score_se = result.score.std_error;
    } else if (strategy.kind == Strategy::Kind::Random) {
      Rng query_rng = stream(seed, step_label + "/query");
      report.query = random_query(true_net, strategy.random_size, query_rng);
    }

    Rng oracle_rng = stream(seed, step_label + "/oracle");
    data.append(oracle_respond(true_net, report.query, oracle_rng));

    if (is_eval_step(t))
      evaluate_step(report, true_net, data, lc, cfg, scfg, method.enum_budget,
                    derive_seed(seed, step_label));
    reports.push_back(std::move(report));
  }
  return reports;
}

}  // namespace bnactive
