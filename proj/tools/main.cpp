// bnactive: committee-based active learning for discrete Bayesian networks.
//
// Subcommands: gen-net, sample, learn, committee, measures, score-query,
// propose-query, active, eval, report. All randomness is seeded explicitly;
// there is no wall-clock seeding anywhere.

#include <iostream>

#include <CLI11.hpp>

#include "bnactive/experiment.hpp"
#include "bnactive/generate.hpp"

namespace bn = bnactive;

namespace {

bn::Intervention parse_query_string(const bn::BayesNet& net,
                                    const std::string& text) {
  bn::Intervention q;
  if (text.empty()) return q;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(';', start);
    if (end == std::string::npos) end = text.size();
    std::string part = text.substr(start, end - start);
    auto eq = part.find('=');
    if (eq == std::string::npos)
      throw bn::parse_error("query term '" + part + "' is not name=state");
    const std::string name = part.substr(0, eq);
    int var = net.find_variable(name);
    if (var < 0) throw bn::parse_error("unknown query variable '" + name + "'");
    q.set(var, std::stoi(part.substr(eq + 1)));
    start = end + 1;
    if (end == text.size()) break;
  }
  bn::check_intervention(net, q);
  return q;
}

bn::Method method_from_flags(const std::string& method, int samples) {
  if (method == "exact") return bn::Method::family_exact();
  if (method == "exact-enum") return bn::Method::exact_enumeration();
  if (method == "sampled") return bn::Method::monte_carlo(samples);
  throw bn::parse_error("unknown method '" + method + "'");
}

void print_estimate(const std::string& label, const bn::DivergenceEstimate& e) {
  std::cout << label << "," << bn::format_double(e.value) << ","
            << bn::format_double(e.std_error) << "," << e.method << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Active structure learning in discrete Bayesian networks"};
  app.require_subcommand(1);

  // gen-net
  auto* gen = app.add_subcommand("gen-net", "Generate a random sparse network");
  int gen_vars = 8, gen_max_arity = 3, gen_max_parents = 4;
  double gen_density = 0.25, gen_alpha = 1.0;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  gen->add_option("--vars", gen_vars, "Variable count")->required();
  gen->add_option("--max-arity", gen_max_arity, "Max states per variable");
  gen->add_option("--density", gen_density, "Edge probability per pair");
  gen->add_option("--max-parents", gen_max_parents, "Parent cap");
  gen->add_option("--cpt-alpha", gen_alpha, "Dirichlet concentration for rows");
  gen->add_option("--seed", gen_seed, "Seed (u64)")->required();
  gen->add_option("--out", gen_out, "Output network file")->required();

  // sample
  auto* sample = app.add_subcommand("sample", "Forward-sample a dataset");
  std::string sample_net, sample_out, sample_do;
  int sample_n = 100;
  std::uint64_t sample_seed = 0;
  sample->add_option("--net", sample_net, "Network file")->required();
  sample->add_option("--n", sample_n, "Record count")->required();
  sample->add_option("--seed", sample_seed, "Seed (u64)")->required();
  sample->add_option("--do", sample_do, "Intervention, e.g. \"X0=1;X2=0\"");
  sample->add_option("--out", sample_out, "Output dataset CSV")->required();

  // learn
  auto* learn = app.add_subcommand("learn", "Learn a network from data");
  std::string learn_net, learn_data, learn_out;
  std::uint64_t learn_seed = 0;
  bn::ScoreConfig learn_score;
  bn::SearchConfig learn_search;
  learn->add_option("--net", learn_net, "Schema network file")->required();
  learn->add_option("--data", learn_data, "Dataset CSV")->required();
  learn->add_option("--seed", learn_seed, "Seed (u64)")->required();
  learn->add_option("--ess", learn_score.equivalent_sample_size,
                    "Equivalent sample size");
  learn->add_option("--max-parents", learn_score.max_parents, "Parent cap");
  learn->add_option("--restarts", learn_search.restarts, "Search restarts");
  learn->add_option("--max-flips", learn_search.max_flips, "Accepted-move cap");
  learn->add_option("--out", learn_out, "Output network file")->required();

  // committee
  auto* committee = app.add_subcommand("committee", "Build a bootstrap committee");
  std::string com_net, com_data, com_out;
  int com_size = 2;
  std::uint64_t com_seed = 0;
  bn::ScoreConfig com_score;
  bn::SearchConfig com_search;
  committee->add_option("--net", com_net, "Schema network file")->required();
  committee->add_option("--data", com_data, "Dataset CSV")->required();
  committee->add_option("--committee-size", com_size, "Member count K");
  committee->add_option("--seed", com_seed, "Seed (u64)")->required();
  committee->add_option("--ess", com_score.equivalent_sample_size,
                        "Equivalent sample size");
  committee->add_option("--max-parents", com_score.max_parents, "Parent cap");
  committee->add_option("--restarts", com_search.restarts, "Search restarts");
  committee->add_option("--out", com_out, "Output directory")->required();

  // measures
  auto* measures = app.add_subcommand(
      "measures", "Score a query under all three disagreement measures");
  std::string mea_committee, mea_query, mea_method = "exact";
  int mea_samples = 10000;
  std::uint64_t mea_seed = 0;
  measures->add_option("--committee", mea_committee, "committee.json path")
      ->required();
  measures->add_option("--query", mea_query, "Query, e.g. \"X0=1\"");
  measures->add_option("--method", mea_method, "exact | exact-enum | sampled");
  measures->add_option("--samples", mea_samples, "Sample count when sampled");
  measures->add_option("--seed", mea_seed, "Seed (u64)");

  // score-query
  auto* score = app.add_subcommand("score-query", "Score a query under one measure");
  std::string sq_committee, sq_query, sq_measure = "kl2", sq_method = "exact";
  int sq_samples = 10000;
  std::uint64_t sq_seed = 0;
  score->add_option("--committee", sq_committee, "committee.json path")
      ->required();
  score->add_option("--query", sq_query, "Query, e.g. \"X0=1\"");
  score->add_option("--measure", sq_measure, "js | bjs | kl2");
  score->add_option("--method", sq_method, "exact | exact-enum | sampled");
  score->add_option("--samples", sq_samples, "Sample count when sampled");
  score->add_option("--seed", sq_seed, "Seed (u64)");

  // propose-query
  auto* propose = app.add_subcommand("propose-query", "Greedy query search");
  std::string pq_committee, pq_measure = "kl2", pq_method = "exact";
  int pq_samples = 10000, pq_budget = -1;
  double pq_threshold_abs = 1e-6, pq_threshold_z = 2.0;
  std::uint64_t pq_seed = 0;
  propose->add_option("--committee", pq_committee, "committee.json path")
      ->required();
  propose->add_option("--measure", pq_measure, "js | bjs | kl2");
  propose->add_option("--budget", pq_budget, "Max query variables (-1 = none)");
  propose->add_option("--threshold-abs", pq_threshold_abs, "Absolute floor");
  propose->add_option("--threshold-z", pq_threshold_z, "Std-error multiplier");
  propose->add_option("--method", pq_method, "exact | exact-enum | sampled");
  propose->add_option("--samples", pq_samples, "Sample count when sampled");
  propose->add_option("--seed", pq_seed, "Seed (u64)");

  // active
  auto* active = app.add_subcommand("active", "Run a full experiment from a config");
  std::string act_config, act_out;
  std::vector<std::string> act_strategies;
  std::uint64_t act_seed = 0;
  int act_jobs = 0, act_steps = -1, act_budget = -1, act_committee = 0;
  bool act_seed_given = false;
  active->add_option("--config", act_config, "Experiment config JSON")
      ->required();
  active->add_option("--out", act_out, "Override output directory");
  active
      ->add_option_function<std::uint64_t>(
          "--seed",
          [&](const std::uint64_t& v) {
            act_seed = v;
            act_seed_given = true;
          },
          "Override master seed (u64)")
      ->expected(1);
  active->add_option("--jobs", act_jobs, "Worker count (outputs identical)");
  active->add_option("--steps", act_steps, "Override step count T");
  active->add_option("--strategy", act_strategies,
                     "Override strategies (repeatable)");
  active->add_option("--budget", act_budget, "Override query budget");
  active->add_option("--committee-size", act_committee,
                     "Override committee size K");

  // eval
  auto* eval = app.add_subcommand(
      "eval", "Evaluate learned-structure quality for a dataset");
  std::string ev_net, ev_data;
  std::uint64_t ev_seed = 0;
  int ev_boot = 50, ev_pkl_trials = 20;
  bn::ScoreConfig ev_score;
  bn::SearchConfig ev_search;
  eval->add_option("--net", ev_net, "True network file")->required();
  eval->add_option("--data", ev_data, "Dataset CSV")->required();
  eval->add_option("--seed", ev_seed, "Seed (u64)")->required();
  eval->add_option("--bootstrap-count", ev_boot, "Bootstrap re-learnings B");
  eval->add_option("--predictive-trials", ev_pkl_trials,
                   "Sampled interventions per size");
  eval->add_option("--ess", ev_score.equivalent_sample_size,
                   "Equivalent sample size");
  eval->add_option("--max-parents", ev_score.max_parents, "Parent cap");
  eval->add_option("--restarts", ev_search.restarts, "Search restarts");

  // report
  auto* report = app.add_subcommand(
      "report", "Rebuild summary.csv from per-trial step files");
  std::string rep_dir;
  report->add_option("--out", rep_dir, "Experiment output directory")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      bn::Rng rng(gen_seed);
      bn::save_network(bn::random_network(gen_vars, gen_max_arity, gen_density,
                                          gen_max_parents, gen_alpha, rng),
                       gen_out);
    } else if (*sample) {
      const auto net = bn::load_network(sample_net);
      const auto q = parse_query_string(net, sample_do);
      bn::Rng rng(sample_seed);
      bn::Dataset ds(net.variables());
      for (int i = 0; i < sample_n; ++i)
        ds.append(bn::oracle_respond(net, q, rng));
      bn::save_dataset(ds, sample_out);
    } else if (*learn) {
      const auto net = bn::load_network(learn_net);
      const auto ds = bn::load_dataset(learn_data, net.variables());
      bn::Rng rng(learn_seed);
      bn::save_network(bn::local_search(ds, learn_score, learn_search, rng),
                       learn_out);
    } else if (*committee) {
      const auto net = bn::load_network(com_net);
      const auto ds = bn::load_dataset(com_data, net.variables());
      bn::save_committee(
          bn::build_committee(ds, com_size, com_score, com_search, com_seed),
          com_out);
    } else if (*measures) {
      const auto c = bn::load_committee(mea_committee);
      const auto q = parse_query_string(c.member(0), mea_query);
      const auto method = method_from_flags(mea_method, mea_samples);
      std::cout << "measure,value,std_error,method\n";
      print_estimate("js", bn::js(c, q, method, bn::derive_seed(mea_seed, "js")));
      print_estimate("bjs",
                     bn::bjs(c, q, method, bn::derive_seed(mea_seed, "bjs")));
      print_estimate("kl2",
                     bn::kl2(c, q, method, bn::derive_seed(mea_seed, "kl2")));
    } else if (*score) {
      const auto c = bn::load_committee(sq_committee);
      const auto q = parse_query_string(c.member(0), sq_query);
      bn::QueryConfig qcfg;
      qcfg.measure = bn::parse_measure(sq_measure);
      const auto est = bn::score_query(
          c, q, qcfg, method_from_flags(sq_method, sq_samples), sq_seed);
      std::cout << "measure,value,std_error,method\n";
      print_estimate(sq_measure, est);
    } else if (*propose) {
      const auto c = bn::load_committee(pq_committee);
      bn::QueryConfig qcfg;
      qcfg.measure = bn::parse_measure(pq_measure);
      if (pq_budget >= 0) qcfg.budget = pq_budget;
      qcfg.threshold_abs = pq_threshold_abs;
      qcfg.threshold_z = pq_threshold_z;
      const auto result = bn::greedy_query(
          c, qcfg, method_from_flags(pq_method, pq_samples), pq_seed);
      std::string text;
      for (const auto& [var, state] : result.query.assignments()) {
        if (!text.empty()) text += ';';
        text += c.schema()[var].name + "=" + std::to_string(state);
      }
      std::cout << "query,measure,value,std_error,method\n";
      std::cout << text << "," << pq_measure << ","
                << bn::format_double(result.score.value) << ","
                << bn::format_double(result.score.std_error) << ","
                << result.score.method << "\n";
    } else if (*active) {
      auto cfg = bn::load_experiment_config(act_config);
      if (!act_out.empty()) cfg.out_dir = act_out;
      if (act_seed_given) cfg.seed = act_seed;
      if (act_jobs > 0) cfg.jobs = act_jobs;
      if (act_steps >= 0) cfg.loop.steps = act_steps;
      if (act_budget >= 0) cfg.query.budget = act_budget;
      if (act_committee > 0) cfg.loop.committee_size = act_committee;
      if (!act_strategies.empty()) {
        cfg.strategies.clear();
        for (const auto& s : act_strategies)
          cfg.strategies.push_back(bn::Strategy::parse(s));
      }
      const auto result = bn::run_experiment(cfg);
      for (const auto& file : result.files)
        std::cout << (result.out_dir / file).string() << "\n";
    } else if (*eval) {
      const auto truth = bn::load_network(ev_net);
      const auto ds = bn::load_dataset(ev_data, truth.variables());
      std::vector<bn::Dag> boot;
      for (int b = 0; b < ev_boot; ++b) {
        auto resample_rng =
            bn::stream(ev_seed, "boot=" + std::to_string(b) + "/resample");
        auto search_rng =
            bn::stream(ev_seed, "boot=" + std::to_string(b) + "/search");
        auto sample = bn::bootstrap_resample(ds, resample_rng);
        boot.push_back(
            bn::search_structure(sample, ev_score, ev_search, search_rng));
      }
      auto fit_rng = bn::stream(ev_seed, "fit");
      const auto learned = bn::local_search(ds, ev_score, ev_search, fit_rng);
      std::cout << "edge_error,edge_entropy,pkl0,pkl1,pkl5,pkl10\n";
      std::cout << bn::format_double(bn::edge_error(boot, truth.dag())) << ","
                << bn::format_double(bn::edge_entropy(boot));
      for (int size : bn::kPredictiveSizes) {
        auto pkl_rng = bn::stream(ev_seed, "pkl=" + std::to_string(size));
        std::cout << "," << bn::format_double(bn::predictive_accuracy(
                                truth, learned, size, ev_pkl_trials, pkl_rng));
      }
      std::cout << "\n";
    } else if (*report) {
      const auto summary = bn::summary_from_step_files(rep_dir);
      std::ofstream out(std::filesystem::path(rep_dir) / "summary.csv",
                        std::ios::binary);
      if (!out) throw bn::error("cannot write summary.csv");
      out << summary;
    }
  } catch (const bn::parse_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
