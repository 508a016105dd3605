#include "bnactive/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace bnactive {

using nlohmann::json;

std::string format_double(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

namespace {

std::string file_stem_for(const std::string& strategy) {
  std::string out = strategy;
  std::replace(out.begin(), out.end(), ':', '_');
  return out;
}

std::string query_string(const Intervention& q,
                         const std::vector<Variable>& schema) {
  std::string out;
  for (const auto& [var, state] : q.assignments()) {
    if (!out.empty()) out += ';';
    out += schema[var].name + "=" + std::to_string(state);
  }
  return out;
}

void require_keys(const json& doc, std::initializer_list<const char*> known) {
  for (const auto& [key, value] : doc.items()) {
    if (!key.empty() && key[0] == '_') continue;  // manifest extras
    if (std::find_if(known.begin(), known.end(), [&](const char* k) {
          return key == k;
        }) == known.end())
      throw parse_error("unknown config key '" + key + "'");
  }
}

}  // namespace

ExperimentConfig parse_experiment_config(
    const std::string& json_text, const std::filesystem::path& base_dir) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw parse_error(std::string("malformed config: ") + e.what());
  }
  if (!doc.is_object()) throw parse_error("config must be a JSON object");
  require_keys(doc,
               {"true_network", "seed", "trials", "steps", "strategies",
                "initial_observational", "committee_size", "rebuild_every",
                "eval_every", "bootstrap_eval_count", "predictive_trials",
                "score", "search", "query", "method", "method_samples",
                "out_dir", "jobs"});

  ExperimentConfig cfg;
  try {
    if (!doc.contains("true_network"))
      throw parse_error("config requires 'true_network'");
    cfg.true_network = base_dir / doc["true_network"].get<std::string>();

    if (doc.contains("seed")) {
      cfg.seed = doc["seed"].get<std::uint64_t>();
      cfg.seed_set = true;
    }
    if (doc.contains("trials")) cfg.trials = doc["trials"].get<int>();
    if (doc.contains("steps")) cfg.loop.steps = doc["steps"].get<int>();
    if (doc.contains("strategies"))
      for (const auto& s : doc["strategies"])
        cfg.strategies.push_back(Strategy::parse(s.get<std::string>()));
    if (doc.contains("initial_observational"))
      cfg.loop.initial_observational = doc["initial_observational"].get<int>();
    if (doc.contains("committee_size"))
      cfg.loop.committee_size = doc["committee_size"].get<int>();
    if (doc.contains("rebuild_every"))
      cfg.loop.rebuild_every = doc["rebuild_every"].get<int>();
    if (doc.contains("eval_every"))
      cfg.loop.eval_every = doc["eval_every"].get<int>();
    if (doc.contains("bootstrap_eval_count"))
      cfg.loop.bootstrap_eval_count = doc["bootstrap_eval_count"].get<int>();
    if (doc.contains("predictive_trials"))
      cfg.loop.predictive_trials = doc["predictive_trials"].get<int>();

    if (doc.contains("score")) {
      const auto& s = doc["score"];
      require_keys(s, {"equivalent_sample_size", "max_parents"});
      if (s.contains("equivalent_sample_size"))
        cfg.score.equivalent_sample_size =
            s["equivalent_sample_size"].get<double>();
      if (s.contains("max_parents"))
        cfg.score.max_parents = s["max_parents"].get<int>();
    }
    if (doc.contains("search")) {
      const auto& s = doc["search"];
      require_keys(s, {"restarts", "max_flips"});
      if (s.contains("restarts")) cfg.search.restarts = s["restarts"].get<int>();
      if (s.contains("max_flips"))
        cfg.search.max_flips = s["max_flips"].get<int>();
    }
    if (doc.contains("query")) {
      const auto& s = doc["query"];
      require_keys(s,
                   {"budget", "threshold_abs", "threshold_z", "candidate_vars"});
      if (s.contains("budget") && !s["budget"].is_null())
        cfg.query.budget = s["budget"].get<int>();
      if (s.contains("threshold_abs"))
        cfg.query.threshold_abs = s["threshold_abs"].get<double>();
      if (s.contains("threshold_z"))
        cfg.query.threshold_z = s["threshold_z"].get<double>();
      if (s.contains("candidate_vars"))
        cfg.candidate_vars = s["candidate_vars"].get<std::vector<std::string>>();
    }
    if (doc.contains("method")) cfg.method = doc["method"].get<std::string>();
    if (doc.contains("method_samples"))
      cfg.method_samples = doc["method_samples"].get<int>();
    if (doc.contains("out_dir"))
      cfg.out_dir = base_dir / doc["out_dir"].get<std::string>();
    if (doc.contains("jobs")) cfg.jobs = doc["jobs"].get<int>();
  } catch (const json::exception& e) {
    throw parse_error(std::string("malformed config value: ") + e.what());
  }

  if (!cfg.seed_set) throw parse_error("config requires an explicit 'seed'");
  if (cfg.strategies.empty())
    throw parse_error("config requires at least one strategy");
  if (cfg.trials < 1) throw parse_error("'trials' must be >= 1");
  if (cfg.method != "auto" && cfg.method != "exact" && cfg.method != "sampled")
    throw parse_error("'method' must be auto, exact or sampled");
  return cfg;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw parse_error("cannot open config " + file.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_experiment_config(buf.str(), file.parent_path());
}

Method resolve_method(const ExperimentConfig& cfg, const BayesNet& truth) {
  if (cfg.method == "exact") return Method::family_exact();
  if (cfg.method == "sampled") return Method::monte_carlo(cfg.method_samples);
  return truth.joint_state_count() <= kDefaultEnumBudget
             ? Method::family_exact()
             : Method::monte_carlo(cfg.method_samples);
}

std::string step_csv_header() {
  return "step,strategy,query,measure,score,score_se,edge_error,edge_entropy,"
         "pkl0,pkl1,pkl5,pkl10\n";
}

std::string step_csv_row(const StepReport& report, const std::string& strategy,
                         const std::vector<Variable>& schema) {
  std::string row = std::to_string(report.step) + "," + strategy + "," +
                    query_string(report.query, schema) + "," + report.measure +
                    "," + format_double(report.score) + "," +
                    format_double(report.score_se);
  if (report.evaluated) {
    row += "," + format_double(report.edge_error) + "," +
           format_double(report.edge_entropy);
    for (double pkl : report.predictive_kl) row += "," + format_double(pkl);
  } else {
    row += ",,,,,,";
  }
  row += '\n';
  return row;
}

namespace {

struct TrialSummary {
  std::string strategy;
  int trial = 0;
  bool has_eval = false;
  std::array<double, 6> metrics{};  // edge_error, edge_entropy, pkl0..pkl10
  double mean_query_size = 0.0;
};

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  for (char c : line) {
    if (c == ',') {
      out.push_back(field);
      field.clear();
    } else if (c != '\r') {
      field += c;
    }
  }
  out.push_back(field);
  return out;
}

int query_size(const std::string& query) {
  if (query.empty()) return 0;
  return 1 + static_cast<int>(std::count(query.begin(), query.end(), ';'));
}

TrialSummary summarize_step_file(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw error("cannot open " + file.string());
  std::string line;
  if (!std::getline(in, line) || line + "\n" != step_csv_header())
    throw parse_error("unexpected step file header in " + file.string());

  const std::string name = file.filename().string();
  const auto trial_pos = name.rfind("_trial");
  if (trial_pos == std::string::npos)
    throw parse_error("step file name lacks a trial suffix: " + name);
  TrialSummary ts;
  ts.trial = std::stoi(name.substr(trial_pos + 6));

  long long steps = 0, query_vars = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto fields = split_fields(line);
    if (fields.size() != 12)
      throw parse_error("bad step row in " + file.string());
    ts.strategy = fields[1];
    if (std::stoi(fields[0]) >= 1) {
      ++steps;
      query_vars += query_size(fields[2]);
    }
    if (!fields[6].empty()) {
      ts.has_eval = true;
      for (int i = 0; i < 6; ++i) ts.metrics[i] = std::stod(fields[6 + i]);
    }
  }
  ts.mean_query_size =
      steps > 0 ? static_cast<double>(query_vars) / steps : 0.0;
  return ts;
}

constexpr const char* kSummaryHeader =
    "strategy,trial,edge_error,edge_entropy,pkl0,pkl1,pkl5,pkl10,"
    "mean_query_size\n";

std::string summary_row(const std::string& strategy, const std::string& trial,
                        std::span<const double> values) {
  std::string row = strategy + "," + trial;
  for (double v : values) row += "," + format_double(v);
  row += '\n';
  return row;
}

}  // namespace

std::string summary_from_step_files(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    const auto name = entry.path().filename().string();
    if (name.starts_with("steps_") && name.ends_with(".csv"))
      files.push_back(entry.path());
  }
  if (files.empty()) throw error("no steps_*.csv files in " + dir.string());

  std::map<std::string, std::map<int, TrialSummary>> by_strategy;
  for (const auto& file : files) {
    TrialSummary ts = summarize_step_file(file);
    by_strategy[ts.strategy][ts.trial] = ts;
  }

  std::string out = kSummaryHeader;
  for (const auto& [strategy, trials] : by_strategy) {
    std::array<double, 7> sum{}, sumsq{};
    int count = 0;
    for (const auto& [trial, ts] : trials) {
      std::array<double, 7> values{};
      for (int i = 0; i < 6; ++i) values[i] = ts.metrics[i];
      values[6] = ts.mean_query_size;
      out += summary_row(strategy, std::to_string(trial), values);
      for (int i = 0; i < 7; ++i) {
        sum[i] += values[i];
        sumsq[i] += values[i] * values[i];
      }
      ++count;
    }
    std::array<double, 7> mean{}, std_dev{};
    for (int i = 0; i < 7; ++i) {
      mean[i] = sum[i] / count;
      double var = count > 1
                       ? std::max(0.0, (sumsq[i] - count * mean[i] * mean[i]) /
                                           (count - 1))
                       : 0.0;
      std_dev[i] = std::sqrt(var);
    }
    out += summary_row(strategy, "mean", mean);
    out += summary_row(strategy, "std", std_dev);
  }
  return out;
}

namespace {

void write_text(const std::filesystem::path& file, const std::string& text) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw error("cannot write " + file.string());
  out << text;
}

json config_to_json(const ExperimentConfig& cfg) {
  json doc;
  doc["true_network"] = cfg.true_network.string();
  doc["seed"] = cfg.seed;
  doc["trials"] = cfg.trials;
  doc["steps"] = cfg.loop.steps;
  doc["strategies"] = json::array();
  for (const auto& s : cfg.strategies) doc["strategies"].push_back(s.name());
  doc["initial_observational"] = cfg.loop.initial_observational;
  doc["committee_size"] = cfg.loop.committee_size;
  doc["rebuild_every"] = cfg.loop.rebuild_every;
  doc["eval_every"] = cfg.loop.eval_every;
  doc["bootstrap_eval_count"] = cfg.loop.bootstrap_eval_count;
  doc["predictive_trials"] = cfg.loop.predictive_trials;
  doc["score"] = {{"equivalent_sample_size", cfg.score.equivalent_sample_size},
                  {"max_parents", cfg.score.max_parents}};
  doc["search"] = {{"restarts", cfg.search.restarts},
                   {"max_flips", cfg.search.max_flips}};
  doc["query"] = {{"threshold_abs", cfg.query.threshold_abs},
                  {"threshold_z", cfg.query.threshold_z}};
  if (cfg.query.budget == std::numeric_limits<int>::max())
    doc["query"]["budget"] = nullptr;
  else
    doc["query"]["budget"] = cfg.query.budget;
  if (!cfg.candidate_vars.empty())
    doc["query"]["candidate_vars"] = cfg.candidate_vars;
  doc["method"] = cfg.method;
  doc["method_samples"] = cfg.method_samples;
  doc["out_dir"] = cfg.out_dir.string();
  doc["jobs"] = cfg.jobs;
  return doc;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  const BayesNet truth = load_network(cfg.true_network);
  const Method method = resolve_method(cfg, truth);

  QueryConfig qcfg = cfg.query;
  for (const auto& name : cfg.candidate_vars) {
    int var = truth.find_variable(name);
    if (var < 0) throw parse_error("unknown candidate variable '" + name + "'");
    qcfg.candidate_vars.push_back(var);
  }
  std::filesystem::create_directories(cfg.out_dir);

  struct Task {
    Strategy strategy;
    int trial;
    std::string file;
    std::string content;
  };
  std::vector<Task> tasks;
  for (const auto& strategy : cfg.strategies)
    for (int t = 0; t < cfg.trials; ++t)
      tasks.push_back({strategy, t,
                       "steps_" + file_stem_for(strategy.name()) + "_trial" +
                           std::to_string(t) + ".csv",
                       {}});

  auto run_task = [&](Task& task) {
    const auto seed = derive_seed(
        cfg.seed, "strategy=" + task.strategy.name() +
                      "/trial=" + std::to_string(task.trial));
    auto reports = run_active(truth, task.strategy, cfg.loop, cfg.score,
                              cfg.search, qcfg, method, seed);
    std::string csv = step_csv_header();
    for (const auto& report : reports)
      csv += step_csv_row(report, task.strategy.name(), truth.variables());
    task.content = std::move(csv);
  };

  const int workers = std::max(1, cfg.jobs);
  if (workers == 1) {
    for (auto& task : tasks) run_task(task);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < tasks.size();
             i = next.fetch_add(1))
          run_task(tasks[i]);
      });
    for (auto& th : pool) th.join();
  }

  ExperimentResult result;
  result.out_dir = cfg.out_dir;
  for (const auto& task : tasks) {
    write_text(cfg.out_dir / task.file, task.content);
    result.files.push_back(task.file);
  }

  const std::string summary = summary_from_step_files(cfg.out_dir);
  write_text(cfg.out_dir / "summary.csv", summary);
  result.files.push_back("summary.csv");

  json manifest = config_to_json(cfg);
  manifest["_manifest"] = {{"tool", "bnactive"}, {"files", result.files}};
  write_text(cfg.out_dir / "manifest.json", manifest.dump(2) + "\n");
  result.files.push_back("manifest.json");
  return result;
}

}  // namespace bnactive
