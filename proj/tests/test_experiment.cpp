#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "bnactive/experiment.hpp"
#include "bnactive/generate.hpp"
#include "test_support.hpp"

using namespace bnactive;
using namespace bnactive::testing;

namespace {

std::filesystem::path fresh_dir(const std::string& tag) {
  auto dir = std::filesystem::temp_directory_path() /
             ("bnactive_test_" + tag + "_" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  REQUIRE(in);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write(const std::filesystem::path& file, const std::string& text) {
  std::ofstream out(file, std::ios::binary);
  out << text;
}

// small experiment over a 4-node net
std::filesystem::path small_config(const std::filesystem::path& dir,
                                   const std::string& strategies,
                                   int steps, int trials, int jobs = 1) {
  Rng rng(77);
  save_network(random_network(4, 2, 0.5, 3, 0.5, rng), dir / "truth.json");
  write(dir / "config.json", R"({
    "true_network": "truth.json",
    "seed": 9001,
    "trials": )" + std::to_string(trials) + R"(,
    "steps": )" + std::to_string(steps) + R"(,
    "strategies": [)" + strategies + R"(],
    "initial_observational": 12,
    "committee_size": 2,
    "bootstrap_eval_count": 6,
    "predictive_trials": 3,
    "search": {"restarts": 2, "max_flips": 100},
    "out_dir": "out",
    "jobs": )" + std::to_string(jobs) + R"(
  })");
  return dir / "config.json";
}

int count_rows_with_prefix(const std::string& csv, const std::string& prefix) {
  int count = 0;
  std::istringstream in(csv);
  std::string line;
  while (std::getline(in, line))
    if (line.rfind(prefix, 0) == 0) ++count;
  return count;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("config parsing validates keys and values") {
  CHECK_THROWS_AS(parse_experiment_config("{nope", "."), parse_error);
  CHECK_THROWS_AS(parse_experiment_config(R"({"true_network": "x.json"})", "."),
                  parse_error);  // missing seed
  CHECK_THROWS_AS(parse_experiment_config(
                      R"({"true_network": "x.json", "seed": 1,
                          "strategies": ["passive"], "typo": 3})",
                      "."),
                  parse_error);
  auto cfg = parse_experiment_config(
      R"({"true_network": "x.json", "seed": 1, "strategies": ["passive"],
          "query": {"budget": null}})",
      "base");
  CHECK(cfg.query.budget == std::numeric_limits<int>::max());
  CHECK(cfg.true_network == std::filesystem::path("base") / "x.json");
}

TEST_CASE("a zero-step run summarizes one evaluation row per trial") {
  auto dir = fresh_dir("t0");
  auto cfg = load_experiment_config(small_config(dir, "\"passive\"", 0, 2));
  auto result = run_experiment(cfg);
  auto summary = slurp(result.out_dir / "summary.csv");
  CHECK(count_rows_with_prefix(summary, "passive,0,") == 1);
  CHECK(count_rows_with_prefix(summary, "passive,1,") == 1);
  CHECK(count_rows_with_prefix(summary, "passive,mean,") == 1);
  CHECK(count_rows_with_prefix(summary, "passive,std,") == 1);
  std::filesystem::remove_all(dir);
}

TEST_CASE("identical seeds produce byte-identical outputs") {
  auto dir = fresh_dir("det");
  auto cfg = load_experiment_config(
      small_config(dir, "\"passive\", \"active:kl2\"", 3, 2));
  cfg.out_dir = dir / "a";
  auto first = run_experiment(cfg);
  cfg.out_dir = dir / "b";
  auto second = run_experiment(cfg);
  for (const auto& file : first.files) {
    if (file == "manifest.json") continue;  // embeds the out_dir path
    CHECK(slurp(dir / "a" / file) == slurp(dir / "b" / file));
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("worker count does not change any output byte") {
  auto dir = fresh_dir("jobs");
  auto cfg = load_experiment_config(
      small_config(dir, "\"passive\", \"random:2\"", 3, 2));
  cfg.out_dir = dir / "serial";
  cfg.jobs = 1;
  auto serial = run_experiment(cfg);
  cfg.out_dir = dir / "parallel";
  cfg.jobs = 4;
  run_experiment(cfg);
  for (const auto& file : serial.files) {
    if (file == "manifest.json") continue;
    CHECK(slurp(dir / "serial" / file) == slurp(dir / "parallel" / file));
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("the manifest reruns to identical outputs") {
  auto dir = fresh_dir("manifest");
  auto cfg = load_experiment_config(small_config(dir, "\"random:1\"", 2, 2));
  auto first = run_experiment(cfg);
  auto steps_before = slurp(first.out_dir / first.files[0]);
  auto summary_before = slurp(first.out_dir / "summary.csv");

  auto rerun_cfg = load_experiment_config(first.out_dir / "manifest.json");
  auto rerun = run_experiment(rerun_cfg);
  CHECK(slurp(rerun.out_dir / rerun.files[0]) == steps_before);
  CHECK(slurp(rerun.out_dir / "summary.csv") == summary_before);
  std::filesystem::remove_all(dir);
}

TEST_CASE("adding a strategy never disturbs another strategy's trajectory") {
  auto dir = fresh_dir("iso");
  auto cfg = load_experiment_config(small_config(dir, "\"passive\"", 3, 1));
  cfg.out_dir = dir / "alone";
  run_experiment(cfg);

  auto both = load_experiment_config(
      small_config(dir, "\"passive\", \"active:js\"", 3, 1));
  both.out_dir = dir / "both";
  run_experiment(both);

  CHECK(slurp(dir / "alone" / "steps_passive_trial0.csv") ==
        slurp(dir / "both" / "steps_passive_trial0.csv"));
  std::filesystem::remove_all(dir);
}

TEST_CASE("the std summary row is the sample standard deviation") {
  auto dir = fresh_dir("std");
  auto cfg = load_experiment_config(small_config(dir, "\"random:1\"", 2, 3));
  auto result = run_experiment(cfg);
  auto summary = slurp(result.out_dir / "summary.csv");

  std::istringstream in(summary);
  std::string line;
  std::getline(in, line);  // header
  std::vector<double> edge_errors;
  double mean_row = 0.0, std_row = 0.0;
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    std::string strategy, trial, value;
    std::getline(fields, strategy, ',');
    std::getline(fields, trial, ',');
    std::getline(fields, value, ',');
    if (trial == "mean")
      mean_row = std::stod(value);
    else if (trial == "std")
      std_row = std::stod(value);
    else
      edge_errors.push_back(std::stod(value));
  }
  REQUIRE(edge_errors.size() == 3);
  double mean = (edge_errors[0] + edge_errors[1] + edge_errors[2]) / 3.0;
  double ss = 0.0;
  for (double v : edge_errors) ss += (v - mean) * (v - mean);
  CHECK(mean_row == doctest::Approx(mean).epsilon(1e-12));
  CHECK(std_row == doctest::Approx(std::sqrt(ss / 2)).epsilon(1e-12));
  std::filesystem::remove_all(dir);
}

TEST_CASE("candidate_vars restricts the variables active queries may touch") {
  auto dir = fresh_dir("cand");
  Rng rng(77);
  save_network(random_network(4, 2, 0.5, 3, 0.5, rng), dir / "truth.json");
  write(dir / "config.json", R"({
    "true_network": "truth.json",
    "seed": 5,
    "trials": 1,
    "steps": 4,
    "strategies": ["active:kl2"],
    "initial_observational": 12,
    "bootstrap_eval_count": 4,
    "predictive_trials": 2,
    "query": {"candidate_vars": ["X0", "X2"]},
    "out_dir": "out"
  })");
  auto result = run_experiment(load_experiment_config(dir / "config.json"));
  std::istringstream in(slurp(result.out_dir / result.files[0]));
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    auto query = line.substr(line.find(',', line.find(',') + 1) + 1);
    query = query.substr(0, query.find(','));
    CHECK(query.find("X1") == std::string::npos);
    CHECK(query.find("X3") == std::string::npos);
  }

  write(dir / "bad.json", R"({
    "true_network": "truth.json", "seed": 5, "strategies": ["passive"],
    "query": {"candidate_vars": ["nope"]}, "out_dir": "out"
  })");
  CHECK_THROWS_AS(run_experiment(load_experiment_config(dir / "bad.json")),
                  parse_error);
  std::filesystem::remove_all(dir);
}

TEST_CASE("report rebuilds the summary byte-identically") {
  auto dir = fresh_dir("report");
  auto cfg = load_experiment_config(
      small_config(dir, "\"passive\", \"random:2\"", 2, 2));
  auto result = run_experiment(cfg);
  auto original = slurp(result.out_dir / "summary.csv");
  CHECK(summary_from_step_files(result.out_dir) == original);
  std::filesystem::remove_all(dir);
}

#ifdef BNACTIVE_CLI
TEST_CASE("the command line drives the whole pipeline") {
  auto dir = fresh_dir("clip");
  const std::string cli = BNACTIVE_CLI;
  auto run = [&](const std::string& args) {
    return std::system((cli + " " + args + " > /dev/null 2>&1").c_str());
  };

  const std::string net = (dir / "net.json").string();
  const std::string data = (dir / "data.csv").string();
  CHECK(run("gen-net --vars 4 --max-arity 3 --density 0.4 --seed 5 --out " +
            net) == 0);
  CHECK(run("sample --net " + net + " --n 60 --seed 6 --out " + data) == 0);
  CHECK(run("sample --net " + net + " --n 10 --seed 6 --do X1=0 --out " +
            (dir / "exp.csv").string()) == 0);
  CHECK(run("learn --net " + net + " --data " + data + " --seed 7 --out " +
            (dir / "learned.json").string()) == 0);
  CHECK(run("committee --net " + net + " --data " + data +
            " --committee-size 2 --seed 8 --out " + (dir / "com").string()) == 0);
  const std::string manifest = (dir / "com" / "committee.json").string();
  CHECK(run("measures --committee " + manifest + " --query X0=1") == 0);
  CHECK(run("measures --committee " + manifest + " --method sampled"
            " --samples 500 --seed 2") == 0);
  CHECK(run("score-query --committee " + manifest + " --measure js") == 0);
  CHECK(run("propose-query --committee " + manifest + " --measure kl2") == 0);
  CHECK(run("eval --net " + net + " --data " + data +
            " --seed 9 --bootstrap-count 5 --predictive-trials 2") == 0);

  small_config(dir, "\"passive\"", 1, 1);
  CHECK(run("active --config " + (dir / "config.json").string()) == 0);
  CHECK(run("report --out " + (dir / "out").string()) == 0);
  CHECK(run("active --config " + (dir / "config.json").string() +
            " --out " + (dir / "out2").string() +
            " --strategy random:1 --budget 1 --committee-size 2 --steps 2"
            " --seed 77 --jobs 2") == 0);
  CHECK(std::filesystem::exists(dir / "out2" / "steps_random_1_trial0.csv"));

  // exit codes: 2 for config problems, nonzero for runtime failures
  write(dir / "bad.json", "{broken");
  CHECK(WEXITSTATUS(run("active --config " + (dir / "bad.json").string())) ==
        2);
  CHECK(WEXITSTATUS(run("learn --net missing.json --data " + data +
                        " --seed 1 --out x.json")) == 1);
  std::filesystem::remove_all(dir);
}
#endif

}  // TEST_SUITE
