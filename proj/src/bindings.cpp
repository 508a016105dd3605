#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "bnactive/experiment.hpp"
#include "bnactive/generate.hpp"

namespace py = pybind11;
using namespace bnactive;

namespace {

Intervention intervention_from_dict(const std::map<int, int>& assignments) {
  Intervention q;
  for (const auto& [var, state] : assignments) q.set(var, state);
  return q;
}

Method method_from_name(const std::string& name, int samples) {
  if (name == "exact") return Method::family_exact();
  if (name == "exact-enum") return Method::exact_enumeration();
  if (name == "sampled") return Method::monte_carlo(samples);
  throw error("unknown method '" + name + "'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Committee-based active learning for discrete Bayesian networks";

  py::register_exception<error>(m, "BnError", PyExc_RuntimeError);

  py::class_<Variable>(m, "Variable")
      .def(py::init([](std::string name, std::vector<std::string> states) {
             return Variable{std::move(name), std::move(states)};
           }),
           py::arg("name"), py::arg("states"))
      .def_readonly("name", &Variable::name)
      .def_readonly("states", &Variable::states)
      .def_property_readonly("arity", &Variable::arity);

  py::class_<Dag>(m, "Dag")
      .def(py::init<int>(), py::arg("variable_count"))
      .def("add_edge", &Dag::add_edge, py::arg("parent"), py::arg("child"))
      .def("remove_edge", &Dag::remove_edge)
      .def("has_edge", &Dag::has_edge)
      .def("parents", &Dag::parents, py::arg("child"))
      .def("edge_count", &Dag::edge_count)
      .def("topological_order", &Dag::topological_order)
      .def("__len__", &Dag::size);

  py::class_<Intervention>(m, "Intervention")
      .def(py::init<>())
      .def(py::init(&intervention_from_dict), py::arg("assignments"))
      .def("set", &Intervention::set, py::arg("var"), py::arg("state"))
      .def("intervenes", &Intervention::intervenes)
      .def_property_readonly("assignments", &Intervention::assignments)
      .def("__len__", &Intervention::size);

  py::class_<Cpt>(m, "Cpt")
      .def_property_readonly("config_count", &Cpt::config_count)
      .def("row", [](const Cpt& c, int config) {
        auto r = c.row(config);
        return std::vector<double>(r.begin(), r.end());
      });

  py::class_<BayesNet>(m, "BayesNet")
      .def(py::init<std::vector<Variable>, Dag, std::vector<Cpt>>())
      .def_property_readonly("variables", &BayesNet::variables)
      .def_property_readonly("dag", &BayesNet::dag)
      .def("cpt", &BayesNet::cpt, py::return_value_policy::reference_internal)
      .def("find_variable", &BayesNet::find_variable)
      .def("__len__", &BayesNet::size);

  py::class_<Record>(m, "Record")
      .def_readonly("values", &Record::values)
      .def_readonly("intervened", &Record::intervened);

  py::class_<Dataset>(m, "Dataset")
      .def(py::init<std::vector<Variable>>(), py::arg("schema"))
      .def_property_readonly("schema", &Dataset::schema)
      .def("append", &Dataset::append)
      .def("__len__", &Dataset::size)
      .def("__getitem__",
           [](const Dataset& ds, std::size_t i) {
             if (i >= ds.size()) throw py::index_error();
             return ds[i];
           });

  py::class_<Committee>(m, "Committee")
      .def(py::init<std::vector<BayesNet>, std::vector<double>>(),
           py::arg("members"), py::arg("weights"))
      .def("member", &Committee::member,
           py::return_value_policy::reference_internal)
      .def_property_readonly("weights", &Committee::weights)
      .def("__len__", &Committee::size);

  py::class_<DivergenceEstimate>(m, "DivergenceEstimate")
      .def_readonly("value", &DivergenceEstimate::value)
      .def_readonly("std_error", &DivergenceEstimate::std_error)
      .def_readonly("method", &DivergenceEstimate::method)
      .def_readonly("raw_value", &DivergenceEstimate::raw_value)
      .def("__repr__", [](const DivergenceEstimate& e) {
        return "DivergenceEstimate(value=" + format_double(e.value) +
               ", std_error=" + format_double(e.std_error) + ", method='" +
               e.method + "')";
      });

  py::class_<ScoreConfig>(m, "ScoreConfig")
      .def(py::init<>())
      .def_readwrite("equivalent_sample_size", &ScoreConfig::equivalent_sample_size)
      .def_readwrite("max_parents", &ScoreConfig::max_parents);

  py::class_<SearchConfig>(m, "SearchConfig")
      .def(py::init<>())
      .def_readwrite("restarts", &SearchConfig::restarts)
      .def_readwrite("max_flips", &SearchConfig::max_flips);

  // bn-core
  m.def("mutilate", &mutilate, py::arg("net"), py::arg("q"));
  m.def(
      "joint_log_prob",
      [](const BayesNet& net, const std::vector<int>& x, const Intervention& q) {
        return joint_log_prob(net, x, q);
      },
      py::arg("net"), py::arg("x"), py::arg("q") = Intervention{});
  m.def(
      "exact_marginal",
      [](const BayesNet& net, const std::vector<int>& targets,
         const Intervention& q, long long budget) {
        auto table = exact_marginal(net, targets, q, budget);
        return py::make_tuple(table.vars, table.arities, table.p);
      },
      py::arg("net"), py::arg("targets"), py::arg("q") = Intervention{},
      py::arg("budget") = kDefaultEnumBudget);
  m.def(
      "forward_sample",
      [](const BayesNet& net, const Intervention& q, int n, std::uint64_t seed) {
        Rng rng(seed);
        return forward_sample(net, q, n, rng);
      },
      py::arg("net"), py::arg("q"), py::arg("n"), py::arg("seed"));
  m.def("model_entropy", &model_entropy, py::arg("net"),
        py::arg("q") = Intervention{}, py::arg("budget") = kDefaultEnumBudget);

  // data-store
  m.def("parse_network", &parse_network);
  m.def("serialize_network", &serialize_network);
  m.def("load_network", &load_network);
  m.def("save_network", &save_network);
  m.def("parse_dataset", &parse_dataset, py::arg("csv"), py::arg("schema"));
  m.def("serialize_dataset", &serialize_dataset);
  m.def(
      "bootstrap_resample",
      [](const Dataset& ds, std::uint64_t seed) {
        Rng rng(seed);
        return bootstrap_resample(ds, rng);
      },
      py::arg("ds"), py::arg("seed"));

  // learning
  m.def(
      "family_log_score",
      [](const Dataset& ds, int child, const std::vector<int>& parents,
         const ScoreConfig& cfg) {
        return family_log_score(ds, child, parents, cfg);
      },
      py::arg("ds"), py::arg("child"), py::arg("parents"),
      py::arg("cfg") = ScoreConfig{});
  m.def("fit_parameters", &fit_parameters, py::arg("dag"), py::arg("ds"),
        py::arg("cfg") = ScoreConfig{});
  m.def(
      "local_search",
      [](const Dataset& ds, const ScoreConfig& cfg, const SearchConfig& scfg,
         std::uint64_t seed) {
        Rng rng(seed);
        return local_search(ds, cfg, scfg, rng);
      },
      py::arg("ds"), py::arg("cfg") = ScoreConfig{},
      py::arg("scfg") = SearchConfig{}, py::arg("seed") = 0);

  // committee
  m.def("build_committee", &build_committee, py::arg("ds"),
        py::arg("committee_size"), py::arg("cfg") = ScoreConfig{},
        py::arg("scfg") = SearchConfig{}, py::arg("seed") = 0);
  m.def("save_committee", &save_committee);
  m.def("load_committee", &load_committee);

  // disagreement
  m.def(
      "kl_between",
      [](const BayesNet& m1, const BayesNet& m2, const Intervention& q,
         const std::string& method, int samples, std::uint64_t seed) {
        return kl_between(m1, m2, q, method_from_name(method, samples), seed);
      },
      py::arg("m1"), py::arg("m2"), py::arg("q") = Intervention{},
      py::arg("method") = "exact", py::arg("samples") = 10000,
      py::arg("seed") = 0);
  m.def(
      "kl2",
      [](const Committee& c, const Intervention& q, const std::string& method,
         int samples, std::uint64_t seed) {
        return kl2(c, q, method_from_name(method, samples), seed);
      },
      py::arg("c"), py::arg("q") = Intervention{}, py::arg("method") = "exact",
      py::arg("samples") = 10000, py::arg("seed") = 0);
  m.def(
      "js",
      [](const Committee& c, const Intervention& q, const std::string& method,
         int samples, std::uint64_t seed) {
        return js(c, q, method_from_name(method, samples), seed);
      },
      py::arg("c"), py::arg("q") = Intervention{}, py::arg("method") = "exact",
      py::arg("samples") = 10000, py::arg("seed") = 0);
  m.def(
      "bjs",
      [](const Committee& c, const Intervention& q, const std::string& method,
         int samples, std::uint64_t seed) {
        return bjs(c, q, method_from_name(method, samples), seed);
      },
      py::arg("c"), py::arg("q") = Intervention{}, py::arg("method") = "exact",
      py::arg("samples") = 10000, py::arg("seed") = 0);
  m.def(
      "committee_posterior",
      [](const Committee& c, const std::vector<int>& x, const Intervention& q) {
        return committee_posterior(c, x, q);
      },
      py::arg("c"), py::arg("x"), py::arg("q") = Intervention{});

  // query optimizer
  m.def(
      "score_query",
      [](const Committee& c, const Intervention& q, const std::string& measure,
         const std::string& method, int samples, std::uint64_t seed) {
        QueryConfig cfg;
        cfg.measure = parse_measure(measure);
        return score_query(c, q, cfg, method_from_name(method, samples), seed);
      },
      py::arg("c"), py::arg("q"), py::arg("measure") = "kl2",
      py::arg("method") = "exact", py::arg("samples") = 10000,
      py::arg("seed") = 0);
  m.def(
      "greedy_query",
      [](const Committee& c, const std::string& measure, int budget,
         double threshold_abs, double threshold_z, const std::string& method,
         int samples, std::uint64_t seed) {
        QueryConfig cfg;
        cfg.measure = parse_measure(measure);
        if (budget >= 0) cfg.budget = budget;
        cfg.threshold_abs = threshold_abs;
        cfg.threshold_z = threshold_z;
        auto result =
            greedy_query(c, cfg, method_from_name(method, samples), seed);
        return py::make_tuple(result.query, result.score);
      },
      py::arg("c"), py::arg("measure") = "kl2", py::arg("budget") = -1,
      py::arg("threshold_abs") = 1e-6, py::arg("threshold_z") = 2.0,
      py::arg("method") = "exact", py::arg("samples") = 10000,
      py::arg("seed") = 0);

  // active-eval
  m.def(
      "oracle_respond",
      [](const BayesNet& truth, const Intervention& q, std::uint64_t seed) {
        Rng rng(seed);
        return oracle_respond(truth, q, rng);
      },
      py::arg("truth"), py::arg("q"), py::arg("seed"));
  m.def(
      "edge_error",
      [](const std::vector<Dag>& boot, const Dag& truth) {
        return edge_error(boot, truth);
      },
      py::arg("bootstrap_dags"), py::arg("true_dag"));
  m.def(
      "edge_entropy",
      [](const std::vector<Dag>& boot) { return edge_entropy(boot); },
      py::arg("bootstrap_dags"));
  m.def(
      "predictive_accuracy",
      [](const BayesNet& truth, const BayesNet& learned, int size, int trials,
         std::uint64_t seed) {
        Rng rng(seed);
        return predictive_accuracy(truth, learned, size, trials, rng);
      },
      py::arg("truth"), py::arg("learned"), py::arg("intervention_size"),
      py::arg("trials") = 20, py::arg("seed") = 0);

  // generation and experiments
  m.def(
      "random_network",
      [](int vars, int max_arity, double density, int max_parents,
         double cpt_alpha, std::uint64_t seed) {
        Rng rng(seed);
        return random_network(vars, max_arity, density, max_parents, cpt_alpha,
                              rng);
      },
      py::arg("variable_count"), py::arg("max_arity") = 3,
      py::arg("edge_density") = 0.25, py::arg("max_parents") = 4,
      py::arg("cpt_alpha") = 1.0, py::arg("seed") = 0);
  m.def(
      "run_experiment",
      [](const std::filesystem::path& config) {
        auto result = run_experiment(load_experiment_config(config));
        return py::make_tuple(result.out_dir, result.files);
      },
      py::arg("config"));
}
