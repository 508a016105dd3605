#ifndef BNACTIVE_BAYES_NET_HPP
#define BNACTIVE_BAYES_NET_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bnactive/errors.hpp"

namespace bnactive {

struct Variable {
  std::string name;
  std::vector<std::string> states;

  int arity() const { return static_cast<int>(states.size()); }

  bool operator==(const Variable&) const = default;
};

// Directed acyclic graph stored as per-child parent sets (kept sorted).
// Acyclicity is validated by BayesNet / the parser, not on every edit:
// structure search mutates Dags freely and checks moves itself.
class Dag {
 public:
  Dag() = default;
  explicit Dag(int variable_count) : parents_(variable_count) {}

  int size() const { return static_cast<int>(parents_.size()); }

  const std::vector<int>& parents(int child) const { return parents_[child]; }

  bool has_edge(int parent, int child) const;
  void add_edge(int parent, int child);
  void remove_edge(int parent, int child);

  int edge_count() const;

  // True if a directed path from -> to exists.
  bool path_exists(int from, int to) const;

  bool is_acyclic() const;

  // Kahn's algorithm, ties broken by ascending variable index.
  // Throws cycle_error if the graph has a cycle.
  std::vector<int> topological_order() const;

  bool operator==(const Dag&) const = default;

 private:
  std::vector<std::vector<int>> parents_;
};

// A partial assignment applied via do(q). Variables are clamped to the
// given states and their incoming edges severed.
class Intervention {
 public:
  Intervention() = default;
  Intervention(std::initializer_list<std::pair<int, int>> assignments);

  // Clamp `var` to `state`; re-setting a variable replaces its state.
  void set(int var, int state);

  bool empty() const { return assignments_.empty(); }
  int size() const { return static_cast<int>(assignments_.size()); }
  bool intervenes(int var) const { return forced_state(var).has_value(); }
  std::optional<int> forced_state(int var) const;

  // Sorted by variable index.
  const std::vector<std::pair<int, int>>& assignments() const {
    return assignments_;
  }

  bool operator==(const Intervention&) const = default;

 private:
  std::vector<std::pair<int, int>> assignments_;
};

// Conditional probability table of one family, rows indexed by parent
// configuration (lexicographic over the parents in ascending variable
// order, last parent fastest), entries by child state.
class Cpt {
 public:
  Cpt() = default;
  Cpt(int child, int arity, int config_count)
      : child_(child),
        arity_(arity),
        configs_(config_count),
        p_(static_cast<std::size_t>(arity) * config_count, 0.0) {}

  int child() const { return child_; }
  int arity() const { return arity_; }
  int config_count() const { return configs_; }

  double operator()(int config, int state) const {
    return p_[static_cast<std::size_t>(config) * arity_ + state];
  }
  double& at(int config, int state) {
    return p_[static_cast<std::size_t>(config) * arity_ + state];
  }
  std::span<const double> row(int config) const {
    return {p_.data() + static_cast<std::size_t>(config) * arity_,
            static_cast<std::size_t>(arity_)};
  }
  void set_row(int config, std::span<const double> values);

  bool operator==(const Cpt&) const = default;

 private:
  int child_ = 0;
  int arity_ = 0;
  int configs_ = 0;
  std::vector<double> p_;  // config-major
};

// Immutable after construction; safe to share across threads.
class BayesNet {
 public:
  BayesNet(std::vector<Variable> variables, Dag dag, std::vector<Cpt> cpts);

  int size() const { return static_cast<int>(vars_.size()); }
  const std::vector<Variable>& variables() const { return vars_; }
  const Variable& variable(int v) const { return vars_[v]; }
  int arity(int v) const { return vars_[v].arity(); }
  const Dag& dag() const { return dag_; }
  const Cpt& cpt(int v) const { return cpts_[v]; }

  // -1 when absent.
  int find_variable(std::string_view name) const;

  // Row index into cpt(v) for the parent states in the full assignment x.
  int parent_config(int v, std::span<const int> x) const;

  // Product of all arities, saturating at 2^62.
  long long joint_state_count() const;

 private:
  void validate() const;

  std::vector<Variable> vars_;
  Dag dag_;
  std::vector<Cpt> cpts_;
};

// Number of parent configurations for `v` under `dag` given variable arities.
int config_count_for(const Dag& dag, std::span<const Variable> vars, int v);

bool same_schema(const std::vector<Variable>& a, const std::vector<Variable>& b);

}  // namespace bnactive

#endif
