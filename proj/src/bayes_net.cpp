#include "bnactive/bayes_net.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace bnactive {

bool Dag::has_edge(int parent, int child) const {
  const auto& ps = parents_[child];
  return std::binary_search(ps.begin(), ps.end(), parent);
}

void Dag::add_edge(int parent, int child) {
  if (parent == child) throw error("self-edge " + std::to_string(parent));
  auto& ps = parents_[child];
  auto it = std::lower_bound(ps.begin(), ps.end(), parent);
  if (it != ps.end() && *it == parent)
    throw error("duplicate edge " + std::to_string(parent) + "->" +
                std::to_string(child));
  ps.insert(it, parent);
}

void Dag::remove_edge(int parent, int child) {
  auto& ps = parents_[child];
  auto it = std::lower_bound(ps.begin(), ps.end(), parent);
  if (it == ps.end() || *it != parent)
    throw error("missing edge " + std::to_string(parent) + "->" +
                std::to_string(child));
  ps.erase(it);
}

int Dag::edge_count() const {
  int n = 0;
  for (const auto& ps : parents_) n += static_cast<int>(ps.size());
  return n;
}

bool Dag::path_exists(int from, int to) const {
  if (from == to) return true;
  // children adjacency built on the fly; graphs here are small
  std::vector<char> seen(parents_.size(), 0);
  std::vector<int> stack{from};
  seen[from] = 1;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (int v = 0; v < size(); ++v) {
      if (!seen[v] && has_edge(u, v)) {
        if (v == to) return true;
        seen[v] = 1;
        stack.push_back(v);
      }
    }
  }
  return false;
}

bool Dag::is_acyclic() const {
  try {
    topological_order();
    return true;
  } catch (const cycle_error&) {
    return false;
  }
}

std::vector<int> Dag::topological_order() const {
  const int n = size();
  std::vector<int> indegree(n);
  for (int v = 0; v < n; ++v) indegree[v] = static_cast<int>(parents_[v].size());
  std::vector<char> emitted(n, 0);
  std::vector<int> order;
  order.reserve(n);
  for (int step = 0; step < n; ++step) {
    int pick = -1;
    for (int v = 0; v < n; ++v) {
      if (!emitted[v] && indegree[v] == 0) {
        pick = v;
        break;
      }
    }
    if (pick < 0) throw cycle_error("graph contains a directed cycle");
    emitted[pick] = 1;
    order.push_back(pick);
    for (int v = 0; v < n; ++v)
      if (!emitted[v] && has_edge(pick, v)) --indegree[v];
  }
  return order;
}

Intervention::Intervention(
    std::initializer_list<std::pair<int, int>> assignments) {
  for (const auto& [var, state] : assignments) set(var, state);
}

void Intervention::set(int var, int state) {
  auto it = std::lower_bound(
      assignments_.begin(), assignments_.end(), var,
      [](const auto& a, int v) { return a.first < v; });
  if (it != assignments_.end() && it->first == var) {
    it->second = state;
  } else {
    assignments_.insert(it, {var, state});
  }
}

std::optional<int> Intervention::forced_state(int var) const {
  auto it = std::lower_bound(
      assignments_.begin(), assignments_.end(), var,
      [](const auto& a, int v) { return a.first < v; });
  if (it != assignments_.end() && it->first == var) return it->second;
  return std::nullopt;
}

void Cpt::set_row(int config, std::span<const double> values) {
  if (static_cast<int>(values.size()) != arity_)
    throw shape_error("row length " + std::to_string(values.size()) +
                      " does not match arity " + std::to_string(arity_));
  std::copy(values.begin(), values.end(),
            p_.begin() + static_cast<std::size_t>(config) * arity_);
}

int config_count_for(const Dag& dag, std::span<const Variable> vars, int v) {
  long long count = 1;
  for (int p : dag.parents(v)) count *= vars[p].arity();
  return static_cast<int>(count);
}

bool same_schema(const std::vector<Variable>& a,
                 const std::vector<Variable>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].name != b[i].name || a[i].states != b[i].states) return false;
  }
  return true;
}

BayesNet::BayesNet(std::vector<Variable> variables, Dag dag,
                   std::vector<Cpt> cpts)
    : vars_(std::move(variables)), dag_(std::move(dag)), cpts_(std::move(cpts)) {
  validate();
}

int BayesNet::find_variable(std::string_view name) const {
  for (int v = 0; v < size(); ++v)
    if (vars_[v].name == name) return v;
  return -1;
}

int BayesNet::parent_config(int v, std::span<const int> x) const {
  int index = 0;
  for (int p : dag_.parents(v)) index = index * vars_[p].arity() + x[p];
  return index;
}

long long BayesNet::joint_state_count() const {
  const long long cap = 1LL << 62;
  long long count = 1;
  for (const auto& var : vars_) {
    count *= var.arity();
    if (count > cap / 4) return cap;
  }
  return count;
}

void BayesNet::validate() const {
  const int n = size();
  if (dag_.size() != n || static_cast<int>(cpts_.size()) != n)
    throw shape_error("variable, dag and cpt counts disagree");

  std::set<std::string> names;
  for (const auto& var : vars_) {
    if (var.arity() < 2)
      throw arity_error("variable " + var.name + " has arity < 2");
    if (!names.insert(var.name).second)
      throw parse_error("duplicate variable name " + var.name);
    std::set<std::string> labels(var.states.begin(), var.states.end());
    if (static_cast<int>(labels.size()) != var.arity())
      throw parse_error("duplicate state label in variable " + var.name);
  }

  dag_.topological_order();  // throws cycle_error

  for (int v = 0; v < n; ++v) {
    const Cpt& cpt = cpts_[v];
    if (cpt.child() != v) throw shape_error("cpt child index mismatch");
    if (cpt.arity() != vars_[v].arity())
      throw arity_error("cpt arity mismatch for variable " + vars_[v].name);
    if (cpt.config_count() != config_count_for(dag_, vars_, v))
      throw arity_error("cpt row count mismatch for variable " + vars_[v].name);
    for (int c = 0; c < cpt.config_count(); ++c) {
      double sum = 0.0;
      for (int s = 0; s < cpt.arity(); ++s) {
        double p = cpt(c, s);
        if (!(p >= 0.0) || p > 1.0 + 1e-12)
          throw row_sum_error("probability out of range in " + vars_[v].name);
        sum += p;
      }
      if (std::abs(sum - 1.0) > 1e-12)
        throw row_sum_error("row " + std::to_string(c) + " of " +
                            vars_[v].name + " sums to " + std::to_string(sum));
    }
  }
}

}  // namespace bnactive
