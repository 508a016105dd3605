#include "bnactive/net_io.hpp"

#include <fstream>
#include <functional>
#include <sstream>

#include <json.hpp>

namespace bnactive {

using nlohmann::json;

namespace {

// Returns the edges of one directed cycle, or empty if acyclic.
std::vector<std::pair<int, int>> find_cycle(const Dag& dag) {
  const int n = dag.size();
  std::vector<int> color(n, 0);  // 0 white, 1 on stack, 2 done
  std::vector<int> path;
  std::vector<std::pair<int, int>> cycle;

  std::function<bool(int)> visit = [&](int u) {
    color[u] = 1;
    path.push_back(u);
    for (int v = 0; v < n; ++v) {
      if (!dag.has_edge(u, v)) continue;
      if (color[v] == 1) {
        auto it = std::find(path.begin(), path.end(), v);
        for (auto p = it; p + 1 != path.end(); ++p)
          cycle.emplace_back(*p, *(p + 1));
        cycle.emplace_back(u, v);
        return true;
      }
      if (color[v] == 0 && visit(v)) return true;
    }
    color[u] = 2;
    path.pop_back();
    return false;
  };

  for (int u = 0; u < n; ++u)
    if (color[u] == 0 && visit(u)) break;
  return cycle;
}

std::string read_file(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw error("cannot open " + file.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& file, const std::string& text) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw error("cannot write " + file.string());
  out << text;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(field);
      field.clear();
    } else if (c != '\r') {
      field += c;
    }
  }
  fields.push_back(field);
  return fields;
}

int parse_int_field(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    int v = std::stoi(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw parse_error("expected an integer for " + what + ", got '" + s + "'");
  }
}

}  // namespace

BayesNet parse_network(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw parse_error(std::string("malformed network document: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("variables") ||
      !doc.contains("edges") || !doc.contains("cpts"))
    throw parse_error(
        "network document must have 'variables', 'edges' and 'cpts'");

  std::vector<Variable> vars;
  try {
    for (const auto& jv : doc["variables"]) {
      Variable var;
      var.name = jv.at("name").get<std::string>();
      for (const auto& s : jv.at("states"))
        var.states.push_back(s.get<std::string>());
      vars.push_back(std::move(var));
    }
  } catch (const json::exception& e) {
    throw parse_error(std::string("malformed variable list: ") + e.what());
  }

  auto index_of = [&](const std::string& name) {
    for (std::size_t i = 0; i < vars.size(); ++i)
      if (vars[i].name == name) return static_cast<int>(i);
    throw parse_error("unknown variable '" + name + "'");
  };

  Dag dag(static_cast<int>(vars.size()));
  try {
    for (const auto& je : doc["edges"]) {
      if (!je.is_array() || je.size() != 2)
        throw parse_error("each edge must be a [parent, child] pair");
      dag.add_edge(index_of(je[0].get<std::string>()),
                   index_of(je[1].get<std::string>()));
    }
  } catch (const json::exception& e) {
    throw parse_error(std::string("malformed edge list: ") + e.what());
  }

  if (!dag.is_acyclic()) {
    std::string msg = "edges form a cycle:";
    for (const auto& [u, v] : find_cycle(dag))
      msg += " " + vars[u].name + "->" + vars[v].name;
    throw cycle_error(msg);
  }

  std::vector<Cpt> cpts;
  for (std::size_t v = 0; v < vars.size(); ++v) {
    const auto& name = vars[v].name;
    if (!doc["cpts"].contains(name))
      throw parse_error("missing cpt for variable '" + name + "'");
    const auto& rows = doc["cpts"][name];
    const int configs = config_count_for(dag, vars, static_cast<int>(v));
    if (!rows.is_array() || static_cast<int>(rows.size()) != configs)
      throw arity_error("cpt of '" + name + "' must have " +
                        std::to_string(configs) + " rows, found " +
                        std::to_string(rows.size()));
    Cpt cpt(static_cast<int>(v), vars[v].arity(), configs);
    for (int c = 0; c < configs; ++c) {
      const auto& row = rows[c];
      if (!row.is_array() || static_cast<int>(row.size()) != vars[v].arity())
        throw arity_error("row " + std::to_string(c) + " of '" + name +
                          "' must have " + std::to_string(vars[v].arity()) +
                          " entries");
      for (int s = 0; s < vars[v].arity(); ++s) {
        if (!row[s].is_number())
          throw parse_error("non-numeric probability in cpt of '" + name + "'");
        cpt.at(c, s) = row[s].get<double>();
      }
    }
    cpts.push_back(std::move(cpt));
  }

  return BayesNet(std::move(vars), std::move(dag), std::move(cpts));
}

std::string serialize_network(const BayesNet& net) {
  json doc;
  doc["variables"] = json::array();
  for (const auto& var : net.variables())
    doc["variables"].push_back({{"name", var.name}, {"states", var.states}});

  doc["edges"] = json::array();
  for (int parent = 0; parent < net.size(); ++parent)
    for (int child = 0; child < net.size(); ++child)
      if (net.dag().has_edge(parent, child))
        doc["edges"].push_back(
            {net.variable(parent).name, net.variable(child).name});

  doc["cpts"] = json::object();
  for (int v = 0; v < net.size(); ++v) {
    const Cpt& cpt = net.cpt(v);
    json rows = json::array();
    for (int c = 0; c < cpt.config_count(); ++c) {
      json row = json::array();
      for (int s = 0; s < cpt.arity(); ++s) row.push_back(cpt(c, s));
      rows.push_back(std::move(row));
    }
    doc["cpts"][net.variable(v).name] = std::move(rows);
  }
  return doc.dump(2) + "\n";
}

BayesNet load_network(const std::filesystem::path& file) {
  return parse_network(read_file(file));
}

void save_network(const BayesNet& net, const std::filesystem::path& file) {
  write_file(file, serialize_network(net));
}

Dataset parse_dataset(const std::string& csv, std::vector<Variable> schema) {
  std::istringstream in(csv);
  std::string line;
  if (!std::getline(in, line)) throw parse_error("dataset is missing a header");

  const int n = static_cast<int>(schema.size());
  auto header = split_csv_line(line);
  if (static_cast<int>(header.size()) != 2 * n)
    throw parse_error("header has " + std::to_string(header.size()) +
                      " columns, expected " + std::to_string(2 * n));
  for (int v = 0; v < n; ++v) {
    if (header[v] != schema[v].name)
      throw parse_error("unknown column '" + header[v] + "', expected '" +
                        schema[v].name + "'");
    if (header[n + v] != "do_" + schema[v].name)
      throw parse_error("missing flag column 'do_" + schema[v].name + "'");
  }

  Dataset ds(std::move(schema));
  std::size_t row_index = 1;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    auto fields = split_csv_line(line);
    if (static_cast<int>(fields.size()) != 2 * n)
      throw parse_error("row " + std::to_string(row_index) + " has " +
                        std::to_string(fields.size()) + " fields");
    Record r;
    for (int v = 0; v < n; ++v)
      r.values.push_back(parse_int_field(fields[v], "column " + header[v]));
    for (int v = 0; v < n; ++v) {
      int flag = parse_int_field(fields[n + v], "column " + header[n + v]);
      if (flag != 0 && flag != 1)
        throw parse_error("flag column " + header[n + v] + " must be 0 or 1");
      r.intervened.push_back(flag == 1);
    }
    ds.append(std::move(r));
    ++row_index;
  }
  return ds;
}

std::string serialize_dataset(const Dataset& ds) {
  std::string out;
  const auto& schema = ds.schema();
  for (std::size_t v = 0; v < schema.size(); ++v) {
    if (v) out += ',';
    out += schema[v].name;
  }
  for (const auto& var : schema) {
    out += ",do_";
    out += var.name;
  }
  out += '\n';
  for (const auto& rec : ds.records()) {
    for (std::size_t v = 0; v < rec.values.size(); ++v) {
      if (v) out += ',';
      out += std::to_string(rec.values[v]);
    }
    for (bool flag : rec.intervened) out += flag ? ",1" : ",0";
    out += '\n';
  }
  return out;
}

Dataset load_dataset(const std::filesystem::path& file,
                     std::vector<Variable> schema) {
  return parse_dataset(read_file(file), std::move(schema));
}

void save_dataset(const Dataset& ds, const std::filesystem::path& file) {
  write_file(file, serialize_dataset(ds));
}

}  // namespace bnactive
