#ifndef BNACTIVE_NET_IO_HPP
#define BNACTIVE_NET_IO_HPP

#include <filesystem>
#include <string>

#include "bnactive/bayes_net.hpp"
#include "bnactive/dataset.hpp"

namespace bnactive {

// Network document: JSON with "variables" (ordered {name, states}),
// "edges" ([parent, child] name pairs) and "cpts" (child name -> rows,
// rows lexicographic over the parents in declared order, last parent
// fastest; each row ordered by the child's declared states).
BayesNet parse_network(const std::string& text);
std::string serialize_network(const BayesNet& net);

BayesNet load_network(const std::filesystem::path& file);
void save_network(const BayesNet& net, const std::filesystem::path& file);

// Dataset table: CSV with header "v1,...,vN,do_v1,...,do_vN" over the
// schema's declared names; values are state indices, flags 0/1.
Dataset parse_dataset(const std::string& csv, std::vector<Variable> schema);
std::string serialize_dataset(const Dataset& ds);

Dataset load_dataset(const std::filesystem::path& file,
                     std::vector<Variable> schema);
void save_dataset(const Dataset& ds, const std::filesystem::path& file);

}  // namespace bnactive

#endif
