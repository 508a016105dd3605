#include "bnactive/committee.hpp"

#include <cmath>
#include <fstream>

#include <json.hpp>

#include "bnactive/net_io.hpp"

namespace bnactive {

Committee::Committee(std::vector<BayesNet> members, std::vector<double> weights)
    : members_(std::move(members)), weights_(std::move(weights)) {
  if (members_.empty()) throw error("committee needs at least one member");
  if (weights_.size() != members_.size())
    throw shape_error("weight count does not match member count");
  double sum = 0.0;
  for (double w : weights_) {
    if (w < 0.0) throw error("negative committee weight");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw error("committee weights sum to " + std::to_string(sum));
  for (const auto& m : members_)
    if (!same_schema(m.variables(), members_.front().variables()))
      throw shape_error("committee members must share a schema");
}

Committee build_committee(const Dataset& ds, int committee_size,
                          const ScoreConfig& cfg, const SearchConfig& scfg,
                          std::uint64_t seed) {
  if (committee_size < 1) throw error("committee size must be >= 1");
  if (ds.empty()) throw empty_data_error("cannot build a committee without data");

  std::vector<BayesNet> members;
  members.reserve(committee_size);
  for (int i = 0; i < committee_size; ++i) {
    const std::string label = "member=" + std::to_string(i);
    Rng resample_rng = stream(seed, label + "/resample");
    Rng search_rng = stream(seed, label + "/search");
    Dataset sample = bootstrap_resample(ds, resample_rng);
    members.push_back(local_search(sample, cfg, scfg, search_rng));
  }
  return Committee(std::move(members),
                   std::vector<double>(committee_size, 1.0 / committee_size));
}

void save_committee(const Committee& committee,
                    const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  nlohmann::json manifest;
  manifest["members"] = nlohmann::json::array();
  for (int i = 0; i < committee.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof(name), "member_%03d.json", i);
    save_network(committee.member(i), dir / name);
    manifest["members"].push_back(name);
  }
  manifest["weights"] = committee.weights();
  std::ofstream out(dir / "committee.json", std::ios::binary);
  if (!out) throw error("cannot write " + (dir / "committee.json").string());
  out << manifest.dump(2) << "\n";
}

Committee load_committee(const std::filesystem::path& manifest_file) {
  std::ifstream in(manifest_file, std::ios::binary);
  if (!in) throw error("cannot open " + manifest_file.string());
  nlohmann::json manifest;
  try {
    in >> manifest;
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(std::string("malformed committee manifest: ") + e.what());
  }
  if (!manifest.contains("members") || !manifest.contains("weights"))
    throw parse_error("committee manifest needs 'members' and 'weights'");

  const auto base = manifest_file.parent_path();
  std::vector<BayesNet> members;
  for (const auto& name : manifest["members"])
    members.push_back(load_network(base / name.get<std::string>()));
  return Committee(std::move(members),
                   manifest["weights"].get<std::vector<double>>());
}

}  // namespace bnactive
