#include "bnactive/dataset.hpp"

namespace bnactive {

void Dataset::append(Record record) {
  if (record.values.size() != schema_.size() ||
      record.intervened.size() != schema_.size())
    throw shape_error("record length does not match schema");
  for (std::size_t v = 0; v < schema_.size(); ++v) {
    if (record.values[v] < 0 || record.values[v] >= schema_[v].arity())
      throw shape_error("state out of range for variable " + schema_[v].name);
  }
  records_.push_back(std::move(record));
}

Record record_from(std::vector<int> values, const Intervention& q) {
  Record r;
  r.intervened.assign(values.size(), false);
  for (const auto& [var, state] : q.assignments()) {
    values[var] = state;
    r.intervened[var] = true;
  }
  r.values = std::move(values);
  return r;
}

Dataset bootstrap_resample(const Dataset& ds, Rng& rng) {
  if (ds.empty()) throw empty_data_error("cannot resample an empty dataset");
  Dataset out(ds.schema());
  const int n = static_cast<int>(ds.size());
  for (int i = 0; i < n; ++i) out.append(ds[rng.uniform_int(n)]);
  return out;
}

}  // namespace bnactive
