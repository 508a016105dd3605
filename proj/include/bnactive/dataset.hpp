#ifndef BNACTIVE_DATASET_HPP
#define BNACTIVE_DATASET_HPP

#include <vector>

#include "bnactive/bayes_net.hpp"
#include "bnactive/rng.hpp"

namespace bnactive {

// One complete instantiation plus per-variable intervention flags marking
// the variables that were clamped when the record was acquired.
struct Record {
  std::vector<int> values;
  std::vector<bool> intervened;

  bool operator==(const Record&) const = default;
};

class Dataset {
 public:
  Dataset() = default;
  explicit Dataset(std::vector<Variable> schema) : schema_(std::move(schema)) {}

  const std::vector<Variable>& schema() const { return schema_; }
  int variable_count() const { return static_cast<int>(schema_.size()); }

  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }
  const Record& operator[](std::size_t i) const { return records_[i]; }
  const std::vector<Record>& records() const { return records_; }

  // Validates the record against the schema.
  void append(Record record);

  bool operator==(const Dataset&) const = default;

 private:
  std::vector<Variable> schema_;
  std::vector<Record> records_;
};

Record record_from(std::vector<int> values, const Intervention& q);

// Classical bootstrap: |ds| records drawn uniformly with replacement,
// intervention flags traveling with their records.
Dataset bootstrap_resample(const Dataset& ds, Rng& rng);

}  // namespace bnactive

#endif
