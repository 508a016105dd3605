#ifndef BNACTIVE_ERRORS_HPP
#define BNACTIVE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace bnactive {

class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class invalid_intervention_error : public error {
 public:
  using error::error;
};

// Dimension or state-range mismatch between an assignment and a schema.
class shape_error : public error {
 public:
  using error::error;
};

// Exact enumeration would exceed the configured state budget; callers
// are expected to fall back to sampling.
class enumeration_limit_error : public error {
 public:
  using error::error;
};

class empty_data_error : public error {
 public:
  using error::error;
};

// The second argument of a KL divergence has a zero entry on the support
// of the first; the divergence is genuinely infinite (not an overflow).
class infinite_divergence_error : public error {
 public:
  using error::error;
};

// Every committee member assigns the observation probability zero.
class undefined_posterior_error : public error {
 public:
  using error::error;
};

class parse_error : public error {
 public:
  using error::error;
};

class cycle_error : public parse_error {
 public:
  using parse_error::parse_error;
};

class row_sum_error : public parse_error {
 public:
  using parse_error::parse_error;
};

class arity_error : public parse_error {
 public:
  using parse_error::parse_error;
};

}  // namespace bnactive

#endif
