#ifndef BNACTIVE_DIVERGENCE_HPP
#define BNACTIVE_DIVERGENCE_HPP

#include <string>

#include "bnactive/committee.hpp"
#include "bnactive/inference.hpp"

namespace bnactive {

enum class MethodKind {
  ExactEnumeration,  // brute-force sum over the joint state space
  FamilyExact,       // family decomposition, exact parent-joint marginals
  FamilySampled,     // family decomposition, forward-sampled marginals
  MonteCarlo,        // mixture sampling (JS/BJS)
};

struct Method {
  MethodKind kind = MethodKind::FamilyExact;
  int samples = 10000;
  long long enum_budget = kDefaultEnumBudget;

  static Method exact_enumeration() { return {MethodKind::ExactEnumeration}; }
  static Method family_exact() { return {MethodKind::FamilyExact}; }
  static Method family_sampled(int n) {
    return {MethodKind::FamilySampled, n};
  }
  static Method monte_carlo(int n) { return {MethodKind::MonteCarlo, n}; }

  bool is_exact() const {
    return kind == MethodKind::ExactEnumeration ||
           kind == MethodKind::FamilyExact;
  }
};

struct DivergenceEstimate {
  double value = 0.0;      // nats, clamped at 0
  double std_error = 0.0;  // 0 for exact methods
  std::string method;
  double raw_value = 0.0;  // pre-clamp estimate
};

// Pairwise KL divergence D(P(X|do(q),m1) || P(X|do(q),m2)). Intervened
// variables are excluded from the family sum; they are identical across
// models under do(q). The family decomposition is
//   sum_j sum_{x_j, pi_j, pi'_j} P(x_j, pi_j, pi'_j | do(q), m1)
//       * ln [ P(x_j|pi_j, m1) / P(x_j|pi'_j, m2) ]
// with pi_j the parents of j under m1 and pi'_j under m2.
// Throws infinite_divergence_error when m2 has a zero on m1's support.
DivergenceEstimate kl_between(const BayesNet& m1, const BayesNet& m2,
                              const Intervention& q, const Method& method,
                              std::uint64_t seed = 0);

// Average KL divergence over ordered member pairs weighted by
// P(m)P(m'); the diagonal contributes zero. Equals js + bjs.
DivergenceEstimate kl2(const Committee& c, const Intervention& q,
                       const Method& method, std::uint64_t seed = 0);

// Jensen-Shannon divergence: H(mixture) - <H(member)>. The sampled
// method draws from the mixture and evaluates the mixture density
// pointwise; member entropies use the family decomposition.
DivergenceEstimate js(const Committee& c, const Intervention& q,
                      const Method& method, std::uint64_t seed = 0);

// Backward JS: <KL(mixture || member)>, equivalently the KL divergence
// from the arithmetic to the (unnormalized) geometric member average.
DivergenceEstimate bjs(const Committee& c, const Intervention& q,
                       const Method& method, std::uint64_t seed = 0);

// P(m | x, do(q)) over the finite committee: prior weights reweighted by
// member likelihoods. Throws undefined_posterior_error when every member
// assigns x probability zero.
std::vector<double> committee_posterior(const Committee& c,
                                        std::span<const int> x,
                                        const Intervention& q);

}  // namespace bnactive

#endif
