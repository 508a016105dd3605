#include "bnactive/divergence.hpp"

#include <cmath>
#include <limits>

namespace bnactive {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string method_tag(MethodKind kind, int samples) {
  switch (kind) {
    case MethodKind::ExactEnumeration:
      return "exact-enumeration";
    case MethodKind::FamilyExact:
      return "family-decomposition-exact";
    case MethodKind::FamilySampled:
      return "family-decomposition-sampled(" + std::to_string(samples) + ")";
    default:
      return "monte-carlo(" + std::to_string(samples) + ")";
  }
}

DivergenceEstimate clamped(double value, double std_error, MethodKind kind,
                           int samples) {
  DivergenceEstimate est;
  est.raw_value = value;
  est.value = value < 0.0 ? 0.0 : value;
  est.std_error = std_error;
  est.method = method_tag(kind, samples);
  return est;
}

// Joint probability of x under do(q) without per-call validation.
double joint_prob(const BayesNet& net, std::span<const int> x,
                  const Intervention& q) {
  double p = 1.0;
  for (int v = 0; v < net.size(); ++v) {
    if (q.intervenes(v)) continue;
    p *= net.cpt(v)(net.parent_config(v, x), x[v]);
  }
  return p;
}

double mean_of(const std::vector<double>& xs) {
  double sum = 0.0;
  for (double x : xs) sum += x;
  return sum / xs.size();
}

double std_error_of(const std::vector<double>& xs, double mean) {
  if (xs.size() < 2) return 0.0;
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / (xs.size() - 1) / xs.size());
}

// Per-family tables over the union {j} u parents1(j) u parents2(j).
struct FamilyUnion {
  int child;
  std::vector<int> vars;     // sorted union
  std::vector<int> arities;
  std::vector<double> prob;  // P1(union | do(q))

  int index_of(std::span<const int> x) const {
    int idx = 0;
    for (std::size_t i = 0; i < vars.size(); ++i)
      idx = idx * arities[i] + x[vars[i]];
    return idx;
  }
};

std::vector<FamilyUnion> family_unions(const BayesNet& m1, const BayesNet& m2,
                                       const Intervention& q) {
  std::vector<FamilyUnion> unions;
  for (int j = 0; j < m1.size(); ++j) {
    if (q.intervenes(j)) continue;
    FamilyUnion fu;
    fu.child = j;
    fu.vars.push_back(j);
    for (int p : m1.dag().parents(j)) fu.vars.push_back(p);
    for (int p : m2.dag().parents(j)) fu.vars.push_back(p);
    std::sort(fu.vars.begin(), fu.vars.end());
    fu.vars.erase(std::unique(fu.vars.begin(), fu.vars.end()), fu.vars.end());
    long long cells = 1;
    for (int v : fu.vars) {
      fu.arities.push_back(m1.arity(v));
      cells *= m1.arity(v);
    }
    fu.prob.assign(static_cast<std::size_t>(cells), 0.0);
    unions.push_back(std::move(fu));
  }
  return unions;
}

// log ratio ln[P1(x_j | pi_j) / P2(x_j | pi'_j)] at a full assignment.
// Infinite-divergence is reported only where m1 gives the term support.
double family_log_ratio(const BayesNet& m1, const BayesNet& m2, int j,
                        std::span<const int> x) {
  double p1 = m1.cpt(j)(m1.parent_config(j, x), x[j]);
  double p2 = m2.cpt(j)(m2.parent_config(j, x), x[j]);
  if (p2 <= 0.0) {
    if (p1 <= 0.0) return 0.0;
    throw infinite_divergence_error(
        "model 2 assigns probability zero on the support of model 1 (family " +
        m1.variable(j).name + ")");
  }
  if (p1 <= 0.0) return -kInf;  // contributes 0 under the p1 weight
  return std::log(p1) - std::log(p2);
}

void check_pair(const BayesNet& m1, const BayesNet& m2,
                const Intervention& q) {
  if (!same_schema(m1.variables(), m2.variables()))
    throw shape_error("divergence requires a shared schema");
  check_intervention(m1, q);
}

DivergenceEstimate kl_exact_enumeration(const BayesNet& m1, const BayesNet& m2,
                                        const Intervention& q,
                                        long long budget) {
  double value = 0.0;
  for_each_joint_config(m1, q, budget, [&](std::span<const int> x, double p1) {
    if (p1 <= 0.0) return;
    double p2 = joint_prob(m2, x, q);
    if (p2 <= 0.0)
      throw infinite_divergence_error(
          "model 2 assigns probability zero on the support of model 1");
    value += p1 * (std::log(p1) - std::log(p2));
  });
  return clamped(value, 0.0, MethodKind::ExactEnumeration, 0);
}

DivergenceEstimate kl_family_exact(const BayesNet& m1, const BayesNet& m2,
                                   const Intervention& q, long long budget) {
  auto unions = family_unions(m1, m2, q);
  for_each_joint_config(m1, q, budget, [&](std::span<const int> x, double p1) {
    for (auto& fu : unions) fu.prob[fu.index_of(x)] += p1;
  });

  double value = 0.0;
  std::vector<int> x(m1.size(), 0);
  for (const auto& fu : unions) {
    // enumerate the union configurations (last variable fastest)
    std::vector<int> states(fu.vars.size(), 0);
    for (std::size_t cell = 0; cell < fu.prob.size(); ++cell) {
      double p = fu.prob[cell];
      if (p > 0.0) {
        for (std::size_t i = 0; i < fu.vars.size(); ++i) x[fu.vars[i]] = states[i];
        value += p * family_log_ratio(m1, m2, fu.child, x);
      }
      for (int i = static_cast<int>(states.size()) - 1; i >= 0; --i) {
        if (++states[i] < fu.arities[i]) break;
        states[i] = 0;
      }
    }
  }
  return clamped(value, 0.0, MethodKind::FamilyExact, 0);
}

DivergenceEstimate kl_family_sampled(const BayesNet& m1, const BayesNet& m2,
                                     const Intervention& q, int n,
                                     std::uint64_t seed) {
  if (n < 1) throw error("sample count must be >= 1");
  ForwardSampler sampler(m1, q);
  Rng rng = stream(seed, "kl/samples");

  std::vector<double> terms(n);
  std::vector<int> x(m1.size());
  for (int s = 0; s < n; ++s) {
    sampler.draw(x, rng);
    double t = 0.0;
    for (int j = 0; j < m1.size(); ++j)
      if (!q.intervenes(j)) t += family_log_ratio(m1, m2, j, x);
    terms[s] = t;
  }
  double mean = mean_of(terms);
  return clamped(mean, std_error_of(terms, mean), MethodKind::FamilySampled, n);
}

// Shared exact accumulation for js/bjs: member joint probabilities are
// evaluated per configuration of the free variables.
template <class F>
void for_each_mixture_config(const Committee& c, const Intervention& q,
                             long long budget, F&& f) {
  const BayesNet& first = c.member(0);
  std::vector<double> member_p(c.size());
  for_each_joint_config(first, q, budget, [&](std::span<const int> x, double p0) {
    member_p[0] = p0;
    double mix = c.weight(0) * p0;
    for (int m = 1; m < c.size(); ++m) {
      member_p[m] = joint_prob(c.member(m), x, q);
      mix += c.weight(m) * member_p[m];
    }
    f(member_p, mix);
  });
}

struct MixtureSampler {
  explicit MixtureSampler(const Committee& c, const Intervention& q) {
    samplers.reserve(c.size());
    for (int m = 0; m < c.size(); ++m)
      samplers.emplace_back(c.member(m), q);
  }
  std::vector<ForwardSampler> samplers;
};

double log_mixture_prob(const Committee& c, std::span<const int> x,
                        const Intervention& q) {
  double p = 0.0;
  for (int m = 0; m < c.size(); ++m)
    p += c.weight(m) * joint_prob(c.member(m), x, q);
  return p > 0.0 ? std::log(p) : -kInf;
}

}  // namespace

DivergenceEstimate kl_between(const BayesNet& m1, const BayesNet& m2,
                              const Intervention& q, const Method& method,
                              std::uint64_t seed) {
  check_pair(m1, m2, q);
  switch (method.kind) {
    case MethodKind::ExactEnumeration:
      return kl_exact_enumeration(m1, m2, q, method.enum_budget);
    case MethodKind::FamilyExact:
      return kl_family_exact(m1, m2, q, method.enum_budget);
    default:
      // MonteCarlo for a plain KL is the sampled family decomposition
      return kl_family_sampled(m1, m2, q, method.samples, seed);
  }
}

DivergenceEstimate kl2(const Committee& c, const Intervention& q,
                       const Method& method, std::uint64_t seed) {
  check_intervention(c.member(0), q);
  double value = 0.0, raw = 0.0, variance = 0.0;
  for (int a = 0; a < c.size(); ++a) {
    for (int b = 0; b < c.size(); ++b) {
      if (a == b) continue;  // diagonal terms are identically zero
      double w = c.weight(a) * c.weight(b);
      if (w == 0.0) continue;
      auto pair_seed = derive_seed(
          seed, "pair=" + std::to_string(a) + "," + std::to_string(b));
      auto est = kl_between(c.member(a), c.member(b), q, method, pair_seed);
      value += w * est.value;
      raw += w * est.raw_value;
      variance += (w * est.std_error) * (w * est.std_error);
    }
  }
  auto est = clamped(raw, std::sqrt(variance),
                     method.kind == MethodKind::MonteCarlo
                         ? MethodKind::FamilySampled
                         : method.kind,
                     method.samples);
  est.value = value < 0.0 ? 0.0 : value;
  return est;
}

DivergenceEstimate js(const Committee& c, const Intervention& q,
                      const Method& method, std::uint64_t seed) {
  check_intervention(c.member(0), q);

  if (method.is_exact()) {
    double mixture_entropy = 0.0;
    std::vector<double> member_entropy(c.size(), 0.0);
    for_each_mixture_config(
        c, q, method.enum_budget,
        [&](const std::vector<double>& member_p, double mix) {
          if (mix > 0.0) mixture_entropy -= mix * std::log(mix);
          for (int m = 0; m < c.size(); ++m)
            if (member_p[m] > 0.0)
              member_entropy[m] -= member_p[m] * std::log(member_p[m]);
        });
    double value = mixture_entropy;
    for (int m = 0; m < c.size(); ++m)
      value -= c.weight(m) * member_entropy[m];
    return clamped(value, 0.0, MethodKind::ExactEnumeration, 0);
  }

  const int n = method.samples;
  if (n < 1) throw error("sample count must be >= 1");

  // <H(member)> by family decomposition, exact when enumerable
  double avg_member_entropy = 0.0;
  for (int m = 0; m < c.size(); ++m) {
    if (c.weight(m) == 0.0) continue;
    double h;
    if (free_state_count(c.member(m), q) <= method.enum_budget) {
      h = model_entropy(c.member(m), q, method.enum_budget);
    } else {
      Rng rng = stream(seed, "member-entropy/" + std::to_string(m));
      h = model_entropy_sampled(c.member(m), q, n, rng);
    }
    avg_member_entropy += c.weight(m) * h;
  }

  // H(mixture) by Monte Carlo: draw from the mixture, evaluate the
  // mixture density pointwise
  MixtureSampler mix(c, q);
  Rng rng = stream(seed, "mixture");
  std::vector<double> terms(n);
  std::vector<int> x(c.member(0).size());
  for (int s = 0; s < n; ++s) {
    int m = rng.categorical(c.weights());
    mix.samplers[m].draw(x, rng);
    terms[s] = -log_mixture_prob(c, x, q);
  }
  double mean = mean_of(terms);
  return clamped(mean - avg_member_entropy, std_error_of(terms, mean),
                 MethodKind::MonteCarlo, n);
}

DivergenceEstimate bjs(const Committee& c, const Intervention& q,
                       const Method& method, std::uint64_t seed) {
  check_intervention(c.member(0), q);

  if (method.is_exact()) {
    double value = 0.0;
    for_each_mixture_config(
        c, q, method.enum_budget,
        [&](const std::vector<double>& member_p, double mix) {
          if (mix <= 0.0) return;
          double avg_log_member = 0.0;
          for (int m = 0; m < c.size(); ++m) {
            if (c.weight(m) == 0.0) continue;
            if (member_p[m] <= 0.0)
              throw infinite_divergence_error(
                  "a member assigns probability zero on the mixture support");
            avg_log_member += c.weight(m) * std::log(member_p[m]);
          }
          value += mix * (std::log(mix) - avg_log_member);
        });
    return clamped(value, 0.0, MethodKind::ExactEnumeration, 0);
  }

  const int n = method.samples;
  if (n < 1) throw error("sample count must be >= 1");
  MixtureSampler mix(c, q);
  Rng rng = stream(seed, "mixture");
  std::vector<double> terms(n);
  std::vector<int> x(c.member(0).size());
  for (int s = 0; s < n; ++s) {
    int m = rng.categorical(c.weights());
    mix.samplers[m].draw(x, rng);
    double avg_log_member = 0.0;
    for (int k = 0; k < c.size(); ++k) {
      if (c.weight(k) == 0.0) continue;
      double pk = joint_prob(c.member(k), x, q);
      if (pk <= 0.0)
        throw infinite_divergence_error(
            "a member assigns probability zero on the mixture support");
      avg_log_member += c.weight(k) * std::log(pk);
    }
    terms[s] = log_mixture_prob(c, x, q) - avg_log_member;
  }
  double mean = mean_of(terms);
  return clamped(mean, std_error_of(terms, mean), MethodKind::MonteCarlo, n);
}

std::vector<double> committee_posterior(const Committee& c,
                                        std::span<const int> x,
                                        const Intervention& q) {
  const BayesNet& first = c.member(0);
  check_intervention(first, q);
  if (static_cast<int>(x.size()) != first.size())
    throw shape_error("assignment length does not match schema");

  std::vector<double> log_terms(c.size(), -kInf);
  double max_term = -kInf;
  for (int m = 0; m < c.size(); ++m) {
    if (c.weight(m) == 0.0) continue;
    double lp = joint_log_prob(c.member(m), x, q);
    if (lp == -kInf) continue;
    log_terms[m] = std::log(c.weight(m)) + lp;
    max_term = std::max(max_term, log_terms[m]);
  }
  if (max_term == -kInf)
    throw undefined_posterior_error(
        "every committee member assigns the observation probability zero");

  std::vector<double> posterior(c.size(), 0.0);
  double total = 0.0;
  for (int m = 0; m < c.size(); ++m) {
    if (log_terms[m] == -kInf) continue;
    posterior[m] = std::exp(log_terms[m] - max_term);
    total += posterior[m];
  }
  for (double& p : posterior) p /= total;
  return posterior;
}

}  // namespace bnactive
