#include "mcpg/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace mcpg::oracle {
namespace {

/// Neumaier's compensated sum.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

void require_size(std::size_t n, std::size_t limit, const char* what) {
  if (n > limit) {
    throw std::invalid_argument(std::string(what) + ": n = " + std::to_string(n) + " exceeds " +
                                std::to_string(limit));
  }
}

std::uint64_t domain_size(std::size_t n) { return std::uint64_t{1} << n; }

/// Stable normalization of exp(logits).
std::vector<double> softmax(const std::vector<double>& logits) {
  const double top = *std::max_element(logits.begin(), logits.end());
  std::vector<double> p(logits.size());
  CompensatedSum z;
  for (std::size_t r = 0; r < logits.size(); ++r) {
    p[r] = std::exp(logits[r] - top);
    z.add(p[r]);
  }
  const double total = z.value();
  for (double& v : p) v /= total;
  return p;
}

double min_value(std::span<const double> values) {
  return *std::min_element(values.begin(), values.end());
}

}  // namespace

std::vector<double> enumerate_values(const Objective& obj, const FilterKind& filter) {
  const std::size_t n = obj.size();
  require_size(n, kMaxBruteForce, "enumerate_values");
  check_filter_applicable(filter, obj);
  const std::uint64_t size = domain_size(n);
  std::vector<double> values(size);
  const bool identity = filter.type == FilterKind::Type::Identity;
  for (std::uint64_t r = 0; r < size; ++r) {
    SpinVector x = spins_from_rank(r, n);
    if (!identity) x = apply_filter_ordered(filter, obj, std::move(x));
    values[r] = obj.value(x);
  }
  return values;
}

std::vector<std::uint64_t> minimizer_ranks(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("minimizer_ranks: empty value table");
  const double best = min_value(values);
  std::vector<std::uint64_t> out;
  for (std::uint64_t r = 0; r < values.size(); ++r) {
    if (values[r] <= best + kValueTolerance) out.push_back(r);
  }
  return out;
}

Minimum brute_force_min(const Objective& obj) {
  const auto values = enumerate_values(obj);
  const auto ranks = minimizer_ranks(values);
  return {spins_from_rank(ranks.front(), obj.size()), min_value(values), ranks.size()};
}

ExactDistribution::ExactDistribution(std::size_t n, std::vector<double> probabilities)
    : n_(n), p_(std::move(probabilities)) {
  require_size(n, kMaxExact, "ExactDistribution");
  if (p_.size() != domain_size(n)) throw std::invalid_argument("ExactDistribution: need 2^n entries");
  CompensatedSum total;
  for (double v : p_) {
    if (!(v >= 0.0)) throw std::invalid_argument("ExactDistribution: negative or NaN probability");
    total.add(v);
  }
  if (std::abs(total.value() - 1.0) > 1e-10) {
    throw std::invalid_argument("ExactDistribution: probabilities do not sum to 1");
  }
}

ExactDistribution exact_gibbs(const Objective& obj, double lambda, const FilterKind& filter) {
  if (!(lambda > 0.0)) throw std::invalid_argument("exact_gibbs: lambda must be positive");
  require_size(obj.size(), kMaxExact, "exact_gibbs");
  auto logits = enumerate_values(obj, filter);
  for (double& v : logits) v = -v / lambda;
  return ExactDistribution(obj.size(), softmax(logits));
}

ExactDistribution exact_policy(const PolicyParams& params) {
  const std::size_t n = params.size();
  require_size(n, kMaxExact, "exact_policy");
  const std::uint64_t size = domain_size(n);
  std::vector<double> p(size);
  for (std::uint64_t r = 0; r < size; ++r) {
    double prob = 1.0;
    for (std::size_t i = 0; i < n; ++i) prob *= (r >> i & 1U) ? params.mu(i) : 1.0 - params.mu(i);
    p[r] = prob;
  }
  return ExactDistribution(n, std::move(p));
}

double total_variation(const ExactDistribution& p, const ExactDistribution& q) {
  if (p.num_vars() != q.num_vars()) throw std::invalid_argument("total_variation: size mismatch");
  CompensatedSum s;
  for (std::uint64_t r = 0; r < p.probabilities().size(); ++r) s.add(std::abs(p[r] - q[r]));
  return 0.5 * s.value();
}

double kl_divergence(const ExactDistribution& p, const ExactDistribution& q) {
  if (p.num_vars() != q.num_vars()) throw std::invalid_argument("kl_divergence: size mismatch");
  CompensatedSum s;
  for (std::uint64_t r = 0; r < p.probabilities().size(); ++r) {
    if (p[r] == 0.0) continue;
    if (q[r] == 0.0) return std::numeric_limits<double>::infinity();
    s.add(p[r] * (std::log(p[r]) - std::log(q[r])));
  }
  return s.value();
}

LossAndGrad exact_loss_and_grad(const PolicyParams& params, const Objective& obj, double lambda,
                                const FilterKind& filter) {
  const std::size_t n = obj.size();
  if (params.size() != n) throw std::invalid_argument("exact_loss_and_grad: dimension mismatch");
  require_size(n, kMaxGradient, "exact_loss_and_grad");
  const auto values = enumerate_values(obj, filter);
  CompensatedSum loss;
  std::vector<CompensatedSum> grad(n);
  for (std::uint64_t r = 0; r < values.size(); ++r) {
    const SpinVector x = spins_from_rank(r, n);
    const double lp = log_prob(params, x);
    const double p = std::exp(lp);
    const double g = values[r] + lambda * lp;
    loss.add(p * g);
    const auto score = grad_log_prob(params, x);
    for (std::size_t i = 0; i < n; ++i) grad[i].add(p * g * score[i]);
  }
  LossAndGrad out;
  out.loss = loss.value();
  out.grad.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.grad[i] = grad[i].value();
  return out;
}

GapBound gap_and_bound(const Objective& obj) {
  require_size(obj.size(), kMaxExact, "gap_and_bound");
  const auto values = enumerate_values(obj);
  const double best = min_value(values);
  double gap = std::numeric_limits<double>::infinity();
  double bound = 0.0;
  for (double v : values) {
    if (v > best + kValueTolerance) gap = std::min(gap, v - best);
    bound = std::max(bound, std::abs(v));
  }
  if (!std::isfinite(gap)) throw std::invalid_argument("gap_and_bound: objective is constant");
  return {gap, bound};
}

bool check_prop2(const PolicyParams& params, const Objective& obj, double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("check_prop2: delta must lie in (0, 1)");
  require_size(obj.size(), kMaxGradient, "check_prop2");
  if (params.size() != obj.size()) throw std::invalid_argument("check_prop2: dimension mismatch");
  const auto values = enumerate_values(obj);
  const auto policy = exact_policy(params);
  const double best = min_value(values);
  CompensatedSum mean;
  CompensatedSum optimal_mass;
  double gap = std::numeric_limits<double>::infinity();
  for (std::uint64_t r = 0; r < values.size(); ++r) {
    mean.add(policy[r] * values[r]);
    if (values[r] <= best + kValueTolerance) {
      optimal_mass.add(policy[r]);
    } else {
      gap = std::min(gap, values[r] - best);
    }
  }
  // A constant objective makes every point optimal.
  if (!std::isfinite(gap)) return optimal_mass.value() > delta;
  const bool premise = mean.value() - best < (1.0 - delta) * gap;
  return !premise || optimal_mass.value() > delta;
}

std::vector<std::size_t> basin_sizes(const Objective& obj, const FilterKind& filter) {
  const std::size_t n = obj.size();
  require_size(n, kMaxExact, "basin_sizes");
  check_filter_applicable(filter, obj);
  const std::uint64_t size = domain_size(n);
  std::vector<std::uint64_t> next(size);
  for (std::uint64_t r = 0; r < size; ++r) {
    next[r] = spin_rank(apply_filter_ordered(filter, obj, spins_from_rank(r, n)));
  }
  constexpr auto kUnset = std::numeric_limits<std::uint64_t>::max();
  std::vector<std::uint64_t> root(size, kUnset);
  std::vector<std::uint64_t> path;
  for (std::uint64_t r = 0; r < size; ++r) {
    std::uint64_t cur = r;
    path.clear();
    while (root[cur] == kUnset && next[cur] != cur) {
      path.push_back(cur);
      if (path.size() > size) throw std::logic_error("basin_sizes: filter iteration does not settle");
      cur = next[cur];
    }
    const std::uint64_t fixed = root[cur] == kUnset ? cur : root[cur];
    root[cur] = fixed;
    for (std::uint64_t p : path) root[p] = fixed;
  }
  std::vector<std::size_t> count(size, 0);
  for (std::uint64_t r = 0; r < size; ++r) ++count[root[r]];
  std::vector<std::size_t> out;
  for (std::size_t c : count) {
    if (c > 0) out.push_back(c);
  }
  return out;
}

double penalty_threshold(const PenalizedObjective& p) {
  const std::size_t n = p.size();
  require_size(n, kMaxBruteForce, "penalty_threshold");
  double best_all = std::numeric_limits<double>::infinity();
  double best_feasible = std::numeric_limits<double>::infinity();
  double min_violation = std::numeric_limits<double>::infinity();
  for (std::uint64_t r = 0; r < domain_size(n); ++r) {
    const SpinVector x = spins_from_rank(r, n);
    const double f = p.base().value(x);
    const double v = p.violation(x);
    best_all = std::min(best_all, f);
    if (v == 0.0) {
      best_feasible = std::min(best_feasible, f);
    } else {
      min_violation = std::min(min_violation, v);
    }
  }
  if (!std::isfinite(best_feasible)) throw std::invalid_argument("penalty_threshold: no feasible point");
  if (!std::isfinite(min_violation)) return 0.0;
  return (best_feasible - best_all) / min_violation;
}

std::vector<std::uint64_t> constrained_minimizer_ranks(const PenalizedObjective& p) {
  const std::size_t n = p.size();
  require_size(n, kMaxBruteForce, "constrained_minimizer_ranks");
  std::vector<double> values(domain_size(n));
  for (std::uint64_t r = 0; r < values.size(); ++r) {
    const SpinVector x = spins_from_rank(r, n);
    values[r] = p.violation(x) == 0.0 ? p.base().value(x) : std::numeric_limits<double>::infinity();
  }
  if (!std::isfinite(min_value(values))) {
    throw std::invalid_argument("constrained_minimizer_ranks: no feasible point");
  }
  return minimizer_ranks(values);
}

}  // namespace mcpg::oracle
