#ifndef MCPG_ORACLE_HPP
#define MCPG_ORACLE_HPP

// Exhaustive reference computations over {-1, +1}^n. Every distribution is a
// vector indexed by spin_rank.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mcpg/filter.hpp"
#include "mcpg/objective.hpp"
#include "mcpg/policy.hpp"
#include "mcpg/problems.hpp"

namespace mcpg::oracle {

inline constexpr std::size_t kMaxBruteForce = 24;
inline constexpr std::size_t kMaxExact = 20;
inline constexpr std::size_t kMaxGradient = 16;

/// Values closer than this to the minimum count as optimal.
inline constexpr double kValueTolerance = 1e-9;

struct Minimum {
  SpinVector argmin;  // lowest rank among the minimizers
  double value = 0.0;
  std::uint64_t multiplicity = 0;
};

Minimum brute_force_min(const Objective& obj);

/// f(T(x)) for every rank, with T the deterministic (index-ordered) filter.
std::vector<double> enumerate_values(const Objective& obj,
                                     const FilterKind& filter = FilterKind::identity());

/// Ranks of all global minimizers, ascending.
std::vector<std::uint64_t> minimizer_ranks(std::span<const double> values);

class ExactDistribution {
 public:
  /// Throws unless probabilities has 2^n nonnegative entries summing to 1.
  ExactDistribution(std::size_t n, std::vector<double> probabilities);

  std::size_t num_vars() const noexcept { return n_; }
  std::span<const double> probabilities() const noexcept { return p_; }
  double operator[](std::uint64_t rank) const { return p_.at(rank); }
  double probability(std::span<const Spin> x) const { return p_.at(spin_rank(x)); }

 private:
  std::size_t n_;
  std::vector<double> p_;
};

/// q(x) proportional to exp(-f(T(x)) / lambda); identity T gives the plain Gibbs law.
ExactDistribution exact_gibbs(const Objective& obj, double lambda,
                              const FilterKind& filter = FilterKind::identity());

ExactDistribution exact_policy(const PolicyParams& params);

double total_variation(const ExactDistribution& p, const ExactDistribution& q);

/// KL(p || q); +inf if p puts mass where q has none.
double kl_divergence(const ExactDistribution& p, const ExactDistribution& q);

struct LossAndGrad {
  double loss = 0.0;
  std::vector<double> grad;
};

/// L(theta) = E_p[f(T(x))] + lambda E_p[log p(x)] and its exact gradient
/// E_p[(f(T(x)) + lambda log p(x)) grad log p(x)].
LossAndGrad exact_loss_and_grad(const PolicyParams& params, const Objective& obj, double lambda,
                                const FilterKind& filter = FilterKind::identity());

struct GapBound {
  double gap = 0.0;    // min over non-optimal x of f(x) - f*
  double bound = 0.0;  // max |f(x)|
};

/// Throws std::invalid_argument for a constant objective.
GapBound gap_and_bound(const Objective& obj);

/// If E_p[f] - f* < (1 - delta) G(f) then P_p(optimal) > delta. Returns
/// whether that implication holds for this (params, obj, delta).
bool check_prop2(const PolicyParams& params, const Objective& obj, double delta);

/// Sizes of the classes of points sharing the fixed point reached by
/// iterating the deterministic filter.
std::vector<std::size_t> basin_sizes(const Objective& obj, const FilterKind& filter);

/// Smallest sigma above which the penalty is exact:
/// (min over feasible f - min over all f) / (min positive violation).
/// Returns 0 when every point is feasible; throws when none is.
double penalty_threshold(const PenalizedObjective& p);

/// Ranks minimizing the base objective among points with zero violation.
std::vector<std::uint64_t> constrained_minimizer_ranks(const PenalizedObjective& p);

}  // namespace mcpg::oracle

#endif  // MCPG_ORACLE_HPP
