#ifndef MCPG_POLICY_HPP
#define MCPG_POLICY_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "mcpg/rng.hpp"
#include "mcpg/spin.hpp"

namespace mcpg {

inline constexpr double kDefaultAlpha = 0.2;
inline constexpr double kThetaClamp = 30.0;

/// Parameters of the mean-field Bernoulli policy.
///
/// Each coordinate is independent with P(x_i = +1) = mu_i, where
///   mu_i = (1 - 2 alpha) * sigmoid(theta_i) + alpha,
/// so every mu_i stays strictly inside (alpha, 1 - alpha). Logits are clamped
/// to [-kThetaClamp, kThetaClamp] on construction. Instances are immutable;
/// updates build a new object.
class PolicyParams {
 public:
  explicit PolicyParams(std::vector<double> theta, double alpha = kDefaultAlpha);

  /// All-zero logits, i.e. mu_i = 0.5 everywhere.
  static PolicyParams uniform(std::size_t n, double alpha = kDefaultAlpha);

  std::size_t size() const noexcept { return theta_.size(); }
  double alpha() const noexcept { return alpha_; }
  std::span<const double> theta() const noexcept { return theta_; }
  std::span<const double> mu() const noexcept { return mu_; }
  double mu(std::size_t i) const { return mu_[i]; }

 private:
  std::vector<double> theta_;
  double alpha_;
  std::vector<double> mu_;
};

/// mu_i for every coordinate.
std::vector<double> probs(const PolicyParams& params);

/// log p_theta(x) as a sum of per-coordinate logs.
double log_prob(const PolicyParams& params, std::span<const Spin> x);

/// Score function d/dtheta log p_theta(x).
std::vector<double> grad_log_prob(const PolicyParams& params, std::span<const Spin> x);

/// out += scale * grad_log_prob(params, x), without allocating.
void accumulate_grad_log_prob(const PolicyParams& params, std::span<const Spin> x,
                              double scale, std::span<double> out);

/// Independent Bernoulli draws from p_theta.
std::vector<SpinVector> sample_direct(const PolicyParams& params, std::size_t count, Rng& rng);

}  // namespace mcpg

#endif  // MCPG_POLICY_HPP
