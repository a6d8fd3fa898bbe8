#include <cmath>
#include <stdexcept>

#include "mcpg/problems.hpp"

namespace mcpg {

PenalizedObjective::PenalizedObjective(std::shared_ptr<const Objective> base,
                                       std::vector<Constraint> constraints, double sigma)
    : base_(std::move(base)), constraints_(std::move(constraints)), sigma_(sigma) {
  if (!base_) throw std::invalid_argument("PenalizedObjective: null base objective");
  if (!(sigma_ >= 0.0) || !std::isfinite(sigma_)) {
    throw std::invalid_argument("PenalizedObjective: sigma must be finite and nonnegative");
  }
}

double PenalizedObjective::violation(std::span<const Spin> x) const {
  double total = 0.0;
  for (const auto& c : constraints_) total += std::abs(c(x));
  return total;
}

double PenalizedObjective::evaluate(std::span<const Spin> x) const {
  return base_->value(x) + sigma_ * violation(x);
}

double PenalizedObjective::evaluate_flip(std::span<const Spin> x, std::size_t i) const {
  if (sigma_ == 0.0) return base_->flip_delta(x, i);
  const SpinVector y = flipped(x, i);
  return base_->flip_delta(x, i) + sigma_ * (violation(y) - violation(x));
}

double penalty_value(const PenalizedObjective& p, std::span<const Spin> x) { return p.value(x); }

}  // namespace mcpg
