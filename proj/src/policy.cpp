#include "mcpg/policy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace mcpg {
namespace {

double sigmoid(double t) { return 1.0 / (1.0 + std::exp(-t)); }

void check_dims(const PolicyParams& params, std::span<const Spin> x, const char* what) {
  if (params.size() != x.size()) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch");
  }
}

}  // namespace

PolicyParams::PolicyParams(std::vector<double> theta, double alpha)
    : theta_(std::move(theta)), alpha_(alpha), mu_(theta_.size()) {
  if (!(alpha >= 0.0 && alpha < 0.5)) {
    throw std::invalid_argument("PolicyParams: alpha must lie in [0, 0.5)");
  }
  for (std::size_t i = 0; i < theta_.size(); ++i) {
    if (!std::isfinite(theta_[i])) {
      throw std::invalid_argument("PolicyParams: non-finite logit");
    }
    theta_[i] = std::clamp(theta_[i], -kThetaClamp, kThetaClamp);
    mu_[i] = (1.0 - 2.0 * alpha_) * sigmoid(theta_[i]) + alpha_;
  }
}

PolicyParams PolicyParams::uniform(std::size_t n, double alpha) {
  return PolicyParams(std::vector<double>(n, 0.0), alpha);
}

std::vector<double> probs(const PolicyParams& params) {
  return {params.mu().begin(), params.mu().end()};
}

double log_prob(const PolicyParams& params, std::span<const Spin> x) {
  check_dims(params, x, "log_prob");
  double total = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double mu = params.mu(i);
    total += x[i] > 0 ? std::log(mu) : std::log1p(-mu);
  }
  return total;
}

void accumulate_grad_log_prob(const PolicyParams& params, std::span<const Spin> x,
                              double scale, std::span<double> out) {
  check_dims(params, x, "grad_log_prob");
  if (out.size() != x.size()) throw std::invalid_argument("grad_log_prob: output size mismatch");
  const double span = 1.0 - 2.0 * params.alpha();
  const auto theta = params.theta();
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double s = sigmoid(theta[i]);
    const double dmu = span * s * (1.0 - s);
    const double mu = params.mu(i);
    const double d = x[i] > 0 ? dmu / mu : -dmu / (1.0 - mu);
    out[i] += scale * d;
  }
}

std::vector<double> grad_log_prob(const PolicyParams& params, std::span<const Spin> x) {
  std::vector<double> g(x.size(), 0.0);
  accumulate_grad_log_prob(params, x, 1.0, g);
  return g;
}

std::vector<SpinVector> sample_direct(const PolicyParams& params, std::size_t count, Rng& rng) {
  if (count == 0) throw std::invalid_argument("sample_direct: count must be >= 1");
  std::vector<SpinVector> out(count, SpinVector(params.size()));
  for (auto& x : out) {
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = uniform01(rng) < params.mu(i) ? 1 : -1;
  }
  return out;
}

}  // namespace mcpg
