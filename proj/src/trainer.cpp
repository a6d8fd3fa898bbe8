#include "mcpg/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace mcpg {
namespace {

// Stream identifiers for derive_seed, so every consumer of the master seed
// draws from its own generator.
constexpr std::uint64_t kInitStream = 1;
constexpr std::uint64_t kPretrainStream = 2;
constexpr std::uint64_t kEpochStream = 3;

std::size_t total_samples(std::span<const SampleBatch> batches) {
  std::size_t total = 0;
  for (const auto& b : batches) total += b.size();
  return total;
}

double l2_norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace

Variant parse_variant(std::string_view name) {
  if (name == "mcpg") return Variant::Mcpg;
  if (name == "mcpg-u") return Variant::McpgU;
  if (name == "mcpg-p") return Variant::McpgP;
  throw std::invalid_argument("unknown variant '" + std::string(name) + "'");
}

std::string to_string(Variant v) {
  switch (v) {
    case Variant::Mcpg:
      return "MCPG";
    case Variant::McpgU:
      return "MCPG-U";
    case Variant::McpgP:
      return "MCPG-P";
  }
  return "MCPG";
}

OptimizerKind parse_optimizer(std::string_view name) {
  if (name == "sgd") return OptimizerKind::Sgd;
  if (name == "adam") return OptimizerKind::Adam;
  throw std::invalid_argument("unknown optimizer '" + std::string(name) + "'");
}

std::string to_string(OptimizerKind o) { return o == OptimizerKind::Sgd ? "sgd" : "adam"; }

double LambdaSchedule::at(std::size_t epoch, double resolved_lambda0) const {
  if (epoch == 0) throw std::invalid_argument("LambdaSchedule: epochs count from 1");
  return resolved_lambda0 * std::pow(decay, static_cast<double>(epoch - 1));
}

double StepSchedule::sgd_step(std::size_t epoch, std::size_t samples_per_epoch) const {
  if (epoch == 0) throw std::invalid_argument("StepSchedule: epochs count from 1");
  return c * std::sqrt(static_cast<double>(samples_per_epoch)) /
         std::sqrt(static_cast<double>(epoch));
}

void TrainConfig::validate() const {
  if (starts == 0 || chains == 0 || transitions == 0 || epochs == 0) {
    throw std::invalid_argument("TrainConfig: k, m, t and epochs must all be >= 1");
  }
  if (lambda.lambda0 && !(*lambda.lambda0 >= 0.0)) {
    throw std::invalid_argument("TrainConfig: lambda0 must be >= 0");
  }
  if (!(lambda.decay > 0.0 && lambda.decay <= 1.0)) {
    throw std::invalid_argument("TrainConfig: lambda decay must lie in (0, 1]");
  }
  if (!(step.c > 0.0) || !(step.adam_lr > 0.0)) {
    throw std::invalid_argument("TrainConfig: step sizes must be positive");
  }
  if (!(alpha >= 0.0 && alpha < 0.5)) throw std::invalid_argument("TrainConfig: alpha must lie in [0, 0.5)");
  if (variant == Variant::McpgP && pretrain_epochs == 0) {
    throw std::invalid_argument("TrainConfig: MCPG-P needs pretrain_epochs >= 1");
  }
}

std::vector<double> advantage(std::span<const SampleBatch> batches, const PolicyParams& params,
                              double lambda) {
  const std::size_t total = total_samples(batches);
  if (total == 0) throw std::invalid_argument("advantage: empty batches");
  if (lambda < 0.0) throw std::invalid_argument("advantage: lambda must be >= 0");
  double sum = 0.0;
  for (const auto& b : batches) {
    if (b.filtered_values.size() != b.raw.size()) throw std::invalid_argument("advantage: ragged batch");
    for (double v : b.filtered_values) sum += v;
  }
  const double baseline = sum / static_cast<double>(total);
  std::vector<double> out;
  out.reserve(total);
  for (const auto& b : batches) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      double a = b.filtered_values[j] - baseline;
      if (lambda != 0.0) a += lambda * log_prob(params, b.raw[j]);
      out.push_back(a);
    }
  }
  return out;
}

std::vector<double> policy_gradient(std::span<const SampleBatch> batches,
                                    std::span<const double> advantages, const PolicyParams& params) {
  const std::size_t total = total_samples(batches);
  if (total == 0 || advantages.size() != total) {
    throw std::invalid_argument("policy_gradient: advantages do not match the batches");
  }
  std::vector<double> grad(params.size(), 0.0);
  const double scale = 1.0 / static_cast<double>(total);
  std::size_t idx = 0;
  for (const auto& b : batches) {
    for (const auto& s : b.raw) {
      const double a = advantages[idx++];
      if (a != 0.0) accumulate_grad_log_prob(params, s, a * scale, grad);
    }
  }
  return grad;
}

PolicyParams update(const PolicyParams& params, std::span<const double> gradient, double eta) {
  if (!(eta > 0.0) || !std::isfinite(eta)) throw std::invalid_argument("update: eta must be positive");
  if (gradient.size() != params.size()) throw std::invalid_argument("update: gradient size mismatch");
  std::vector<double> theta(params.theta().begin(), params.theta().end());
  for (std::size_t i = 0; i < theta.size(); ++i) {
    if (!std::isfinite(gradient[i])) throw std::invalid_argument("update: non-finite gradient entry");
    theta[i] -= eta * gradient[i];
  }
  return PolicyParams(std::move(theta), params.alpha());
}

PolicyParams AdamState::step(const PolicyParams& params, std::span<const double> gradient,
                             double lr) {
  constexpr double kBeta1 = 0.9;
  constexpr double kBeta2 = 0.999;
  constexpr double kEps = 1e-8;
  if (gradient.size() != m_.size() || params.size() != m_.size()) {
    throw std::invalid_argument("AdamState::step: size mismatch");
  }
  ++t_;
  const double c1 = 1.0 - std::pow(kBeta1, static_cast<double>(t_));
  const double c2 = 1.0 - std::pow(kBeta2, static_cast<double>(t_));
  std::vector<double> theta(params.theta().begin(), params.theta().end());
  for (std::size_t i = 0; i < theta.size(); ++i) {
    const double g = gradient[i];
    if (!std::isfinite(g)) throw std::invalid_argument("AdamState::step: non-finite gradient entry");
    m_[i] = kBeta1 * m_[i] + (1.0 - kBeta1) * g;
    v_[i] = kBeta2 * v_[i] + (1.0 - kBeta2) * g * g;
    theta[i] -= lr * (m_[i] / c1) / (std::sqrt(v_[i] / c2) + kEps);
  }
  return PolicyParams(std::move(theta), params.alpha());
}

PolicyParams pretrain_expectation(const PolicyParams& params, const Objective& obj,
                                  const PretrainOptions& options, Rng& rng) {
  if (options.epochs == 0 || options.samples == 0) {
    throw std::invalid_argument("pretrain_expectation: epochs and samples must be >= 1");
  }
  if (params.size() != obj.size()) throw std::invalid_argument("pretrain_expectation: dimension mismatch");
  PolicyParams current = params;
  std::vector<double> values(options.samples);
  for (std::size_t epoch = 1; epoch <= options.epochs; ++epoch) {
    const auto samples = sample_direct(current, options.samples, rng);
    double sum = 0.0;
    for (std::size_t j = 0; j < samples.size(); ++j) {
      values[j] = obj.value(samples[j]);
      sum += values[j];
    }
    const double baseline = sum / static_cast<double>(samples.size());
    std::vector<double> grad(current.size(), 0.0);
    const double scale = 1.0 / static_cast<double>(samples.size());
    for (std::size_t j = 0; j < samples.size(); ++j) {
      const double a = values[j] - baseline;
      if (a != 0.0) accumulate_grad_log_prob(current, samples[j], a * scale, grad);
    }
    current = update(current, grad, options.step.sgd_step(epoch, options.samples));
  }
  return current;
}

Trainer::Trainer(TrainConfig config, const Objective& obj)
    : config_(std::move(config)), obj_(obj),
      state_{PolicyParams::uniform(obj.size(), config_.alpha), {}, {},
             std::numeric_limits<double>::infinity(), 0, {}} {
  config_.validate();
  check_filter_applicable(config_.filter, obj_);
  if (obj_.size() == 0) throw std::invalid_argument("Trainer: empty objective");

  Rng init = make_rng(config_.seed, kInitStream);
  state_.starts.reserve(config_.starts);
  for (std::size_t i = 0; i < config_.starts; ++i) state_.starts.push_back(random_spins(obj_.size(), init));

  if (config_.starts * config_.chains == 1) {
    warnings_.emplace_back(
        "k*m = 1: with lambda = 0 every advantage is zero, so the policy cannot move");
  }
  if (config_.variant == Variant::McpgP) {
    Rng rng = make_rng(config_.seed, kPretrainStream);
    PretrainOptions opts{config_.pretrain_epochs, config_.starts * config_.chains, config_.step};
    state_.params = pretrain_expectation(state_.params, obj_, opts, rng);
  }
  if (config_.optimizer == OptimizerKind::Adam) adam_.emplace(obj_.size());
  if (config_.lambda.lambda0) lambda0_ = *config_.lambda.lambda0;
}

void Trainer::step() {
  const std::size_t epoch = ++state_.epoch;
  const SamplerOptions sampler{config_.transitions, config_.chains, config_.filter};
  batches_ = sample_batches(state_.params, state_.starts, sampler, obj_,
                            derive_seed(config_.seed, kEpochStream, epoch));

  const std::size_t km = config_.starts * config_.chains;
  double sum = 0.0;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const auto& batch : batches_) {
    for (std::size_t j = 0; j < batch.size(); ++j) {
      const double v = batch.filtered_values[j];
      sum += v;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
      if (v < state_.best_value) {
        state_.best_value = v;
        state_.best_solution = batch.filtered[j];
      }
    }
  }

  EpochRecord record;
  record.epoch = epoch;
  record.mean_value = sum / static_cast<double>(km);

  if (config_.variant == Variant::Mcpg) {
    if (!lambda0_) lambda0_ = 0.1 * (hi - lo);
    const double lambda = config_.lambda.at(epoch, *lambda0_);
    const auto adv = advantage(batches_, state_.params, lambda);
    const auto grad = policy_gradient(batches_, adv, state_.params);
    record.lambda = lambda;
    record.grad_norm = l2_norm(grad);
    if (adam_) {
      record.step = config_.step.adam_lr;
      state_.params = adam_->step(state_.params, grad, record.step);
    } else {
      record.step = config_.step.sgd_step(epoch, km);
      state_.params = update(state_.params, grad, record.step);
    }
  }

  for (std::size_t i = 0; i < batches_.size(); ++i) {
    state_.starts[i] = batches_[i].filtered[batches_[i].best_index()];
  }
  record.best_value = state_.best_value;
  state_.history.push_back(record);
}

void Trainer::run_all() {
  while (state_.epoch < config_.epochs) step();
}

TrainResult Trainer::result() const {
  TrainResult r;
  r.best_solution = state_.best_solution;
  r.best_value = state_.best_value;
  r.history = state_.history;
  r.lambda0 = lambda0_.value_or(0.0);
  r.warnings = warnings_;
  return r;
}

TrainResult run(const TrainConfig& config, const Objective& obj) {
  Trainer trainer(config, obj);
  trainer.run_all();
  return trainer.result();
}

}  // namespace mcpg
