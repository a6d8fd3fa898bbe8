#ifndef MCPG_TRAINER_HPP
#define MCPG_TRAINER_HPP

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mcpg/filter.hpp"
#include "mcpg/objective.hpp"
#include "mcpg/policy.hpp"
#include "mcpg/sampler.hpp"

namespace mcpg {

enum class Variant {
  Mcpg,   // trained policy
  McpgU,  // fixed mu = 0.5, never updated
  McpgP,  // policy pretrained on E[f] by direct sampling, then frozen
};

enum class OptimizerKind { Sgd, Adam };

Variant parse_variant(std::string_view name);
std::string to_string(Variant v);
OptimizerKind parse_optimizer(std::string_view name);
std::string to_string(OptimizerKind o);

/// lambda_t = lambda0 * decay^t. When lambda0 is unset it is taken as
/// 0.1 * (max - min) of the first epoch's filtered values.
struct LambdaSchedule {
  std::optional<double> lambda0;
  double decay = 0.97;

  double at(std::size_t epoch, double resolved_lambda0) const;
};

/// eta_t = c * sqrt(m k) / sqrt(t) for plain SGD. Adam uses a constant
/// learning rate adam_lr instead.
struct StepSchedule {
  double c = 0.01;
  double adam_lr = 0.1;

  double sgd_step(std::size_t epoch, std::size_t samples_per_epoch) const;
};

struct TrainConfig {
  std::size_t starts = 16;       // k
  std::size_t chains = 32;       // m, chains per start
  std::size_t transitions = 10;  // t
  std::size_t epochs = 100;      // tau
  LambdaSchedule lambda;
  StepSchedule step;
  OptimizerKind optimizer = OptimizerKind::Sgd;
  double alpha = kDefaultAlpha;
  FilterKind filter = FilterKind::local_search();
  Variant variant = Variant::Mcpg;
  std::size_t pretrain_epochs = 50;  // MCPG-P only
  std::uint64_t seed = 0;

  /// Throws std::invalid_argument if a count is zero or a rate is out of range.
  void validate() const;
};

struct EpochRecord {
  std::size_t epoch = 0;
  double best_value = 0.0;
  double mean_value = 0.0;  // mean filtered value of the epoch's samples
  double grad_norm = 0.0;
  double lambda = 0.0;
  double step = 0.0;
};

struct TrainResult {
  SpinVector best_solution;
  double best_value = std::numeric_limits<double>::infinity();
  std::vector<EpochRecord> history;
  double lambda0 = 0.0;  // the lambda0 actually used
  std::vector<std::string> warnings;
};

/// A_lambda(s) = f(T(s)) + lambda log p(s) - mean of f(T(s)) over all k*m samples,
/// flattened batch by batch.
std::vector<double> advantage(std::span<const SampleBatch> batches, const PolicyParams& params,
                              double lambda);

/// (1 / km) sum A(s) grad log p(s), reduced in a fixed order.
std::vector<double> policy_gradient(std::span<const SampleBatch> batches,
                                    std::span<const double> advantages, const PolicyParams& params);

/// theta - eta * gradient, clamped by PolicyParams.
PolicyParams update(const PolicyParams& params, std::span<const double> gradient, double eta);

struct PretrainOptions {
  std::size_t epochs = 50;
  std::size_t samples = 512;  // per epoch
  StepSchedule step;
};

/// Minimizes E_p[f] with direct sampling, lambda = 0 and no filter.
PolicyParams pretrain_expectation(const PolicyParams& params, const Objective& obj,
                                  const PretrainOptions& options, Rng& rng);

/// Adam moment estimates for the optional adaptive update.
class AdamState {
 public:
  explicit AdamState(std::size_t n) : m_(n, 0.0), v_(n, 0.0) {}
  PolicyParams step(const PolicyParams& params, std::span<const double> gradient, double lr);

 private:
  std::vector<double> m_;
  std::vector<double> v_;
  std::size_t t_ = 0;
};

/// Solver state evolving across epochs.
struct TrainState {
  PolicyParams params;
  std::vector<SpinVector> starts;
  SpinVector best_solution;
  double best_value = std::numeric_limits<double>::infinity();
  std::size_t epoch = 0;
  std::vector<EpochRecord> history;
};

/// Runs MCPG epoch by epoch: sample, filter, compute advantages and the policy
/// gradient, update theta, and restart every chain group from its best
/// filtered sample.
class Trainer {
 public:
  Trainer(TrainConfig config, const Objective& obj);

  /// One epoch.
  void step();
  void run_all();

  const TrainState& state() const noexcept { return state_; }
  const std::vector<SampleBatch>& last_batches() const noexcept { return batches_; }
  const TrainConfig& config() const noexcept { return config_; }
  TrainResult result() const;

 private:
  TrainConfig config_;
  const Objective& obj_;
  TrainState state_;
  std::optional<AdamState> adam_;
  std::vector<SampleBatch> batches_;
  std::optional<double> lambda0_;
  std::vector<std::string> warnings_;
};

TrainResult run(const TrainConfig& config, const Objective& obj);

}  // namespace mcpg

#endif  // MCPG_TRAINER_HPP
