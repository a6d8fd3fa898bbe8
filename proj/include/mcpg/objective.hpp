#ifndef MCPG_OBJECTIVE_HPP
#define MCPG_OBJECTIVE_HPP

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>

#include "mcpg/spin.hpp"

namespace mcpg {

struct MaxCutInstance;

/// Per-chain scratch for incremental evaluation.
///
/// A state owns a copy of the current assignment and whatever caches the
/// objective needs (local fields, clause counters, cut size...) so that
/// single-flip deltas cost O(degree) rather than a full re-evaluation. States
/// are never shared between chains.
class LocalState {
 public:
  virtual ~LocalState() = default;

  const SpinVector& spins() const noexcept { return x_; }
  std::size_t size() const noexcept { return x_.size(); }

  /// Running objective value, updated by flip(). Accumulates rounding; use
  /// Objective::value for an exact figure.
  double value() const noexcept { return value_; }

  /// value(flip(x, i)) - value(x) for the current x.
  virtual double delta(std::size_t i) const = 0;

  void flip(std::size_t i) { flip(i, delta(i)); }
  void flip(std::size_t i, double known_delta);

 protected:
  LocalState(SpinVector x, double value) : x_(std::move(x)), value_(value) {}

  /// Refresh caches for a flip of coordinate i; x_[i] still holds the old spin.
  virtual void on_flip(std::size_t i) = 0;

  SpinVector x_;
  double value_;
};

/// A minimization objective f : {-1,+1}^n -> R.
///
/// Maximization problems are negated by their implementations so the solver
/// always minimizes. Objectives are immutable after construction and safe to
/// share between threads.
class Objective {
 public:
  virtual ~Objective() = default;

  virtual std::size_t size() const noexcept = 0;
  virtual std::string name() const = 0;

  /// Throws std::invalid_argument on dimension mismatch.
  double value(std::span<const Spin> x) const;

  /// value(flip(x, i)) - value(x). Throws std::out_of_range for i >= n.
  double flip_delta(std::span<const Spin> x, std::size_t i) const;

  std::unique_ptr<LocalState> make_state(SpinVector x) const;

  /// The underlying graph for graph-structured objectives (MaxCut, Cheeger),
  /// nullptr otherwise.
  virtual const MaxCutInstance* graph() const noexcept { return nullptr; }

 protected:
  virtual double evaluate(std::span<const Spin> x) const = 0;
  /// Default: full re-evaluation of the flipped point.
  virtual double evaluate_flip(std::span<const Spin> x, std::size_t i) const;
  /// Default: a state that forwards to evaluate_flip.
  virtual std::unique_ptr<LocalState> build_state(SpinVector x) const;

  void check_dims(std::span<const Spin> x) const;
};

/// Objective defined by an arbitrary callable; used for tests and for small
/// hand-built problems.
class CallbackObjective final : public Objective {
 public:
  using Function = std::function<double(std::span<const Spin>)>;

  CallbackObjective(std::size_t n, Function f, std::string name = "callback");

  std::size_t size() const noexcept override { return n_; }
  std::string name() const override { return name_; }

 protected:
  double evaluate(std::span<const Spin> x) const override { return f_(x); }

 private:
  std::size_t n_;
  Function f_;
  std::string name_;
};

}  // namespace mcpg

#endif  // MCPG_OBJECTIVE_HPP
