#include "mcpg/objective.hpp"

#include <stdexcept>

namespace mcpg {
namespace {

/// Forwards every delta to the objective's stateless flip evaluation.
class GenericState final : public LocalState {
 public:
  GenericState(const Objective& obj, SpinVector x, double value)
      : LocalState(std::move(x), value), obj_(obj) {}

  double delta(std::size_t i) const override { return obj_.flip_delta(x_, i); }

 protected:
  void on_flip(std::size_t) override {}

 private:
  const Objective& obj_;
};

}  // namespace

void LocalState::flip(std::size_t i, double known_delta) {
  if (i >= x_.size()) throw std::out_of_range("LocalState::flip: index out of range");
  on_flip(i);
  x_[i] = static_cast<Spin>(-x_[i]);
  value_ += known_delta;
}

void Objective::check_dims(std::span<const Spin> x) const {
  if (x.size() != size()) {
    throw std::invalid_argument(name() + ": dimension mismatch (got " + std::to_string(x.size()) +
                                ", expected " + std::to_string(size()) + ")");
  }
}

double Objective::value(std::span<const Spin> x) const {
  check_dims(x);
  return evaluate(x);
}

double Objective::flip_delta(std::span<const Spin> x, std::size_t i) const {
  check_dims(x);
  if (i >= size()) throw std::out_of_range(name() + ": flip index out of range");
  return evaluate_flip(x, i);
}

std::unique_ptr<LocalState> Objective::make_state(SpinVector x) const {
  check_dims(x);
  return build_state(std::move(x));
}

double Objective::evaluate_flip(std::span<const Spin> x, std::size_t i) const {
  SpinVector y(x.begin(), x.end());
  y[i] = static_cast<Spin>(-y[i]);
  return evaluate(y) - evaluate(x);
}

std::unique_ptr<LocalState> Objective::build_state(SpinVector x) const {
  const double v = evaluate(x);
  return std::make_unique<GenericState>(*this, std::move(x), v);
}

CallbackObjective::CallbackObjective(std::size_t n, Function f, std::string name)
    : n_(n), f_(std::move(f)), name_(std::move(name)) {
  if (!f_) throw std::invalid_argument("CallbackObjective: empty function");
}

}  // namespace mcpg
