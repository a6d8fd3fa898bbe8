#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mcpg/problems.hpp"

namespace mcpg {

double cheeger_sentinel(const MaxCutInstance& g) {
  double total_abs = 0.0;
  for (const Edge& e : g.edges()) total_abs += std::abs(e.weight);
  return 1e6 * (1.0 + total_abs);
}

namespace {

double cheeger_ratio(double cut, std::size_t side_plus, std::size_t n, CheegerKind kind,
                     double sentinel) {
  const std::size_t side_minus = n - side_plus;
  if (side_plus == 0 || side_minus == 0) return sentinel;
  if (kind == CheegerKind::Ratio) {
    return cut / static_cast<double>(std::min(side_plus, side_minus));
  }
  return cut / static_cast<double>(side_plus) + cut / static_cast<double>(side_minus);
}

std::size_t count_plus(std::span<const Spin> x) {
  return static_cast<std::size_t>(std::count(x.begin(), x.end(), Spin{1}));
}

}  // namespace

double cheeger_value(const MaxCutInstance& g, std::span<const Spin> x, CheegerKind kind) {
  if (x.size() != g.num_nodes()) throw std::invalid_argument("cheeger_value: dimension mismatch");
  return cheeger_ratio(g.cut_weight(x), count_plus(x), g.num_nodes(), kind, cheeger_sentinel(g));
}

/// Tracks the cut weight and |S| so a flip delta costs one neighbour scan.
class CheegerObjective::State final : public LocalState {
 public:
  State(const CheegerObjective& obj, SpinVector x)
      : LocalState(std::move(x), 0.0), obj_(obj) {
    cut_ = obj_.instance_.cut_weight(x_);
    plus_ = count_plus(x_);
    value_ = obj_.ratio(cut_, plus_);
  }

  double delta(std::size_t i) const override {
    const double new_cut = cut_ + cut_change(i);
    const std::size_t new_plus = x_[i] > 0 ? plus_ - 1 : plus_ + 1;
    return obj_.ratio(new_cut, new_plus) - obj_.ratio(cut_, plus_);
  }

 protected:
  void on_flip(std::size_t i) override {
    cut_ += cut_change(i);
    plus_ = x_[i] > 0 ? plus_ - 1 : plus_ + 1;
  }

 private:
  double cut_change(std::size_t i) const {
    double change = 0.0;
    for (const Neighbor& nb : obj_.instance_.neighbors(i)) {
      const double w = obj_.instance_.edges()[nb.edge].weight;
      change += x_[nb.node] == x_[i] ? w : -w;
    }
    return change;
  }

  const CheegerObjective& obj_;
  double cut_ = 0.0;
  std::size_t plus_ = 0;
};

CheegerObjective::CheegerObjective(MaxCutInstance instance, CheegerKind kind)
    : instance_(std::move(instance)), kind_(kind), sentinel_(cheeger_sentinel(instance_)) {}

std::string CheegerObjective::name() const {
  return kind_ == CheegerKind::Ratio ? "cheeger-rcc" : "cheeger-ncc";
}

double CheegerObjective::ratio(double cut, std::size_t side_plus) const {
  return cheeger_ratio(cut, side_plus, instance_.num_nodes(), kind_, sentinel_);
}

double CheegerObjective::evaluate(std::span<const Spin> x) const {
  return ratio(instance_.cut_weight(x), count_plus(x));
}

std::unique_ptr<LocalState> CheegerObjective::build_state(SpinVector x) const {
  return std::make_unique<State>(*this, std::move(x));
}

}  // namespace mcpg
