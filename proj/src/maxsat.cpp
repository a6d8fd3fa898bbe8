#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "mcpg/problems.hpp"

namespace mcpg {

MaxSatInstance::MaxSatInstance(std::size_t num_vars, std::vector<Clause> clauses)
    : n_(num_vars), clauses_(std::move(clauses)) {
  for (std::size_t c = 0; c < clauses_.size(); ++c) {
    const Clause& clause = clauses_[c];
    if (clause.literals.empty()) {
      throw std::invalid_argument("MaxSatInstance: clause " + std::to_string(c) + " is empty");
    }
    std::vector<int> vars;
    vars.reserve(clause.literals.size());
    for (int lit : clause.literals) {
      const int v = std::abs(lit);
      if (lit == 0 || static_cast<std::size_t>(v) > n_) {
        throw std::invalid_argument("MaxSatInstance: literal " + std::to_string(lit) +
                                    " out of range in clause " + std::to_string(c));
      }
      vars.push_back(v);
    }
    std::sort(vars.begin(), vars.end());
    if (std::adjacent_find(vars.begin(), vars.end()) != vars.end()) {
      throw std::invalid_argument("MaxSatInstance: repeated variable in clause " + std::to_string(c));
    }
    if (!clause.hard) {
      if (!(clause.weight > 0.0)) {
        throw std::invalid_argument("MaxSatInstance: soft clause weight must be positive");
      }
      soft_total_ += clause.weight;
    }
  }
  hard_weight_ = soft_total_ + 1.0;
  for (Clause& clause : clauses_) {
    if (clause.hard) clause.weight = hard_weight_;
  }
}

std::size_t MaxSatInstance::num_hard() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(clauses_.begin(), clauses_.end(), [](const Clause& c) { return c.hard; }));
}

bool MaxSatInstance::clause_satisfied(const Clause& c, std::span<const Spin> x) {
  return std::any_of(c.literals.begin(), c.literals.end(),
                     [&](int lit) { return literal_true(lit, x); });
}

double MaxSatInstance::satisfied_soft_weight(std::span<const Spin> x) const {
  if (x.size() != n_) throw std::invalid_argument("MaxSatInstance: dimension mismatch");
  double total = 0.0;
  for (const Clause& c : clauses_) {
    if (!c.hard && clause_satisfied(c, x)) total += c.weight;
  }
  return total;
}

std::size_t MaxSatInstance::satisfied_count(std::span<const Spin> x) const {
  if (x.size() != n_) throw std::invalid_argument("MaxSatInstance: dimension mismatch");
  return static_cast<std::size_t>(std::count_if(
      clauses_.begin(), clauses_.end(), [&](const Clause& c) { return clause_satisfied(c, x); }));
}

bool MaxSatInstance::hard_satisfied(std::span<const Spin> x) const {
  if (x.size() != n_) throw std::invalid_argument("MaxSatInstance: dimension mismatch");
  return std::all_of(clauses_.begin(), clauses_.end(),
                     [&](const Clause& c) { return !c.hard || clause_satisfied(c, x); });
}

/// Keeps the number of true literals per clause.
class MaxSatObjective::State final : public LocalState {
 public:
  State(const MaxSatObjective& obj, SpinVector x) : LocalState(std::move(x), 0.0), obj_(obj) {
    const auto& clauses = obj_.instance_.clauses();
    true_count_.resize(clauses.size());
    for (std::size_t c = 0; c < clauses.size(); ++c) {
      int count = 0;
      for (int lit : clauses[c].literals) count += MaxSatInstance::literal_true(lit, x_);
      true_count_[c] = count;
    }
    value_ = obj_.evaluate(x_);
  }

  double delta(std::size_t i) const override {
    const auto& clauses = obj_.instance_.clauses();
    double d = 0.0;
    for (const Occurrence& occ : obj_.occurrences_[i]) {
      const bool currently_true = occ.positive == (x_[i] > 0);
      const int count = true_count_[occ.clause];
      if (currently_true && count == 1) d += clauses[occ.clause].weight;
      if (!currently_true && count == 0) d -= clauses[occ.clause].weight;
    }
    return d;
  }

 protected:
  void on_flip(std::size_t i) override {
    for (const Occurrence& occ : obj_.occurrences_[i]) {
      const bool currently_true = occ.positive == (x_[i] > 0);
      true_count_[occ.clause] += currently_true ? -1 : 1;
    }
  }

 private:
  const MaxSatObjective& obj_;
  std::vector<int> true_count_;
};

MaxSatObjective::MaxSatObjective(MaxSatInstance instance)
    : instance_(std::move(instance)), occurrences_(instance_.num_vars()) {
  const auto& clauses = instance_.clauses();
  for (std::size_t c = 0; c < clauses.size(); ++c) {
    for (int lit : clauses[c].literals) {
      occurrences_[static_cast<std::size_t>(std::abs(lit)) - 1].push_back({c, lit > 0});
    }
  }
}

double MaxSatObjective::evaluate(std::span<const Spin> x) const {
  double total = 0.0;
  for (const Clause& c : instance_.clauses()) {
    if (MaxSatInstance::clause_satisfied(c, x)) total += c.weight;
  }
  return -total;
}

double MaxSatObjective::evaluate_flip(std::span<const Spin> x, std::size_t i) const {
  const auto& clauses = instance_.clauses();
  double d = 0.0;
  for (const Occurrence& occ : occurrences_[i]) {
    const Clause& clause = clauses[occ.clause];
    int count = 0;
    for (int lit : clause.literals) count += MaxSatInstance::literal_true(lit, x);
    const bool currently_true = occ.positive == (x[i] > 0);
    if (currently_true && count == 1) d += clause.weight;
    if (!currently_true && count == 0) d -= clause.weight;
  }
  return d;
}

std::unique_ptr<LocalState> MaxSatObjective::build_state(SpinVector x) const {
  return std::make_unique<State>(*this, std::move(x));
}

}  // namespace mcpg
