#include <algorithm>
#include <map>
#include <stdexcept>
#include <utility>

#include "mcpg/problems.hpp"

namespace mcpg {

// ---------------------------------------------------------------------------
// MaxCutInstance

MaxCutInstance::MaxCutInstance(std::size_t n, std::vector<Edge> edges)
    : n_(n), edges_(std::move(edges)), offsets_(n + 1, 0) {
  std::vector<std::pair<std::size_t, std::size_t>> seen;
  seen.reserve(edges_.size());
  for (const Edge& e : edges_) {
    if (e.u >= n_ || e.v >= n_) throw std::invalid_argument("MaxCutInstance: node id out of range");
    if (e.u == e.v) throw std::invalid_argument("MaxCutInstance: self-loop");
    seen.emplace_back(std::min(e.u, e.v), std::max(e.u, e.v));
    ++offsets_[e.u + 1];
    ++offsets_[e.v + 1];
    total_weight_ += e.weight;
  }
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
    throw std::invalid_argument("MaxCutInstance: duplicate edge");
  }
  for (std::size_t i = 0; i < n_; ++i) offsets_[i + 1] += offsets_[i];
  adjacency_.resize(offsets_[n_]);
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (std::size_t k = 0; k < edges_.size(); ++k) {
    const Edge& e = edges_[k];
    adjacency_[cursor[e.u]++] = {e.v, k};
    adjacency_[cursor[e.v]++] = {e.u, k};
  }
}

std::span<const Neighbor> MaxCutInstance::neighbors(std::size_t i) const {
  if (i >= n_) throw std::out_of_range("MaxCutInstance::neighbors: node out of range");
  return std::span<const Neighbor>(adjacency_).subspan(offsets_[i], offsets_[i + 1] - offsets_[i]);
}

double MaxCutInstance::cut_weight(std::span<const Spin> x) const {
  if (x.size() != n_) throw std::invalid_argument("cut_weight: dimension mismatch");
  double cut = 0.0;
  for (const Edge& e : edges_) {
    if (x[e.u] != x[e.v]) cut += e.weight;
  }
  return cut;
}

// ---------------------------------------------------------------------------
// IsingObjective

class IsingObjective::State final : public LocalState {
 public:
  State(const IsingObjective& obj, SpinVector x)
      : LocalState(std::move(x), 0.0), obj_(obj), field_(obj.n_) {
    for (std::size_t i = 0; i < obj_.n_; ++i) field_[i] = obj_.local_field(x_, i);
    value_ = obj_.evaluate(x_);
  }

  double delta(std::size_t i) const override { return -2.0 * x_[i] * field_[i]; }

 protected:
  void on_flip(std::size_t i) override {
    // s_i -> -s_i moves every neighbour's field by -2 J_ij s_i.
    const double step = -2.0 * x_[i];
    for (std::size_t k = obj_.offsets_[i]; k < obj_.offsets_[i + 1]; ++k) {
      const Entry& e = obj_.entries_[k];
      field_[e.node] += step * e.coupling;
    }
  }

 private:
  const IsingObjective& obj_;
  std::vector<double> field_;
};

IsingObjective::IsingObjective(std::size_t n, std::span<const Coupling> couplings,
                               std::vector<double> fields, double constant, std::string name)
    : n_(n), offsets_(n + 1, 0), fields_(std::move(fields)), constant_(constant),
      name_(std::move(name)) {
  if (fields_.empty()) fields_.assign(n_, 0.0);
  if (fields_.size() != n_) throw std::invalid_argument("IsingObjective: field vector size mismatch");

  std::map<std::pair<std::size_t, std::size_t>, double> merged;
  for (const Coupling& c : couplings) {
    if (c.i >= n_ || c.j >= n_) throw std::invalid_argument("IsingObjective: index out of range");
    if (c.i == c.j) throw std::invalid_argument("IsingObjective: diagonal coupling");
    merged[{std::min(c.i, c.j), std::max(c.i, c.j)}] += c.value;
  }
  for (const auto& [key, value] : merged) {
    ++offsets_[key.first + 1];
    ++offsets_[key.second + 1];
  }
  for (std::size_t i = 0; i < n_; ++i) offsets_[i + 1] += offsets_[i];
  entries_.resize(offsets_[n_]);
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (const auto& [key, value] : merged) {
    entries_[cursor[key.first]++] = {key.second, value};
    entries_[cursor[key.second]++] = {key.first, value};
  }
}

double IsingObjective::local_field(std::span<const Spin> x, std::size_t i) const {
  double f = fields_[i];
  for (std::size_t k = offsets_[i]; k < offsets_[i + 1]; ++k) {
    f += entries_[k].coupling * x[entries_[k].node];
  }
  return f;
}

double IsingObjective::evaluate(std::span<const Spin> x) const {
  double linear = 0.0;
  double quadratic = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    linear += fields_[i] * x[i];
    for (std::size_t k = offsets_[i]; k < offsets_[i + 1]; ++k) {
      if (entries_[k].node > i) quadratic += entries_[k].coupling * x[i] * x[entries_[k].node];
    }
  }
  return constant_ + linear + quadratic;
}

double IsingObjective::evaluate_flip(std::span<const Spin> x, std::size_t i) const {
  return -2.0 * x[i] * local_field(x, i);
}

std::unique_ptr<LocalState> IsingObjective::build_state(SpinVector x) const {
  return std::make_unique<State>(*this, std::move(x));
}

// ---------------------------------------------------------------------------
// MaxCut

namespace {

std::vector<IsingObjective::Coupling> cut_couplings(const MaxCutInstance& g) {
  std::vector<IsingObjective::Coupling> out;
  out.reserve(g.num_edges());
  for (const Edge& e : g.edges()) out.push_back({e.u, e.v, 0.5 * e.weight});
  return out;
}

}  // namespace

MaxCutObjective::MaxCutObjective(MaxCutInstance instance)
    : IsingObjective(instance.num_nodes(), cut_couplings(instance), {},
                     -0.5 * instance.total_weight(), "maxcut"),
      instance_(std::move(instance)) {}

// ---------------------------------------------------------------------------
// QUBO

QuboInstance::QuboInstance(std::size_t n, std::vector<QuboEntry> entries) : n_(n) {
  std::map<std::pair<std::size_t, std::size_t>, double> merged;
  for (const QuboEntry& e : entries) {
    if (e.i >= n_ || e.j >= n_) throw std::invalid_argument("QuboInstance: index out of range");
    merged[{std::min(e.i, e.j), std::max(e.i, e.j)}] += e.q;
  }
  entries_.reserve(merged.size());
  for (const auto& [key, q] : merged) entries_.push_back({key.first, key.second, q});
}

double QuboInstance::value01(std::span<const int> bits) const {
  if (bits.size() != n_) throw std::invalid_argument("QuboInstance::value01: dimension mismatch");
  double total = 0.0;
  for (const QuboEntry& e : entries_) {
    if (bits[e.i] && bits[e.j]) total += (e.i == e.j ? 1.0 : 2.0) * e.q;
  }
  return total;
}

double SpinForm::evaluate(std::span<const Spin> s) const {
  if (s.size() != n) throw std::invalid_argument("SpinForm::evaluate: dimension mismatch");
  double total = constant;
  for (std::size_t i = 0; i < n; ++i) total += linear[i] * s[i];
  for (const auto& c : quadratic) total += c.value * s[c.i] * s[c.j];
  return total;
}

SpinForm qubo_to_spin(const QuboInstance& q) {
  // x = (s + 1) / 2 gives x_i x_j = (s_i s_j + s_i + s_j + 1) / 4 and x_i^2 = (s_i + 1) / 2.
  SpinForm form;
  form.n = q.size();
  form.linear.assign(form.n, 0.0);
  for (const QuboEntry& e : q.entries()) {
    if (e.i == e.j) {
      form.linear[e.i] += 0.5 * e.q;
      form.constant += 0.5 * e.q;
    } else {
      // 2 q x_i x_j
      form.quadratic.push_back({e.i, e.j, 0.5 * e.q});
      form.linear[e.i] += 0.5 * e.q;
      form.linear[e.j] += 0.5 * e.q;
      form.constant += 0.5 * e.q;
    }
  }
  return form;
}

namespace {

SpinForm negated(SpinForm form) {
  for (auto& c : form.quadratic) c.value = -c.value;
  for (auto& h : form.linear) h = -h;
  form.constant = -form.constant;
  return form;
}

}  // namespace

QuboObjective::QuboObjective(QuboInstance instance)
    : QuboObjective(instance, negated(qubo_to_spin(instance))) {}

QuboObjective::QuboObjective(QuboInstance instance, const SpinForm& form)
    : IsingObjective(form.n, form.quadratic, form.linear, form.constant, "qubo"),
      instance_(std::move(instance)) {}

}  // namespace mcpg
