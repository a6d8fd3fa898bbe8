#include "mcpg/filter.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "mcpg/problems.hpp"

namespace mcpg {
namespace {

constexpr std::size_t kMaxSweeps = 10000;

void check_permutation(std::span<const std::size_t> order, std::size_t n, const char* what) {
  if (order.size() != n) throw std::invalid_argument(std::string(what) + ": order has wrong length");
  std::vector<bool> seen(n, false);
  for (std::size_t i : order) {
    if (i >= n || seen[i]) throw std::invalid_argument(std::string(what) + ": not a permutation");
    seen[i] = true;
  }
}

const MaxCutInstance& require_graph(const Objective& obj) {
  const MaxCutInstance* g = obj.graph();
  if (g == nullptr) {
    throw std::invalid_argument("edge local search needs a graph objective, got " + obj.name());
  }
  return *g;
}

bool sweep_nodes(LocalState& state, std::span<const std::size_t> order) {
  bool moved = false;
  for (std::size_t i : order) {
    const double d = state.delta(i);
    if (d < -kImprovementTolerance) {
      state.flip(i, d);
      moved = true;
    }
  }
  return moved;
}

bool sweep_edges(LocalState& state, const MaxCutInstance& g, std::span<const std::size_t> order) {
  bool moved = false;
  for (std::size_t k : order) {
    const Edge& e = g.edges()[k];
    const double du = state.delta(e.u);
    state.flip(e.u, du);
    const double dv = state.delta(e.v);
    if (du + dv < -kImprovementTolerance) {
      state.flip(e.v, dv);
      moved = true;
    } else {
      state.flip(e.u, -du);
    }
  }
  return moved;
}

std::vector<std::size_t> iota_order(std::size_t n) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  return order;
}

SpinVector run_sweeps(const Objective& obj, SpinVector x, const FilterKind& kind,
                      std::span<const std::size_t> order) {
  auto state = obj.make_state(std::move(x));
  const bool edges = kind.type == FilterKind::Type::EdgeLocalSearch;
  const MaxCutInstance* g = edges ? &require_graph(obj) : nullptr;
  for (std::size_t sweep = 0; sweep < kMaxSweeps; ++sweep) {
    const bool moved = edges ? sweep_edges(*state, *g, order) : sweep_nodes(*state, order);
    if (!moved || !kind.until_converged) break;
  }
  return state->spins();
}

}  // namespace

FilterKind FilterKind::kflip(int k) {
  if (k != 1 && k != 2) throw std::invalid_argument("FilterKind::kflip: k must be 1 or 2");
  return {Type::KFlip, k, false};
}

FilterKind FilterKind::parse(std::string_view name) {
  if (name == "none" || name == "identity") return identity();
  if (name == "kflip1") return kflip(1);
  if (name == "kflip2") return kflip(2);
  if (name == "ls") return local_search(false);
  if (name == "ls-conv") return local_search(true);
  if (name == "edge-ls") return edge_local_search(false);
  if (name == "edge-ls-conv") return edge_local_search(true);
  throw std::invalid_argument("unknown filter '" + std::string(name) + "'");
}

std::string FilterKind::to_string() const {
  switch (type) {
    case Type::Identity:
      return "none";
    case Type::KFlip:
      return "kflip" + std::to_string(k);
    case Type::LocalSearch:
      return until_converged ? "ls-conv" : "ls";
    case Type::EdgeLocalSearch:
      return until_converged ? "edge-ls-conv" : "edge-ls";
  }
  return "none";
}

void check_filter_applicable(const FilterKind& kind, const Objective& obj) {
  if (kind.type == FilterKind::Type::EdgeLocalSearch) require_graph(obj);
  if (kind.type == FilterKind::Type::KFlip) {
    if (kind.k != 1 && kind.k != 2) throw std::invalid_argument("KFlip radius must be 1 or 2");
    if (kind.k == 2 && obj.size() > kMaxKFlip2Size) {
      throw std::invalid_argument("KFlip(2) is limited to n <= 5000");
    }
  }
}

SpinVector kflip_projection(const Objective& obj, SpinVector x, int k) {
  if (k != 1 && k != 2) throw std::invalid_argument("kflip_projection: k must be 1 or 2");
  const std::size_t n = obj.size();
  if (k == 2 && n > kMaxKFlip2Size) {
    throw std::invalid_argument("kflip_projection: k = 2 is limited to n <= 5000");
  }
  auto state = obj.make_state(std::move(x));
  double best = -kImprovementTolerance;
  std::size_t best_i = n;
  std::size_t best_j = n;  // n means "single flip"
  for (std::size_t i = 0; i < n; ++i) {
    const double di = state->delta(i);
    if (di < best) {
      best = di;
      best_i = i;
      best_j = n;
    }
    if (k == 2) {
      state->flip(i, di);
      for (std::size_t j = i + 1; j < n; ++j) {
        const double dij = di + state->delta(j);
        if (dij < best) {
          best = dij;
          best_i = i;
          best_j = j;
        }
      }
      state->flip(i, -di);
    }
  }
  SpinVector out = state->spins();
  if (best_i < n) out[best_i] = static_cast<Spin>(-out[best_i]);
  if (best_j < n) out[best_j] = static_cast<Spin>(-out[best_j]);
  return out;
}

SpinVector local_search_pass(const Objective& obj, SpinVector x, std::span<const std::size_t> order) {
  check_permutation(order, obj.size(), "local_search_pass");
  auto state = obj.make_state(std::move(x));
  sweep_nodes(*state, order);
  return state->spins();
}

SpinVector edge_local_search_pass(const Objective& obj, SpinVector x,
                                  std::span<const std::size_t> edge_order) {
  const MaxCutInstance& g = require_graph(obj);
  check_permutation(edge_order, g.num_edges(), "edge_local_search_pass");
  auto state = obj.make_state(std::move(x));
  sweep_edges(*state, g, edge_order);
  return state->spins();
}

SpinVector apply_filter(const FilterKind& kind, const Objective& obj, SpinVector x, Rng& rng) {
  switch (kind.type) {
    case FilterKind::Type::Identity:
      if (x.size() != obj.size()) throw std::invalid_argument("apply_filter: dimension mismatch");
      return x;
    case FilterKind::Type::KFlip:
      return kflip_projection(obj, std::move(x), kind.k);
    case FilterKind::Type::LocalSearch: {
      auto order = iota_order(obj.size());
      std::shuffle(order.begin(), order.end(), rng);
      return run_sweeps(obj, std::move(x), kind, order);
    }
    case FilterKind::Type::EdgeLocalSearch: {
      auto order = iota_order(require_graph(obj).num_edges());
      std::shuffle(order.begin(), order.end(), rng);
      return run_sweeps(obj, std::move(x), kind, order);
    }
  }
  return x;
}

SpinVector apply_filter_ordered(const FilterKind& kind, const Objective& obj, SpinVector x) {
  switch (kind.type) {
    case FilterKind::Type::Identity:
      if (x.size() != obj.size()) throw std::invalid_argument("apply_filter: dimension mismatch");
      return x;
    case FilterKind::Type::KFlip:
      return kflip_projection(obj, std::move(x), kind.k);
    case FilterKind::Type::LocalSearch:
      return run_sweeps(obj, std::move(x), kind, iota_order(obj.size()));
    case FilterKind::Type::EdgeLocalSearch:
      return run_sweeps(obj, std::move(x), kind, iota_order(require_graph(obj).num_edges()));
  }
  return x;
}

}  // namespace mcpg
