#ifndef MCPG_FILTER_HPP
#define MCPG_FILTER_HPP

#include <cstddef>
#include <span>
#include <string>
#include <string_view>

#include "mcpg/objective.hpp"
#include "mcpg/rng.hpp"
#include "mcpg/spin.hpp"

namespace mcpg {

/// A move is accepted only if it lowers the objective by more than this.
inline constexpr double kImprovementTolerance = 1e-9;

/// Filter T(x): maps a sample to a no-worse point near it.
struct FilterKind {
  enum class Type { Identity, KFlip, LocalSearch, EdgeLocalSearch };

  Type type = Type::Identity;
  int k = 1;                     // KFlip radius, 1 or 2
  bool until_converged = false;  // LocalSearch / EdgeLocalSearch: repeat sweeps until a fixed point

  static FilterKind identity() { return {Type::Identity, 0, false}; }
  static FilterKind kflip(int k);
  static FilterKind local_search(bool until_converged = false) {
    return {Type::LocalSearch, 0, until_converged};
  }
  static FilterKind edge_local_search(bool until_converged = false) {
    return {Type::EdgeLocalSearch, 0, until_converged};
  }

  /// Accepts the CLI names none, kflip1, kflip2, ls, edge-ls (and ls-conv,
  /// edge-ls-conv for the repeated variants).
  static FilterKind parse(std::string_view name);
  std::string to_string() const;

  bool operator==(const FilterKind&) const = default;
};

/// KFlip(2) enumerates O(n^2) candidates and is refused above this size.
inline constexpr std::size_t kMaxKFlip2Size = 5000;

/// Throws std::invalid_argument if `kind` cannot run on `obj` (edge search on
/// a graph-free objective, KFlip(2) above kMaxKFlip2Size).
void check_filter_applicable(const FilterKind& kind, const Objective& obj);

/// Applies the filter. Local-search sweeps visit indices (or edges) in a
/// fresh uniformly random order drawn from rng.
SpinVector apply_filter(const FilterKind& kind, const Objective& obj, SpinVector x, Rng& rng);

/// Same as apply_filter but sweeps in natural index order, so the result is a
/// deterministic function of x. Used wherever T must be enumerable.
SpinVector apply_filter_ordered(const FilterKind& kind, const Objective& obj, SpinVector x);

/// Best point in the Hamming ball of radius k (k in {1, 2}). Keeps x unless a
/// strict improvement exists; among equal best improvements the lexicographically
/// smallest flip set wins.
SpinVector kflip_projection(const Objective& obj, SpinVector x, int k);

/// One greedy sweep: for each index in `order`, flip it if that strictly lowers f.
SpinVector local_search_pass(const Objective& obj, SpinVector x, std::span<const std::size_t> order);

/// One sweep over edges in `edge_order`, flipping both endpoints of an edge
/// together when that strictly lowers f. Throws std::invalid_argument when the
/// objective has no graph.
SpinVector edge_local_search_pass(const Objective& obj, SpinVector x,
                                  std::span<const std::size_t> edge_order);

}  // namespace mcpg

#endif  // MCPG_FILTER_HPP
