#ifndef MCPG_SAMPLER_HPP
#define MCPG_SAMPLER_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mcpg/filter.hpp"
#include "mcpg/objective.hpp"
#include "mcpg/policy.hpp"
#include "mcpg/rng.hpp"

namespace mcpg {

/// Terminal states of the m chains launched from one starting point, before
/// (raw) and after (filtered) the filter.
struct SampleBatch {
  std::size_t start_index = 0;
  std::vector<SpinVector> raw;
  std::vector<SpinVector> filtered;
  std::vector<double> filtered_values;

  std::size_t size() const noexcept { return raw.size(); }
  /// Index of the lowest filtered value; the first one on ties.
  std::size_t best_index() const;
};

struct MhStats {
  std::uint64_t proposals = 0;
  std::uint64_t accepted = 0;
  /// Smallest acceptance probability met by any proposal.
  double min_acceptance = 1.0;
};

/// Probability of accepting a flip of coordinate i from state x under the
/// product target: min(1, p(x') / p(x)).
double mh_acceptance(const PolicyParams& params, std::span<const Spin> x, std::size_t i);

/// Runs a Metropolis-Hastings chain for `steps` transitions with a uniformly
/// chosen single-coordinate flip proposal and returns the final state.
SpinVector mh_chain(const PolicyParams& params, SpinVector start, std::size_t steps, Rng& rng,
                    MhStats* stats = nullptr);

struct SamplerOptions {
  std::size_t transitions = 10;       // t
  std::size_t chains_per_start = 32;  // m
  FilterKind filter = FilterKind::local_search();
};

/// Launches chains_per_start chains from every start, each with its own
/// generator derived from `seed` and the chain index, then filters every
/// terminal state. Output is independent of thread scheduling.
std::vector<SampleBatch> sample_batches(const PolicyParams& params,
                                        std::span<const SpinVector> starts,
                                        const SamplerOptions& options, const Objective& obj,
                                        std::uint64_t seed);

}  // namespace mcpg

#endif  // MCPG_SAMPLER_HPP
