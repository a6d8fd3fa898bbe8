#ifndef MCPG_RNG_HPP
#define MCPG_RNG_HPP

#include <cstdint>
#include <random>

#include "mcpg/spin.hpp"

namespace mcpg {

using Rng = std::mt19937_64;

/// Mixes a master seed with a stream identifier (SplitMix64 finalizer) so that
/// every chain, epoch and repeat gets its own reproducible generator.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) noexcept;

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                                 std::uint64_t b) noexcept {
  return derive_seed(derive_seed(master, a), b);
}

inline Rng make_rng(std::uint64_t master, std::uint64_t stream) {
  return Rng(derive_seed(master, stream));
}

/// Uniform double in [0, 1).
inline double uniform01(Rng& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

SpinVector random_spins(std::size_t n, Rng& rng);

}  // namespace mcpg

#endif  // MCPG_RNG_HPP
