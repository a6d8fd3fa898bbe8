#ifndef MCPG_SPIN_HPP
#define MCPG_SPIN_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace mcpg {

/// A single binary variable in the {-1, +1} encoding.
using Spin = std::int8_t;

/// An assignment x in {-1,+1}^n, the solution representation shared by every
/// problem type.
using SpinVector = std::vector<Spin>;

/// True when every entry is exactly -1 or +1.
bool is_valid_spins(std::span<const Spin> x) noexcept;

/// Copy of x with coordinate i negated.
SpinVector flipped(std::span<const Spin> x, std::size_t i);

/// Enumeration rank: bit i is (x_i + 1) / 2, little-endian. This is the index
/// used by every exact distribution in the oracle.
std::uint64_t spin_rank(std::span<const Spin> x);

SpinVector spins_from_rank(std::uint64_t rank, std::size_t n);

/// Converts {0,1} bits to spins via s = 2b - 1.
SpinVector spins_from_bits(std::span<const int> bits);

/// Number of coordinates in which a and b differ.
std::size_t hamming_distance(std::span<const Spin> a, std::span<const Spin> b);

}  // namespace mcpg

#endif  // MCPG_SPIN_HPP
