#include "mcpg/spin.hpp"

#include <stdexcept>

#include "mcpg/rng.hpp"

namespace mcpg {

bool is_valid_spins(std::span<const Spin> x) noexcept {
  for (Spin s : x) {
    if (s != 1 && s != -1) return false;
  }
  return true;
}

SpinVector flipped(std::span<const Spin> x, std::size_t i) {
  if (i >= x.size()) throw std::out_of_range("flipped: index out of range");
  SpinVector out(x.begin(), x.end());
  out[i] = static_cast<Spin>(-out[i]);
  return out;
}

std::uint64_t spin_rank(std::span<const Spin> x) {
  if (x.size() > 63) throw std::invalid_argument("spin_rank: n > 63");
  std::uint64_t rank = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] > 0) rank |= (std::uint64_t{1} << i);
  }
  return rank;
}

SpinVector spins_from_rank(std::uint64_t rank, std::size_t n) {
  if (n > 63) throw std::invalid_argument("spins_from_rank: n > 63");
  SpinVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = ((rank >> i) & 1U) ? 1 : -1;
  return x;
}

SpinVector spins_from_bits(std::span<const int> bits) {
  SpinVector x(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] != 0 && bits[i] != 1) {
      throw std::invalid_argument("spins_from_bits: entries must be 0 or 1");
    }
    x[i] = bits[i] ? 1 : -1;
  }
  return x;
}

std::size_t hamming_distance(std::span<const Spin> a, std::span<const Spin> b) {
  if (a.size() != b.size()) throw std::invalid_argument("hamming_distance: length mismatch");
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += (a[i] != b[i]);
  return d;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) noexcept {
  std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

SpinVector random_spins(std::size_t n, Rng& rng) {
  SpinVector x(n);
  for (auto& s : x) s = (rng() & 1U) ? 1 : -1;
  return x;
}

}  // namespace mcpg
