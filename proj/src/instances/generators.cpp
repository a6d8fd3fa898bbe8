#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_set>

#include "mcpg/instances.hpp"

namespace mcpg {
namespace {

constexpr std::size_t kRegularRestarts = 100;

using EdgeSet = std::unordered_set<std::uint64_t>;

std::uint64_t edge_key(std::size_t u, std::size_t v, std::size_t n) {
  if (u > v) std::swap(u, v);
  return static_cast<std::uint64_t>(u) * n + v;
}

/// True if some pair of distinct leftover stubs could still be joined.
bool suitable(const EdgeSet& edges, const std::vector<std::size_t>& leftovers, std::size_t n) {
  for (std::size_t a = 0; a < leftovers.size(); ++a) {
    for (std::size_t b = a + 1; b < leftovers.size(); ++b) {
      const std::size_t u = leftovers[a];
      const std::size_t v = leftovers[b];
      if (u != v && !edges.contains(edge_key(u, v, n))) return true;
    }
  }
  return false;
}

std::optional<std::vector<Edge>> try_pairing(std::size_t n, std::size_t d, Rng& rng) {
  EdgeSet edges;
  std::vector<Edge> out;
  out.reserve(n * d / 2);
  std::vector<std::size_t> stubs;
  stubs.reserve(n * d);
  for (std::size_t i = 0; i < n; ++i) stubs.insert(stubs.end(), d, i);

  while (!stubs.empty()) {
    std::shuffle(stubs.begin(), stubs.end(), rng);
    std::vector<std::size_t> leftovers;
    for (std::size_t k = 0; k + 1 < stubs.size(); k += 2) {
      const std::size_t u = std::min(stubs[k], stubs[k + 1]);
      const std::size_t v = std::max(stubs[k], stubs[k + 1]);
      if (u != v && edges.insert(edge_key(u, v, n)).second) {
        out.push_back({u, v, 1.0});
      } else {
        leftovers.push_back(u);
        leftovers.push_back(v);
      }
    }
    if (!leftovers.empty()) {
      std::sort(leftovers.begin(), leftovers.end());
      std::vector<std::size_t> distinct = leftovers;
      distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
      if (!suitable(edges, distinct, n)) return std::nullopt;
    }
    stubs = std::move(leftovers);
  }
  return out;
}

/// k distinct variables from 1..n in random order.
std::vector<int> distinct_vars(std::size_t n, std::size_t k, Rng& rng) {
  std::vector<int> out;
  std::uniform_int_distribution<int> pick(1, static_cast<int>(n));
  while (out.size() < k) {
    const int v = pick(rng);
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  }
  return out;
}

int random_sign(int v, Rng& rng) { return uniform01(rng) < 0.5 ? -v : v; }

}  // namespace

MaxCutInstance gen_regular_graph(std::size_t n, std::size_t d, std::uint64_t seed) {
  if (d >= n && !(n == 0 && d == 0)) {
    throw std::invalid_argument("gen_regular_graph: need d < n");
  }
  if ((n * d) % 2 != 0) throw std::invalid_argument("gen_regular_graph: n*d must be even");
  Rng rng = make_rng(seed, 0);
  for (std::size_t attempt = 0; attempt < kRegularRestarts; ++attempt) {
    if (auto edges = try_pairing(n, d, rng)) {
      std::sort(edges->begin(), edges->end(),
                [](const Edge& a, const Edge& b) { return std::tie(a.u, a.v) < std::tie(b.u, b.v); });
      return MaxCutInstance(n, std::move(*edges));
    }
  }
  throw std::runtime_error("gen_regular_graph: pairing failed " + std::to_string(kRegularRestarts) +
                           " times for n = " + std::to_string(n) + ", d = " + std::to_string(d));
}

MaxCutInstance gen_erdos_renyi(std::size_t n, double p, int w_min, int w_max, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("gen_erdos_renyi: p must lie in [0, 1]");
  if (w_min > w_max) throw std::invalid_argument("gen_erdos_renyi: w_min > w_max");
  Rng rng = make_rng(seed, 0);
  std::uniform_int_distribution<int> weight(w_min, w_max);
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      if (uniform01(rng) < p) edges.push_back({u, v, static_cast<double>(weight(rng))});
    }
  }
  return MaxCutInstance(n, std::move(edges));
}

QuboInstance gen_nbiq(std::size_t n, double density, double neg_prob, std::uint64_t seed) {
  if (!(density > 0.0 && density <= 1.0)) throw std::invalid_argument("gen_nbiq: density must lie in (0, 1]");
  if (!(neg_prob >= 0.0 && neg_prob <= 1.0)) {
    throw std::invalid_argument("gen_nbiq: neg_prob must lie in [0, 1]");
  }
  Rng rng = make_rng(seed, 0);
  std::uniform_int_distribution<int> magnitude(10, 100);
  std::vector<QuboEntry> entries;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      if (uniform01(rng) >= density) continue;
      double q = magnitude(rng);
      if (uniform01(rng) < neg_prob) q = -q;
      entries.push_back({i, j, q});
    }
  }
  return QuboInstance(n, std::move(entries));
}

MaxSatInstance gen_maxsat(std::size_t n, const ClauseCounts& counts, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("gen_maxsat: need at least one variable");
  if ((counts.pairs > 0 && n < 2) || (counts.triples > 0 && n < 3) || (counts.quads > 0 && n < 4)) {
    throw std::invalid_argument("gen_maxsat: too few variables for the requested clause arity");
  }
  Rng rng = make_rng(seed, 0);
  std::vector<Clause> clauses;
  clauses.reserve(n + 2 * counts.pairs + counts.triples + 3 * counts.quads);
  auto soft = [&](std::vector<int> lits) { clauses.push_back({std::move(lits), 1.0, false}); };

  for (std::size_t v = 1; v <= n; ++v) soft({random_sign(static_cast<int>(v), rng)});
  for (std::size_t c = 0; c < counts.pairs; ++c) {
    auto a = distinct_vars(n, 2, rng);
    for (int& l : a) l = random_sign(l, rng);
    soft({a[0], a[1]});
    soft({-a[0], -a[1]});
  }
  for (std::size_t c = 0; c < counts.triples; ++c) {
    auto a = distinct_vars(n, 3, rng);
    for (int& l : a) l = random_sign(l, rng);
    soft(a);
  }
  for (std::size_t c = 0; c < counts.quads; ++c) {
    auto a = distinct_vars(n, 4, rng);
    for (int& l : a) l = random_sign(l, rng);
    soft(a);
    soft({-a[0], -a[1]});
    soft({-a[2], -a[3]});
  }
  return MaxSatInstance(n, std::move(clauses));
}

MimoInstance gen_mimo(std::size_t M, std::size_t N, double snr_db, std::uint64_t seed) {
  if (M == 0 || N == 0) throw std::invalid_argument("gen_mimo: M and N must be >= 1");
  Rng rng = make_rng(seed, 0);
  // Standard complex Gaussian: each real part has variance 1/2.
  std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
  const auto m = static_cast<Eigen::Index>(M);
  const auto n = static_cast<Eigen::Index>(N);
  Eigen::MatrixXd re(m, n);
  Eigen::MatrixXd im(m, n);
  for (Eigen::Index r = 0; r < m; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      re(r, c) = gauss(rng);
      im(r, c) = gauss(rng);
    }
  }
  const SpinVector x = random_spins(2 * N, rng);
  return mimo_build(re, im, x, snr_db, rng);
}

}  // namespace mcpg
