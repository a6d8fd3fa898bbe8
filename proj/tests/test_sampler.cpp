#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "mcpg/sampler.hpp"
#include "test_support.hpp"

using namespace mcpg;
using namespace mcpg::testing;

namespace {

PolicyParams random_params(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.5);
  std::vector<double> theta(n);
  for (auto& t : theta) t = g(rng);
  return PolicyParams(theta);
}

double product_prob(const PolicyParams& p, const SpinVector& x) {
  double prob = 1.0;
  for (std::size_t i = 0; i < x.size(); ++i) prob *= x[i] > 0 ? p.mu(i) : 1.0 - p.mu(i);
  return prob;
}

}  // namespace

TEST(Mh, UniformTargetAcceptsEverything) {
  const auto p = PolicyParams::uniform(5);
  for_each_point(5, [&](const SpinVector& x) {
    for (std::size_t i = 0; i < 5; ++i) EXPECT_DOUBLE_EQ(mh_acceptance(p, x, i), 1.0);
  });
}

TEST(Mh, PlusToMinusAcceptanceRatio) {
  const PolicyParams p({std::log(4.0)}, 0.0);  // mu = 0.8
  EXPECT_NEAR(mh_acceptance(p, SpinVector{1}, 0), 0.25, 1e-14);
  EXPECT_DOUBLE_EQ(mh_acceptance(p, SpinVector{-1}, 0), 1.0);
}

TEST(Mh, DetailedBalance) {
  std::mt19937_64 rng(3);
  for (std::size_t n = 1; n <= 6; ++n) {
    const auto p = random_params(n, rng);
    for_each_point(n, [&](const SpinVector& x) {
      for (std::size_t i = 0; i < n; ++i) {
        const SpinVector y = flipped(x, i);
        const double forward = product_prob(p, x) * mh_acceptance(p, x, i) / double(n);
        const double backward = product_prob(p, y) * mh_acceptance(p, y, i) / double(n);
        EXPECT_NEAR(forward, backward, 1e-15);
      }
    });
  }
}

TEST(Mh, TwoStateChainConvergesToMu) {
  const PolicyParams p({std::log(4.0)}, 0.0);
  double plus = 0;
  constexpr int kChains = 100000;
  for (int c = 0; c < kChains; ++c) {
    Rng rng = make_rng(77, c);
    plus += mh_chain(p, SpinVector{-1}, 20, rng)[0] > 0;
  }
  EXPECT_NEAR(plus / kChains, 0.8, 0.01);
}

TEST(Mh, AcceptanceFloorWithDefaultAlpha) {
  const PolicyParams p({30.0, -30.0, 5.0, -8.0});
  Rng rng = make_rng(1, 0);
  MhStats stats;
  SpinVector x{1, -1, 1, 1};
  for (int k = 0; k < 1000; ++k) x = mh_chain(p, x, 10, rng, &stats);
  EXPECT_EQ(stats.proposals, 10000u);
  EXPECT_GE(stats.min_acceptance, 0.25 - 1e-12);
}

TEST(Mh, ZeroStepsRejected) {
  const auto p = PolicyParams::uniform(2);
  Rng rng = make_rng(0, 0);
  EXPECT_THROW(mh_chain(p, SpinVector{1, 1}, 0, rng), std::invalid_argument);
}

TEST(Mh, StationaryFromExactSamples) {
  std::mt19937_64 g(19);
  const std::size_t n = 4;
  const auto p = random_params(n, g);
  Rng init = make_rng(19, 0);
  constexpr int kSamples = 200000;
  std::vector<double> counts(1u << n, 0.0);
  const auto starts = sample_direct(p, kSamples, init);
  for (int c = 0; c < kSamples; ++c) {
    Rng rng = make_rng(19, 1000 + c);
    counts[spin_rank(mh_chain(p, starts[c], 7, rng))] += 1.0;
  }
  double tv = 0.0;
  for (std::uint64_t r = 0; r < counts.size(); ++r) {
    tv += std::abs(counts[r] / kSamples - product_prob(p, spins_from_rank(r, n)));
  }
  EXPECT_LE(0.5 * tv, 0.01);
}

TEST(SampleBatches, ShapesAndInvariants) {
  std::mt19937_64 g(1);
  const MaxCutObjective obj(random_graph(10, 0.5, g));
  const auto p = random_params(10, g);
  Rng rng = make_rng(1, 0);
  const std::vector<SpinVector> starts{random_spins(10, rng), random_spins(10, rng), random_spins(10, rng)};
  const SamplerOptions opts{5, 7, FilterKind::kflip(1)};
  const auto batches = sample_batches(p, starts, opts, obj, 123);
  ASSERT_EQ(batches.size(), 3u);
  for (std::size_t i = 0; i < batches.size(); ++i) {
    const auto& b = batches[i];
    EXPECT_EQ(b.start_index, i);
    ASSERT_EQ(b.raw.size(), 7u);
    ASSERT_EQ(b.filtered.size(), 7u);
    ASSERT_EQ(b.filtered_values.size(), 7u);
    for (std::size_t j = 0; j < 7; ++j) {
      EXPECT_EQ(b.filtered_values[j], obj.value(b.filtered[j]));
      EXPECT_LE(b.filtered_values[j], obj.value(b.raw[j]));
      EXPECT_LE(hamming_distance(b.raw[j], starts[i]), 5u);
    }
    EXPECT_EQ(b.filtered_values[b.best_index()],
              *std::min_element(b.filtered_values.begin(), b.filtered_values.end()));
  }
}

TEST(SampleBatches, SingleTransitionMovesAtMostOneCoordinate) {
  std::mt19937_64 g(2);
  const MaxCutObjective obj(random_graph(8, 0.5, g));
  const PolicyParams floor(std::vector<double>(8, -30.0));
  const std::vector<SpinVector> starts{SpinVector(8, 1), SpinVector(8, -1)};
  const auto batches = sample_batches(floor, starts, {1, 50, FilterKind::identity()}, obj, 5);
  for (std::size_t i = 0; i < 2; ++i) {
    for (const auto& raw : batches[i].raw) EXPECT_LE(hamming_distance(raw, starts[i]), 1u);
    EXPECT_EQ(batches[i].raw, batches[i].filtered);
  }
}

TEST(SampleBatches, SameSeedIsBitIdentical) {
  std::mt19937_64 g(3);
  const QuboObjective obj(random_qubo(9, g));
  const auto p = random_params(9, g);
  Rng rng = make_rng(3, 0);
  const std::vector<SpinVector> starts{random_spins(9, rng), random_spins(9, rng)};
  const SamplerOptions opts{10, 16, FilterKind::local_search()};
  const auto a = sample_batches(p, starts, opts, obj, 99);
  const auto b = sample_batches(p, starts, opts, obj, 99);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].raw, b[i].raw);
    EXPECT_EQ(a[i].filtered, b[i].filtered);
    EXPECT_EQ(a[i].filtered_values, b[i].filtered_values);
  }
  const auto c = sample_batches(p, starts, opts, obj, 100);
  EXPECT_NE(a[0].raw, c[0].raw);
}

TEST(SampleBatches, RejectsBadConfigBeforeSampling) {
  std::mt19937_64 g(4);
  const QuboObjective obj(random_qubo(4, g));
  const auto p = PolicyParams::uniform(4);
  const std::vector<SpinVector> starts{SpinVector(4, 1)};
  const std::vector<SpinVector> none;
  EXPECT_THROW(sample_batches(p, starts, {0, 4, FilterKind::identity()}, obj, 0), std::invalid_argument);
  EXPECT_THROW(sample_batches(p, starts, {2, 0, FilterKind::identity()}, obj, 0), std::invalid_argument);
  EXPECT_THROW(sample_batches(p, none, {2, 4, FilterKind::identity()}, obj, 0), std::invalid_argument);
  EXPECT_THROW(sample_batches(p, starts, {2, 4, FilterKind::edge_local_search()}, obj, 0),
               std::invalid_argument);
}
