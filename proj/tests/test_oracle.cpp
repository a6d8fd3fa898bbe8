#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "mcpg/oracle.hpp"
#include "test_support.hpp"

using namespace mcpg;
using namespace mcpg::testing;
namespace orc = mcpg::oracle;

namespace {

CallbackObjective sum_objective(std::size_t n) {
  return CallbackObjective(n, [](std::span<const Spin> x) {
    double s = 0.0;
    for (Spin v : x) s += v;
    return s;
  });
}

CallbackObjective constant_objective(std::size_t n, double c = 1.5) {
  return CallbackObjective(n, [c](std::span<const Spin>) { return c; });
}

PolicyParams random_params(std::size_t n, std::mt19937_64& rng, double scale = 1.5) {
  std::normal_distribution<double> g(0.0, scale);
  std::vector<double> theta(n);
  for (auto& t : theta) t = g(rng);
  return PolicyParams(theta);
}

/// Plain product-form probability, written out coordinate by coordinate.
double product_prob(const PolicyParams& p, const SpinVector& x) {
  double prob = 1.0;
  for (std::size_t i = 0; i < x.size(); ++i) prob *= x[i] > 0 ? p.mu(i) : 1.0 - p.mu(i);
  return prob;
}

}  // namespace

TEST(BruteForce, TriangleHasSixOptima) {
  const auto m = orc::brute_force_min(MaxCutObjective(triangle()));
  EXPECT_DOUBLE_EQ(m.value, -2.0);
  EXPECT_EQ(m.multiplicity, 6u);
}

TEST(BruteForce, ConstantAndLinear) {
  EXPECT_EQ(orc::brute_force_min(constant_objective(5)).multiplicity, 32u);
  const auto m = orc::brute_force_min(sum_objective(4));
  EXPECT_EQ(m.multiplicity, 1u);
  EXPECT_EQ(m.argmin, SpinVector(4, -1));
  EXPECT_THROW(orc::brute_force_min(constant_objective(25)), std::invalid_argument);
}

TEST(BruteForce, AgreesWithIndependentEnumeration) {
  std::mt19937_64 g(1);
  for (int k = 0; k < 10; ++k) {
    const QuboObjective obj(random_qubo(9, g));
    const auto m = orc::brute_force_min(obj);
    EXPECT_DOUBLE_EQ(m.value, enumerate_min(9, [&](const SpinVector& x) { return obj.value(x); }));
    EXPECT_EQ(obj.value(m.argmin), m.value);
  }
}

TEST(Enumerate, RankEncodingIsLittleEndian) {
  const CallbackObjective obj(3, [](std::span<const Spin> x) { return (x[0] > 0) + 2.0 * (x[1] > 0) + 4.0 * (x[2] > 0); });
  const auto values = orc::enumerate_values(obj);
  for (std::size_t r = 0; r < 8; ++r) EXPECT_EQ(values[r], double(r));
  EXPECT_EQ(orc::minimizer_ranks(values), std::vector<std::uint64_t>{0});
}

TEST(ExactDistribution, RejectsUnnormalized) {
  EXPECT_THROW(orc::ExactDistribution(1, {0.5, 0.6}), std::invalid_argument);
  EXPECT_THROW(orc::ExactDistribution(1, {1.5, -0.5}), std::invalid_argument);
  EXPECT_THROW(orc::ExactDistribution(2, {0.5, 0.5}), std::invalid_argument);
  EXPECT_NO_THROW(orc::ExactDistribution(1, {0.25, 0.75}));
}

TEST(Gibbs, ConstantIsUniform) {
  const auto q = orc::exact_gibbs(constant_objective(4), 0.7);
  for (double v : q.probabilities()) EXPECT_NEAR(v, 1.0 / 16, 1e-15);
}

TEST(Gibbs, TwoPointClosedForm) {
  const CallbackObjective obj(1, [](std::span<const Spin> x) { return x[0] > 0 ? 1.0 : 0.0; });
  const auto q = orc::exact_gibbs(obj, 1.0);
  EXPECT_NEAR(q.probability(SpinVector{-1}), 1.0 / (1.0 + std::exp(-1.0)), 1e-15);
  EXPECT_THROW(orc::exact_gibbs(obj, 0.0), std::invalid_argument);
}

TEST(Gibbs, ColdLimitConcentratesOnOptima) {
  const MaxCutObjective obj(triangle());
  const auto q = orc::exact_gibbs(obj, 1e-3);
  const auto values = orc::enumerate_values(obj);
  double mass = 0.0;
  for (auto r : orc::minimizer_ranks(values)) mass += q[r];
  EXPECT_GE(mass, 1.0 - 1e-6);
}

TEST(Gibbs, TvToOptimalSetShrinksAsLambdaDecreases) {
  std::mt19937_64 g(2);
  const MaxCutObjective obj(random_graph(8, 0.5, g));
  const auto values = orc::enumerate_values(obj);
  const auto opt = orc::minimizer_ranks(values);
  std::vector<double> target(values.size(), 0.0);
  for (auto r : opt) target[r] = 1.0 / double(opt.size());
  const orc::ExactDistribution uniform_opt(8, target);
  double prev = INFINITY;
  for (double lambda : {1.0, 0.3, 0.1, 0.03, 0.01}) {
    const double tv = orc::total_variation(orc::exact_gibbs(obj, lambda), uniform_opt);
    EXPECT_LT(tv, prev) << lambda;
    prev = tv;
  }
}

TEST(Gibbs, MatchesDirectFormula) {
  std::mt19937_64 g(3);
  const auto obj = random_dense(6, g);
  const double lambda = 0.4;
  const auto q = orc::exact_gibbs(obj, lambda);
  double z = 0.0;
  for_each_point(6, [&](const SpinVector& x) { z += std::exp(-obj.value(x) / lambda); });
  for_each_point(6, [&](const SpinVector& x) {
    EXPECT_NEAR(q.probability(x), std::exp(-obj.value(x) / lambda) / z, 1e-13);
  });
}

TEST(ExactPolicy, MatchesProductForm) {
  std::mt19937_64 g(4);
  const auto p = random_params(7, g);
  const auto d = orc::exact_policy(p);
  for_each_point(7, [&](const SpinVector& x) { EXPECT_NEAR(d.probability(x), product_prob(p, x), 1e-15); });
}

TEST(Divergences, BasicIdentities) {
  const orc::ExactDistribution a(1, {0.25, 0.75});
  const orc::ExactDistribution b(1, {0.5, 0.5});
  const orc::ExactDistribution point(1, {0.0, 1.0});
  EXPECT_NEAR(orc::total_variation(a, b), 0.25, 1e-15);
  EXPECT_NEAR(orc::kl_divergence(a, b), 0.25 * std::log(0.5) + 0.75 * std::log(1.5), 1e-15);
  EXPECT_EQ(orc::kl_divergence(a, a), 0.0);
  EXPECT_TRUE(std::isinf(orc::kl_divergence(a, point)));
  EXPECT_NEAR(orc::kl_divergence(point, a), std::log(1.0 / 0.75), 1e-15);
}

TEST(LossAndGrad, ConstantObjectiveHasZeroGradient) {
  std::mt19937_64 g(5);
  const auto r = orc::exact_loss_and_grad(random_params(6, g), constant_objective(6), 0.0);
  EXPECT_NEAR(r.loss, 1.5, 1e-14);
  for (double v : r.grad) EXPECT_NEAR(v, 0.0, 1e-14);
}

TEST(LossAndGrad, EntropyOnlyIsMinimizedAtOneHalf) {
  const auto zero = constant_objective(5, 0.0);
  const auto at_half = orc::exact_loss_and_grad(PolicyParams::uniform(5), zero, 0.3);
  EXPECT_NEAR(at_half.loss, 0.3 * 5 * std::log(0.5), 1e-14);
  for (double v : at_half.grad) EXPECT_NEAR(v, 0.0, 1e-14);
  std::mt19937_64 g(6);
  for (int k = 0; k < 10; ++k) {
    EXPECT_GT(orc::exact_loss_and_grad(random_params(5, g), zero, 0.3).loss, at_half.loss);
  }
}

TEST(LossAndGrad, MatchesFiniteDifferences) {
  std::mt19937_64 g(7);
  constexpr double h = 1e-5;
  for (const auto& filter : {FilterKind::identity(), FilterKind::local_search()}) {
    for (int trial = 0; trial < 5; ++trial) {
      const auto obj = random_dense(8, g);
      const auto p = random_params(8, g);
      const double lambda = trial % 2 ? 0.0 : 0.5;
      const auto r = orc::exact_loss_and_grad(p, obj, lambda, filter);
      for (std::size_t i = 0; i < 8; ++i) {
        std::vector<double> up(p.theta().begin(), p.theta().end());
        std::vector<double> dn = up;
        up[i] += h;
        dn[i] -= h;
        const double fd = (orc::exact_loss_and_grad(PolicyParams(up), obj, lambda, filter).loss -
                           orc::exact_loss_and_grad(PolicyParams(dn), obj, lambda, filter).loss) /
                          (2 * h);
        EXPECT_NEAR(r.grad[i], fd, 1e-7 * std::max(1.0, std::abs(fd))) << filter.to_string();
      }
    }
  }
}

TEST(LossAndGrad, KlDecomposition) {
  std::mt19937_64 g(8);
  for (std::size_t n = 2; n <= 10; n += 2) {
    const auto obj = random_dense(n, g);
    const auto p = random_params(n, g);
    for (double lambda : {0.2, 1.0, 3.0}) {
      const double loss = orc::exact_loss_and_grad(p, obj, lambda).loss;
      double z = 0.0;
      for_each_point(n, [&](const SpinVector& x) { z += std::exp(-obj.value(x) / lambda); });
      const double kl = orc::kl_divergence(orc::exact_policy(p), orc::exact_gibbs(obj, lambda));
      EXPECT_NEAR(loss / lambda + std::log(z), kl, 1e-8) << "n = " << n;
    }
  }
}

TEST(GapBound, Examples) {
  const auto s = orc::gap_and_bound(sum_objective(3));
  EXPECT_DOUBLE_EQ(s.gap, 2.0);
  EXPECT_DOUBLE_EQ(s.bound, 3.0);
  EXPECT_DOUBLE_EQ(orc::gap_and_bound(MaxCutObjective(triangle())).gap, 2.0);
  EXPECT_THROW(orc::gap_and_bound(constant_objective(3)), std::invalid_argument);
}

TEST(OptimalMass, ConcentratedAndVacuousCases) {
  const auto obj = sum_objective(4);
  const PolicyParams concentrated(std::vector<double>(4, -30.0), 0.0);
  for (double delta : {0.1, 0.5, 0.9}) EXPECT_TRUE(orc::check_prop2(concentrated, obj, delta));
  EXPECT_TRUE(orc::check_prop2(PolicyParams::uniform(4), obj, 0.5));
}

TEST(OptimalMass, RandomTrials) {
  std::mt19937_64 g(9);
  std::uniform_real_distribution<double> u(0.01, 0.99);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + trial % 7;
    const MaxCutObjective obj(random_graph(n, 0.6, g));
    if (obj.instance().num_edges() == 0) continue;
    EXPECT_TRUE(orc::check_prop2(random_params(n, g, 4.0), obj, u(g)));
  }
}

TEST(Basins, PartitionTheCube) {
  std::mt19937_64 g(10);
  const MaxCutObjective obj(random_graph(8, 0.5, g));
  for (const auto& filter : {FilterKind::identity(), FilterKind::kflip(1), FilterKind::local_search()}) {
    const auto sizes = orc::basin_sizes(obj, filter);
    std::size_t total = 0;
    for (auto s : sizes) total += s;
    EXPECT_EQ(total, 256u);
    if (filter == FilterKind::identity()) {
      EXPECT_EQ(sizes.size(), 256u);
    }
  }
}

TEST(FilteredGibbs, CloserInKlWhenDropOutweighsBasinSize) {
  std::mt19937_64 g(11);
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 4 + trial % 7;
    const MaxCutObjective obj(random_graph(n, 0.5, g));
    const auto filter = trial % 2 ? FilterKind::kflip(1) : FilterKind::local_search();
    const auto p = random_params(n, g);
    const auto raw = orc::enumerate_values(obj);
    const auto filtered = orc::enumerate_values(obj, filter);
    const auto policy = orc::exact_policy(p);
    double drop = 0.0;
    for (std::size_t r = 0; r < raw.size(); ++r) drop += policy[r] * (raw[r] - filtered[r]);
    const auto sizes = orc::basin_sizes(obj, filter);
    const double log_max = std::log(double(*std::max_element(sizes.begin(), sizes.end())));
    for (double lambda : {0.05, 0.2, 1.0, 5.0}) {
      if (drop <= 0.0 || drop < lambda * log_max) continue;
      ++checked;
      const double kl_hat = orc::kl_divergence(policy, orc::exact_gibbs(obj, lambda, filter));
      const double kl = orc::kl_divergence(policy, orc::exact_gibbs(obj, lambda));
      EXPECT_LE(kl_hat, kl + 1e-9) << "n = " << n << " lambda = " << lambda;
    }
  }
  EXPECT_GT(checked, 30);
}

TEST(Penalty, ThresholdAndExactness) {
  std::mt19937_64 g(12);
  for (int trial = 0; trial < 10; ++trial) {
    auto base = std::make_shared<QuboObjective>(random_qubo(8, g));
    auto parity = [](std::size_t a, std::size_t b) {
      return [a, b](std::span<const Spin> x) { return (1.0 - x[a] * x[b]) / 2.0; };
    };
    const PenalizedObjective probe(base, {parity(0, 1), parity(2, 5)}, 0.0);
    const double threshold = orc::penalty_threshold(probe);
    ASSERT_GE(threshold, 0.0);
    const PenalizedObjective strong(base, {parity(0, 1), parity(2, 5)}, threshold + 1.0);
    const auto constrained = orc::constrained_minimizer_ranks(strong);
    EXPECT_EQ(orc::minimizer_ranks(orc::enumerate_values(strong)), constrained);
    // Independent check: every constrained minimizer satisfies both parities.
    for (auto r : constrained) {
      const SpinVector x = decode(r, 8);
      EXPECT_EQ(x[0], x[1]);
      EXPECT_EQ(x[2], x[5]);
    }
  }
}
