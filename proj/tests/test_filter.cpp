#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "mcpg/filter.hpp"
#include "mcpg/problems.hpp"
#include "test_support.hpp"

using namespace mcpg;
using namespace mcpg::testing;

namespace {

const std::vector<FilterKind> kAllNodeFilters = {
    FilterKind::identity(), FilterKind::kflip(1), FilterKind::kflip(2), FilterKind::local_search(false),
    FilterKind::local_search(true)};

/// Radius-r ball argmin by direct evaluation: strict improvement over x
/// beyond the tolerance, earliest candidate in (i, j) lexicographic order on ties.
SpinVector ball_argmin(const Objective& obj, const SpinVector& x, int r) {
  const std::size_t n = x.size();
  const double fx = obj.value(x);
  double best = fx - kImprovementTolerance;
  SpinVector out = x;
  for (std::size_t i = 0; i < n; ++i) {
    SpinVector y = flipped(x, i);
    if (obj.value(y) < best) {
      best = obj.value(y);
      out = y;
    }
    if (r < 2) continue;
    for (std::size_t j = i + 1; j < n; ++j) {
      SpinVector z = flipped(y, j);
      if (obj.value(z) < best) {
        best = obj.value(z);
        out = z;
      }
    }
  }
  return out;
}

std::vector<std::size_t> identity_order(std::size_t n) {
  std::vector<std::size_t> v(n);
  std::iota(v.begin(), v.end(), std::size_t{0});
  return v;
}

}  // namespace

TEST(Filter, ParseRoundTrip) {
  for (const char* name : {"none", "kflip1", "kflip2", "ls", "ls-conv", "edge-ls", "edge-ls-conv"}) {
    EXPECT_EQ(FilterKind::parse(name).to_string(), name);
  }
  EXPECT_EQ(FilterKind::parse("identity"), FilterKind::identity());
  EXPECT_THROW(FilterKind::parse("kflip3"), std::invalid_argument);
  EXPECT_THROW(FilterKind::kflip(3), std::invalid_argument);
}

TEST(Filter, IdentityReturnsInput) {
  const MaxCutObjective obj(triangle());
  Rng rng = make_rng(0, 0);
  const SpinVector x{1, 1, 1};
  EXPECT_EQ(apply_filter(FilterKind::identity(), obj, x, rng), x);
}

TEST(Filter, KFlipOnTriangleBreaksTieAtLowestIndex) {
  const MaxCutObjective obj(triangle());
  const SpinVector out = kflip_projection(obj, SpinVector{1, 1, 1}, 1);
  EXPECT_EQ(out, (SpinVector{-1, 1, 1}));
  EXPECT_DOUBLE_EQ(-obj.value(out), 2.0);
}

TEST(Filter, KFlipKeepsStrictLocalMinimum) {
  const MaxCutObjective obj(triangle());
  const SpinVector x{1, -1, -1};
  EXPECT_EQ(kflip_projection(obj, x, 1), x);
}

TEST(Filter, KFlipMatchesBallArgmin) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 6 + trial % 9;
    const MaxCutObjective cut(random_graph(n, 0.5, rng, trial % 3 != 0));
    const QuboObjective qubo(random_qubo(n, rng));
    for (const Objective* obj : {static_cast<const Objective*>(&cut), static_cast<const Objective*>(&qubo)}) {
      for (int k = 0; k < 20; ++k) {
        const SpinVector x = random_spins(n, rng);
        EXPECT_EQ(kflip_projection(*obj, x, 1), ball_argmin(*obj, x, 1));
        EXPECT_EQ(kflip_projection(*obj, x, 2), ball_argmin(*obj, x, 2));
      }
    }
  }
}

TEST(Filter, KFlip2IsRefusedAboveSizeLimit) {
  const CallbackObjective big(kMaxKFlip2Size + 1, [](std::span<const Spin>) { return 0.0; });
  EXPECT_THROW(check_filter_applicable(FilterKind::kflip(2), big), std::invalid_argument);
  EXPECT_NO_THROW(check_filter_applicable(FilterKind::kflip(1), big));
}

TEST(Filter, MonotoneAndIdempotentlySafe) {
  std::mt19937_64 g(5);
  Rng rng = make_rng(5, 1);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 4 + trial % 11;
    const MaxCutObjective cut(random_graph(n, 0.5, g, trial % 2 == 0));
    const MaxSatObjective sat(random_maxsat(n, 3 * n, g, 0.2));
    const CheegerObjective rcc(random_graph(n, 0.6, g), CheegerKind::Ratio);
    for (const Objective* obj : {static_cast<const Objective*>(&cut), static_cast<const Objective*>(&sat),
                                 static_cast<const Objective*>(&rcc)}) {
      std::vector<FilterKind> kinds = kAllNodeFilters;
      if (obj->graph()) {
        kinds.push_back(FilterKind::edge_local_search(false));
        kinds.push_back(FilterKind::edge_local_search(true));
      }
      for (const auto& kind : kinds) {
        for (int k = 0; k < 10; ++k) {
          const SpinVector x = random_spins(n, rng);
          const SpinVector y = apply_filter(kind, *obj, x, rng);
          ASSERT_TRUE(is_valid_spins(y));
          EXPECT_LE(obj->value(y), obj->value(x)) << kind.to_string() << " " << obj->name();
          const SpinVector z = apply_filter(kind, *obj, y, rng);
          EXPECT_LE(obj->value(z), obj->value(y)) << kind.to_string();
        }
      }
    }
  }
}

TEST(Filter, GlobalOptimumIsPreserved) {
  std::mt19937_64 g(8);
  Rng rng = make_rng(8, 0);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 8 + trial % 7;
    const MaxCutObjective obj(random_graph(n, 0.5, g));
    double best = INFINITY;
    SpinVector argmin;
    for_each_point(n, [&](const SpinVector& x) {
      if (obj.value(x) < best) {
        best = obj.value(x);
        argmin = x;
      }
    });
    for (const auto& kind : kAllNodeFilters) {
      EXPECT_EQ(obj.value(apply_filter(kind, obj, argmin, rng)), best) << kind.to_string();
    }
    EXPECT_EQ(obj.value(apply_filter(FilterKind::edge_local_search(), obj, argmin, rng)), best);
  }
}

TEST(LocalSearch, DecoupledObjectiveReachesAllMinusOneInOnePass) {
  const std::vector<double> a{0.5, 2.0, 1.0, 3.0, 0.1};
  const CallbackObjective obj(5, [a](std::span<const Spin> x) {
    double f = 0.0;
    for (std::size_t i = 0; i < 5; ++i) f += a[i] * x[i];
    return f;
  });
  auto order = identity_order(5);
  std::mt19937_64 rng(1);
  for (int k = 0; k < 10; ++k) {
    std::shuffle(order.begin(), order.end(), rng);
    EXPECT_EQ(local_search_pass(obj, SpinVector{1, -1, 1, 1, 1}, order), SpinVector(5, -1));
  }
}

TEST(LocalSearch, DeterministicAndChangesOnlyImprovingIndices) {
  std::mt19937_64 g(2);
  const MaxCutObjective obj(random_graph(12, 0.4, g));
  Rng rng = make_rng(2, 0);
  for (int k = 0; k < 50; ++k) {
    const SpinVector x = random_spins(12, rng);
    auto order = identity_order(12);
    std::shuffle(order.begin(), order.end(), g);
    const SpinVector a = local_search_pass(obj, x, order);
    EXPECT_EQ(a, local_search_pass(obj, x, order));
    // Replay the sweep by hand.
    SpinVector cur = x;
    for (std::size_t i : order) {
      if (obj.value(flipped(cur, i)) < obj.value(cur) - kImprovementTolerance) cur = flipped(cur, i);
    }
    EXPECT_EQ(a, cur);
  }
}

TEST(LocalSearch, RejectsInvalidPermutation) {
  const MaxCutObjective obj(triangle());
  const std::vector<std::size_t> dup{0, 0, 1};
  const std::vector<std::size_t> short_order{0, 1};
  EXPECT_THROW(local_search_pass(obj, SpinVector{1, 1, 1}, dup), std::invalid_argument);
  EXPECT_THROW(local_search_pass(obj, SpinVector{1, 1, 1}, short_order), std::invalid_argument);
}

TEST(EdgeLocalSearch, SingleEdgeJointFlipIsNeutral) {
  const MaxCutObjective obj(MaxCutInstance(2, {{0, 1, 1.0}}));
  const std::vector<std::size_t> order{0};
  EXPECT_EQ(edge_local_search_pass(obj, SpinVector{1, 1}, order), (SpinVector{1, 1}));
}

TEST(EdgeLocalSearch, FourCycleNeverWorsens) {
  const MaxCutObjective obj(MaxCutInstance(4, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {3, 0, 1}}));
  const auto order = identity_order(4);
  for_each_point(4, [&](const SpinVector& x) {
    const SpinVector y = edge_local_search_pass(obj, x, order);
    EXPECT_LE(obj.value(y), obj.value(x));
  });
  // Path 0-1-2 with x = (+,+,-) plus pendant 3 on 1: flipping edge (0,1) jointly gains.
  const MaxCutObjective star(MaxCutInstance(4, {{0, 1, 1}, {1, 2, 1}, {1, 3, 1}, {0, 2, 1}, {0, 3, 1}}));
  const SpinVector x{1, 1, -1, -1};
  const SpinVector y = edge_local_search_pass(star, x, identity_order(5));
  EXPECT_LE(star.value(y), star.value(x));
}

TEST(EdgeLocalSearch, MonotoneOnRegularLikeGraphs) {
  std::mt19937_64 g(4);
  Rng rng = make_rng(4, 0);
  const MaxCutObjective obj(random_graph(40, 0.1, g));
  auto order = identity_order(obj.instance().num_edges());
  for (int k = 0; k < 200; ++k) {
    std::shuffle(order.begin(), order.end(), g);
    const SpinVector x = random_spins(40, rng);
    EXPECT_LE(obj.value(edge_local_search_pass(obj, x, order)), obj.value(x));
  }
}

TEST(EdgeLocalSearch, RequiresGraph) {
  std::mt19937_64 g(1);
  const QuboObjective obj(random_qubo(4, g));
  Rng rng = make_rng(0, 0);
  EXPECT_THROW(apply_filter(FilterKind::edge_local_search(), obj, SpinVector(4, 1), rng),
               std::invalid_argument);
  EXPECT_THROW(check_filter_applicable(FilterKind::edge_local_search(), obj), std::invalid_argument);
}
