#include <gtest/gtest.h>

#include "lpmlens/errors.hpp"
#include "lpmlens/log_stats.hpp"
#include "lpmlens/markov_projection.hpp"
#include "synthetic_logs.hpp"

namespace lpmlens {
namespace {

ActivityMatrix cliques(const std::vector<std::vector<ActivityId>>& groups, std::size_t n) {
  std::vector<ActivityId> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<ActivityId>(i);
  ActivityMatrix m(order);
  for (const auto& g : groups) {
    for (auto i : g) {
      for (auto j : g) {
        if (i != j) m(i, j) = 1.0 / static_cast<double>(g.size() - 1);
      }
    }
  }
  return m;
}

TEST(Mcl, TwoDisconnectedTrianglesGiveTwoClusters) {
  const auto r = mcl(cliques({{0, 1, 2}, {3, 4, 5}}, 6));
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.family.sets, (std::vector<ProjectionSet>{{0, 1, 2}, {3, 4, 5}}));
}

TEST(Mcl, TriangleIsOneCluster) {
  const auto r = mcl(cliques({{0, 1, 2}}, 3));
  EXPECT_EQ(r.family.sets, (std::vector<ProjectionSet>{{0, 1, 2}}));
}

TEST(Mcl, LargerInflationNeverMergesTheTriangle) {
  MclParams coarse, fine;
  fine.inflation = 10.0;
  const auto m = cliques({{0, 1, 2}}, 3);
  EXPECT_GE(mcl(m, fine).family.size(), mcl(m, coarse).family.size());
}

TEST(Mcl, LimitStaysRowStochastic) {
  const auto r = mcl(row_normalize(connectedness_matrix(testing::planted_pattern_log())));
  EXPECT_TRUE(r.limit.is_row_stochastic(1e-6));
  EXPECT_TRUE(r.family.is_antichain());
}

TEST(Mcl, RejectsNonStochasticInput) {
  ActivityMatrix m({0, 1});
  m(0, 0) = 0.5;
  m(1, 1) = 1.0;
  EXPECT_THROW(mcl(m), ContractViolation);
}

TEST(Mcl, ValidatesParameters) {
  const auto m = cliques({{0, 1}}, 2);
  MclParams p;
  p.inflation = 1.0;
  EXPECT_THROW(mcl(m, p), ContractViolation);
  p = {};
  p.expansion_power = 1;
  EXPECT_THROW(mcl(m, p), ContractViolation);
}

TEST(Mcl, ReportsNonConvergence) {
  MclParams p;
  p.max_iterations = 1;
  const auto r = mcl(row_normalize(connectedness_matrix(testing::planted_pattern_log())), p);
  EXPECT_FALSE(r.converged);
  EXPECT_EQ(r.iterations, 1);
}

TEST(MarkovProjections, DisconnectedComponentsNeverMix) {
  const auto log = make_log({{{"a", "b", "c"}, 1},
                             {{"b", "c", "a"}, 1},
                             {{"c", "a", "b"}, 1},
                             {{"a", "c", "b"}, 1},
                             {{"d", "e", "f"}, 1},
                             {{"e", "f", "d"}, 1},
                             {{"f", "e", "d"}, 1}});
  const auto first = make_projection(log, {"a", "b", "c"});
  const auto second = make_projection(log, {"d", "e", "f"});
  const auto r = discover_markov_projections(log);
  ASSERT_FALSE(r.family.empty());
  for (const auto& s : r.family.sets) {
    EXPECT_TRUE(s.subset_of(first) || s.subset_of(second));
    EXPECT_GE(s.size(), 2u);
  }
}

TEST(MarkovProjections, PlantedPatternsAreRecovered) {
  const auto log = testing::planted_pattern_log();
  const auto r = discover_markov_projections(log);
  std::vector<ProjectionSet> expected;
  for (const auto& p : testing::planted_patterns()) expected.push_back(make_projection(log, p.activities));
  std::sort(expected.begin(), expected.end());
  EXPECT_EQ(r.family.sets, expected);
}

TEST(MarkovProjections, Deterministic) {
  const auto log = testing::planted_pattern_log();
  EXPECT_EQ(discover_markov_projections(log).family, discover_markov_projections(log).family);
}

TEST(MarkovProjections, LowInflationGivesOneCluster) {
  MclParams p;
  p.inflation = 1.05;
  p.max_iterations = 1000;
  const auto log = testing::planted_pattern_log();
  const auto r = discover_markov_projections(log, p);
  EXPECT_EQ(r.family.sets, (std::vector<ProjectionSet>{log.alphabet_set()}));
}

}  // namespace
}  // namespace lpmlens
