#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "lpmlens/errors.hpp"
#include "lpmlens/evaluation.hpp"
#include "synthetic_logs.hpp"

namespace lpmlens {
namespace {

Ranking ranking(const std::vector<std::pair<std::string, double>>& entries) {
  Ranking r;
  for (const auto& [name, rel] : entries) {
    RankedModel m{ProcessTree::leaf(0), name, {}};
    m.score.weighted_average = rel;
    r.entries.push_back(m);
  }
  return r;
}

TEST(Dcg, TwoUnitRelevances) {
  const std::vector<double> rel{1.0, 1.0};
  EXPECT_NEAR(dcg_at_k(rel, 2), 1.6309, 1e-4);
  EXPECT_NEAR(dcg_at_k(rel, 2), 1.0 + 1.0 / std::log2(3.0), 1e-12);
  EXPECT_DOUBLE_EQ(dcg_at_k(rel, 1), 1.0);
}

TEST(Ndcg, IdealAgainstItselfIsOne) {
  const auto ideal = ranking({{"x", 0.9}, {"y", 0.7}, {"z", 0.4}});
  for (std::size_t k : {1, 2, 3, 5}) EXPECT_DOUBLE_EQ(ndcg_at_k(ideal, ideal, k), 1.0);
}

TEST(Ndcg, SwappingDistinctRelevancesLowersIt) {
  const auto ideal = ranking({{"x", 0.9}, {"y", 0.7}, {"z", 0.4}});
  const auto swapped = ranking({{"y", 0.7}, {"x", 0.9}, {"z", 0.4}});
  EXPECT_LT(ndcg_at_k(ideal, swapped, 3), 1.0);
  const auto tail = ranking({{"x", 0.9}, {"z", 0.4}, {"y", 0.7}});
  EXPECT_LT(ndcg_at_k(ideal, tail, 3), 1.0);
}

TEST(Ndcg, CappedAtOneAndUndefinedForZeroIdeal) {
  const auto ideal = ranking({{"x", 0.5}});
  EXPECT_DOUBLE_EQ(ndcg_at_k(ideal, ranking({{"y", 0.9}}), 1), 1.0);
  EXPECT_THROW(ndcg_at_k(ranking({}), ideal, 1), EvaluationError);
  EXPECT_THROW(ndcg_at_k(ideal, ideal, 0), ContractViolation);
}

TEST(Recall, SharesOfTheIdealTopK) {
  const auto ideal = ranking({{"x", 0.9}, {"y", 0.7}, {"z", 0.4}});
  EXPECT_DOUBLE_EQ(recall_at_k(ideal, ranking({{"z", 0.4}, {"q", 0.3}}), 2), 0.0);
  EXPECT_DOUBLE_EQ(recall_at_k(ideal, ranking({{"y", 0.7}, {"q", 0.3}}), 2), 0.5);
  EXPECT_DOUBLE_EQ(recall_at_k(ideal, ranking({{"z", 0.4}, {"y", 0.7}, {"x", 0.9}}), 5), 1.0);
  EXPECT_DOUBLE_EQ(recall_at_k(ideal, ranking({}), 3), 0.0);
  EXPECT_THROW(recall_at_k(ranking({}), ideal, 3), EvaluationError);
}

TEST(RandomFamily, PreservesSizesAndIsSeeded) {
  ProjectionFamily f;
  f.sets = {{0, 1}, {2, 3, 4}, {0, 1, 2, 3}};
  const std::vector<ActivityId> alphabet{0, 1, 2, 3, 4, 5};
  const auto a = random_family(f, alphabet, 42);
  ASSERT_EQ(a.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(a.sets[i].size(), f.sets[i].size());
    for (auto x : a.sets[i].activities()) EXPECT_LT(x, 6u);
  }
  EXPECT_EQ(random_family(f, alphabet, 42), a);
  bool differs = false;
  for (std::uint64_t s = 0; s < 10; ++s) differs = differs || !(random_family(f, alphabet, s) == a);
  EXPECT_TRUE(differs);
  EXPECT_THROW(random_family(f, {0, 1}, 1), ContractViolation);
}

TEST(RandomFamily, DrawsAreRoughlyUniform) {
  ProjectionFamily f;
  f.sets = {{0}};
  std::vector<int> hits(4, 0);
  for (std::uint64_t s = 0; s < 4000; ++s) ++hits[random_family(f, {0, 1, 2, 3}, s).sets[0].activities()[0]];
  for (int h : hits) EXPECT_NEAR(h, 1000, 150);
}

TEST(MeanWithErrorTest, SampleStandardError) {
  const std::vector<double> xs{1.0, 2.0, 3.0, 4.0};
  const auto m = mean_with_error(xs);
  EXPECT_DOUBLE_EQ(m.mean, 2.5);
  EXPECT_NEAR(m.standard_error, std::sqrt(5.0 / 3.0) / 2.0, 1e-12);
  EXPECT_DOUBLE_EQ(mean_with_error(std::vector<double>{7.0}).standard_error, 0.0);
}

TEST(Timing, ProjectedTotalByMode) {
  TimingRecord t;
  t.projection_set_seconds = 1.0;
  t.projected_run_seconds = {2.0, 3.0};
  t.rescoring_seconds = 0.5;
  t.projected_wall_seconds = 4.0;
  EXPECT_DOUBLE_EQ(t.projected_total(TimingMode::CpuSum), 6.5);
  EXPECT_DOUBLE_EQ(t.projected_total(TimingMode::Wall), 5.0);
}

TEST(ProjectionMethods, ParseNames) {
  EXPECT_EQ(parse_projection_method("markov"), ProjectionMethod::Markov);
  EXPECT_EQ(parse_projection_method("entropy"), ProjectionMethod::Entropy);
  EXPECT_EQ(parse_projection_method("mrig"), ProjectionMethod::Mrig);
  EXPECT_THROW(parse_projection_method("random"), ContractViolation);
  EXPECT_EQ(to_string(ProjectionMethod::Mrig), "mrig");
}

class WholeAlphabet : public ::testing::TestWithParam<int> {};

TEST_P(WholeAlphabet, SingleFullSetReproducesGroundTruth) {
  std::mt19937_64 rng(static_cast<std::uint64_t>(GetParam()));
  const auto log = testing::random_log(rng, 5, 20, 8);
  if (log.alphabet().size() < 2) GTEST_SKIP();
  DiscoveryParams p;
  p.max_activities = 3;
  const auto ideal = discover(log, p).ranking;
  ProjectionFamily sigma;
  sigma.sets = {log.alphabet_set()};
  const auto found = discover_with_projections(log, sigma, p).ranking;
  for (std::size_t k : {5, 10, 20}) {
    EXPECT_DOUBLE_EQ(recall_at_k(ideal, found, k), 1.0);
    EXPECT_DOUBLE_EQ(ndcg_at_k(ideal, found, k), 1.0);
  }
}

INSTANTIATE_TEST_SUITE_P(RandomLogs, WholeAlphabet, ::testing::Range(1, 6));

TEST(Evaluate, FullEntropyRatioSelectsTheWholeAlphabet) {
  std::mt19937_64 rng(9);
  const auto log = testing::random_log(rng, 4, 20, 8);
  EvaluationConfig config;
  config.method.method = ProjectionMethod::Entropy;
  config.method.entropy_ratio = 1.0;
  config.discovery.max_activities = 3;
  config.repetitions = 3;
  const auto report = evaluate(log, config);
  ASSERT_TRUE(report.complete);
  ASSERT_EQ(report.family.size(), 1u);
  EXPECT_EQ(report.family.sets[0], log.alphabet_set());
  for (auto k : config.cutoffs) {
    EXPECT_DOUBLE_EQ(report.recall_at.at(k), 1.0);
    EXPECT_DOUBLE_EQ(report.ndcg_at.at(k), 1.0);
    EXPECT_DOUBLE_EQ(report.baseline_ndcg_at.at(k).mean, 1.0);
  }
  EXPECT_EQ(report.repetitions, 3u);
  EXPECT_GT(report.speedup, 0.0);
}

TEST(Evaluate, GroundTruthTimeoutGivesPartialReport) {
  const auto log = testing::planted_pattern_log();
  EvaluationConfig config;
  config.ground_truth_timeout = std::chrono::duration<double>(0.0);
  const auto report = evaluate(log, config);
  EXPECT_FALSE(report.complete);
  EXPECT_TRUE(report.recall_at.empty());
  EXPECT_FALSE(report.warnings.empty());
}

TEST(Evaluate, EmptyIdealIsAnError) {
  const auto log = make_log({{{"a", "b"}, 1}});
  EXPECT_THROW(evaluate(log, {}, Ranking{}, 0.0), EvaluationError);
}

TEST(Evaluate, SameSeedSameBaseline) {
  const auto log = testing::planted_pattern_log();
  EvaluationConfig config;
  config.discovery.max_activities = 3;
  config.discovery.support_prune = 0.6;
  config.repetitions = 2;
  const auto ideal = discover(log, config.discovery).ranking;
  const auto a = evaluate(log, config, ideal, 1.0);
  const auto b = evaluate(log, config, ideal, 1.0);
  for (auto k : config.cutoffs) {
    EXPECT_EQ(a.baseline_ndcg_at.at(k).mean, b.baseline_ndcg_at.at(k).mean);
    EXPECT_EQ(a.ndcg_at.at(k), b.ndcg_at.at(k));
  }
}

}  // namespace
}  // namespace lpmlens
