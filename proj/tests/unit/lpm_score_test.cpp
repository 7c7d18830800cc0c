#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "lpmlens/errors.hpp"
#include "lpmlens/lpm_score.hpp"
#include "oracles.hpp"
#include "synthetic_logs.hpp"

namespace lpmlens {
namespace {

namespace oracle = testing::oracle;

double reference_harmonic(const std::vector<double>& xs) {
  double inv = 0.0;
  for (double x : xs) inv += 1.0 / x;
  return static_cast<double>(xs.size()) / inv;
}

TEST(HarmonicMean, ConfidenceExamples) {
  const std::vector<std::vector<double>> inputs = {{87.0 / 143, 154.0 / 191, 146.0 / 252},
                                                   {147.0 / 252, 85.0 / 143, 145.0 / 191},
                                                   {122.0 / 252, 30.0 / 63, 92.0 / 143}};
  const std::vector<double> expected = {0.6508, 0.6364, 0.5245};
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    EXPECT_NEAR(harmonic_mean(inputs[i]), expected[i], 5e-4);
    EXPECT_NEAR(harmonic_mean(inputs[i]), reference_harmonic(inputs[i]), 1e-12);
  }
}

TEST(HarmonicMean, ZeroOrEmptyGivesZero) {
  EXPECT_DOUBLE_EQ(harmonic_mean(std::vector<double>{0.5, 0.0}), 0.0);
  EXPECT_DOUBLE_EQ(harmonic_mean(std::vector<double>{}), 0.0);
}

TEST(Coverage, FractionOfLogEventsCarryingModelActivities) {
  {
    const auto log = make_log({{{"a", "b"}, 293}, {{"x"}, 699}});
    ASSERT_EQ(log.total_events(), 1285u);
    ActivityTable t = log.activities();
    const auto s = score(parse_tree("seq(a,b)", t), log);
    EXPECT_NEAR(s.coverage, 0.4560, 5e-5);
    EXPECT_DOUBLE_EQ(s.coverage, 586.0 / 1285.0);
  }
  {
    const auto log = make_log({{{"a", "b"}, 255}, {{"a"}, 1}, {{"x"}, 774}});
    ASSERT_EQ(log.total_events(), 1285u);
    ActivityTable t = log.activities();
    const auto s = score(parse_tree("seq(a,b)", t), log);
    EXPECT_NEAR(s.coverage, 0.3977, 5e-5);
  }
}

TEST(Scoring, PerfectSequence) {
  const auto log = make_log({{{"a", "b"}, 10}});
  ActivityTable t = log.activities();
  const auto s = score(parse_tree("seq(a,b)", t), log);
  EXPECT_DOUBLE_EQ(s.confidence, 1.0);
  EXPECT_DOUBLE_EQ(s.language_fit, 1.0);
  EXPECT_DOUBLE_EQ(s.determinism, 1.0);
  EXPECT_DOUBLE_EQ(s.coverage, 1.0);
  EXPECT_DOUBLE_EQ(s.support, std::min(1.0, std::log1p(10.0) / std::log1p(20.0)));
}

TEST(Scoring, ConcurrencyLowersDeterminism) {
  // Enabled labels at each firing: 2 then 1.
  const auto log = make_log({{{"a", "b"}, 3}});
  ActivityTable t = log.activities();
  const auto s = score(parse_tree("and(a,b)", t), log);
  EXPECT_NEAR(s.determinism, 2.0 / 3.0, 1e-12);
  EXPECT_DOUBLE_EQ(s.language_fit, 0.5);
}

TEST(Scoring, NoFittingSegmentGivesZeros) {
  const auto log = make_log({{{"b", "a"}, 4}});
  ActivityTable t = log.activities();
  const auto s = score(parse_tree("seq(a,b)", t), log);
  EXPECT_DOUBLE_EQ(s.support, 0.0);
  EXPECT_DOUBLE_EQ(s.confidence, 0.0);
  EXPECT_DOUBLE_EQ(s.language_fit, 0.0);
  EXPECT_DOUBLE_EQ(s.determinism, 0.0);
  EXPECT_DOUBLE_EQ(s.coverage, 1.0);
  EXPECT_DOUBLE_EQ(s.weighted_average, 0.2);
}

TEST(Scoring, TraceRatioNorm) {
  const auto log = make_log({{{"a", "b", "a", "b"}, 2}, {{"x"}, 2}});
  ActivityTable t = log.activities();
  ScoreConfig config;
  config.support_norm = SupportNorm::TraceRatio;
  const auto s = score(parse_tree("seq(a,b)", t), log, config);
  EXPECT_DOUBLE_EQ(s.support, 4.0 / (4.0 + 4.0));
}

TEST(Scoring, WeightsMustBeValid) {
  ScoreWeights w;
  w.support = 0.5;
  EXPECT_THROW(w.validate(), ContractViolation);
  w = {};
  w.coverage = -0.2;
  w.support = 0.6;
  EXPECT_THROW(w.validate(), ContractViolation);
  EXPECT_NO_THROW(ScoreWeights{}.validate());
}

TEST(Segmentation, PrefersMoreFittingEventsThenFewerSegments) {
  ActivityTable t;
  const auto tree = parse_tree("seq(a,loop(b))", t);
  const ActivityId a = t.find("a"), b = t.find("b");
  const Trace trace{b, a, b, b, a, b};
  const auto seg = segment_trace(trace, tree);
  EXPECT_EQ(seg.fitting_events, 5u);
  EXPECT_EQ(seg.segments, (std::vector<Segment>{{1, 4}, {4, 6}}));
}

class SegmentationVsBruteForce : public ::testing::TestWithParam<int> {};

TEST_P(SegmentationVsBruteForce, AgreesOnRandomTraces) {
  ActivityTable table;
  std::vector<ActivityId> sigma;
  for (const char* n : {"a", "b", "c"}) sigma.push_back(table.intern(n));
  const auto trees = oracle::all_trees(sigma, 3, table);
  std::mt19937_64 rng(static_cast<std::uint64_t>(GetParam()));
  for (std::size_t ti = static_cast<std::size_t>(GetParam()) % 7; ti < trees.size(); ti += 7) {
    const auto& tree = trees[ti];
    const auto leaves = tree.leaf_order();
    const auto language = bounded_language(tree, 12);
    for (int rep = 0; rep < 4; ++rep) {
      Trace trace(rng() % 13);
      for (auto& x : trace) x = leaves[rng() % leaves.size()];
      const auto dp = segment_trace(trace, tree);
      const auto brute = oracle::brute_force_segmentation(trace, language);
      SCOPED_TRACE(canonical_form(tree, table));
      EXPECT_EQ(dp.fitting_events, brute.fitting);
      ASSERT_EQ(dp.segments.size(), brute.segments.size());
      for (std::size_t i = 0; i < dp.segments.size(); ++i) {
        EXPECT_EQ(dp.segments[i].begin, brute.segments[i].first);
        EXPECT_EQ(dp.segments[i].end, brute.segments[i].second);
      }
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, SegmentationVsBruteForce, ::testing::Range(1, 8));

class ScoreProperties : public ::testing::TestWithParam<int> {};

TEST_P(ScoreProperties, StatisticsAgreeWithBruteForceReplay) {
  std::mt19937_64 rng(static_cast<std::uint64_t>(GetParam()));
  const auto log = testing::random_log(rng, 4, 10, 8);
  if (log.alphabet().size() < 2) GTEST_SKIP();
  ActivityTable table = log.activities();
  const auto trees = oracle::all_trees(log.alphabet(), 2, table);
  ScoreConfig config;
  config.max_len = 4;
  const LpmEvaluator evaluator(log, config);
  for (const auto& tree : trees) {
    SCOPED_TRACE(canonical_form(tree, table));
    const auto stats = evaluator.replay(tree);
    const auto leaves = tree.leaves();
    const auto language = bounded_language(tree, 8);
    const auto short_language = bounded_language(tree, config.max_len);

    std::map<ActivityId, std::uint64_t> fitting, occ;
    std::uint64_t segments = 0;
    std::set<Trace> observed;
    for (const auto& v : log.variants()) {
      const auto projected = project_trace(v.trace, leaves);
      const auto brute = oracle::brute_force_segmentation(projected, language);
      segments += brute.segments.size() * v.multiplicity;
      for (auto a : projected) occ[a] += v.multiplicity;
      for (const auto& [b, e] : brute.segments) {
        Trace word(projected.begin() + static_cast<std::ptrdiff_t>(b), projected.begin() + static_cast<std::ptrdiff_t>(e));
        for (auto a : word) fitting[a] += v.multiplicity;
        if (word.size() <= config.max_len) observed.insert(word);
      }
    }
    EXPECT_EQ(stats.segments, segments);
    EXPECT_EQ(stats.language_size, short_language.size());
    EXPECT_EQ(stats.observed_words, observed.size());
    for (std::size_t i = 0; i < stats.activities.size(); ++i) {
      EXPECT_EQ(stats.fitting[i], fitting[stats.activities[i]]);
      EXPECT_EQ(stats.occurrences[i], occ[stats.activities[i]]);
    }

    const auto s = evaluator.score_from(stats);
    for (double x : {s.support, s.confidence, s.language_fit, s.determinism, s.coverage, s.weighted_average}) {
      EXPECT_GE(x, 0.0);
      EXPECT_LE(x, 1.0);
    }
    if (segments > 0) {
      std::vector<double> ratios;
      for (auto a : leaves.activities()) {
        ratios.push_back(static_cast<double>(fitting[a]) / static_cast<double>(occ[a]));
      }
      EXPECT_NEAR(s.confidence, reference_harmonic(ratios), 1e-12);
    }
  }
}

TEST_P(ScoreProperties, CoverageGrowsWithTheModel) {
  std::mt19937_64 rng(static_cast<std::uint64_t>(GetParam()) + 100);
  const auto log = testing::random_log(rng, 4, 12, 8);
  if (log.alphabet().size() < 3) GTEST_SKIP();
  ActivityTable table = log.activities();
  const auto& sigma = log.alphabet();
  const LpmEvaluator evaluator(log, {});
  const auto base = ProcessTree::sequence(ProcessTree::leaf(sigma[0]), ProcessTree::leaf(sigma[1]));
  const auto x = ProcessTree::leaf(sigma[2]);
  for (const auto& grown : {ProcessTree::sequence(base, x), ProcessTree::parallel(base, x)}) {
    SCOPED_TRACE(canonical_form(grown, table));
    EXPECT_GE(evaluator.score(grown).coverage, evaluator.score(base).coverage);
  }
}

INSTANTIATE_TEST_SUITE_P(RandomLogs, ScoreProperties, ::testing::Range(1, 16));

TEST(ReplayCacheTest, StoresAndReturnsStatistics) {
  ReplayCache cache;
  EXPECT_FALSE(cache.find("k").has_value());
  ReplayStatistics st;
  st.segments = 7;
  cache.insert("k", st);
  cache.insert("k", ReplayStatistics{});
  ASSERT_TRUE(cache.find("k").has_value());
  EXPECT_EQ(cache.find("k")->segments, 7u);
  EXPECT_EQ(cache.size(), 1u);
}

TEST(ReplayCacheTest, StatisticsOfAProjectionMatchTheBaseLog) {
  const auto log = testing::planted_pattern_log();
  ActivityTable t = log.activities();
  const auto tree = parse_tree("and(a,b,c,d)", t);
  const auto projected = project_log(log, make_projection(log, {"a", "b", "c", "d", "e"}));
  const auto full = LpmEvaluator(log, {}).replay(tree);
  const auto part = LpmEvaluator(projected, {}).replay(tree);
  EXPECT_EQ(full.segments, part.segments);
  EXPECT_EQ(full.fitting, part.fitting);
  EXPECT_EQ(full.observed_words, part.observed_words);
  EXPECT_EQ(full.enabled_sum, part.enabled_sum);
}

}  // namespace
}  // namespace lpmlens
