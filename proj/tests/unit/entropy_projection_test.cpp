#include <gtest/gtest.h>

#include <random>

#include "lpmlens/entropy_projection.hpp"
#include "lpmlens/errors.hpp"
#include "lpmlens/log_stats.hpp"
#include "oracles.hpp"
#include "synthetic_logs.hpp"

namespace lpmlens {
namespace {

namespace oracle = testing::oracle;

std::set<oracle::NameSet> as_names(const EventLog& log, const ProjectionFamily& f) {
  std::set<oracle::NameSet> out;
  for (const auto& s : f.sets) {
    const auto v = names_of(log, s);
    out.emplace(v.begin(), v.end());
  }
  return out;
}

TEST(EntropyProjections, RotatedPairsSplitIntoTwoSets) {
  const auto log = make_log({{{"a", "b", "c", "d"}, 5}, {{"c", "d", "a", "b"}, 5}});
  const auto r = discover_entropy_projections(log, 0.5);
  EXPECT_DOUBLE_EQ(r.log_entropy, 2.0);
  EXPECT_EQ(as_names(log, r.family), (std::set<oracle::NameSet>{{"a", "b"}, {"c", "d"}}));
  EXPECT_EQ(as_names(log, r.family), oracle::entropy_family(log.as_named_multiset(), 0.5));
}

TEST(EntropyProjections, DeterministicLogAcceptsOnlyZeroEntropySets) {
  const auto log = make_log({{{"a", "b"}, 5}, {{"c", "d"}, 5}});
  const auto r = discover_entropy_projections(log, 0.5);
  EXPECT_TRUE(r.deterministic_log);
  for (const auto& s : r.family.sets) EXPECT_DOUBLE_EQ(projected_entropy(log, s), 0.0);
}

TEST(EntropyProjections, ZeroRatioKeepsOnlyZeroEntropySets) {
  const auto log = make_log({{{"a", "b", "a"}, 1}, {{"b", "a", "b"}, 1}, {{"a", "c", "b"}, 1}, {{"c", "c"}, 1}});
  const auto r = discover_entropy_projections(log, 0.0);
  for (const auto& s : r.family.sets) EXPECT_DOUBLE_EQ(projected_entropy(log, s), 0.0);
  EXPECT_EQ(as_names(log, r.family), oracle::entropy_family(log.as_named_multiset(), 0.0));
}

TEST(EntropyProjections, RejectsBadInput) {
  EXPECT_THROW(discover_entropy_projections(make_log({{{"a", "a"}, 1}}), 0.5), ContractViolation);
  const auto log = make_log({{{"a", "b"}, 1}});
  EXPECT_THROW(discover_entropy_projections(log, -0.1), ContractViolation);
  EXPECT_THROW(discover_entropy_projections(log, 1.5), ContractViolation);
}

struct EntropyCase {
  int seed;
  double ratio;
};

class EntropyProperties : public ::testing::TestWithParam<EntropyCase> {};

TEST_P(EntropyProperties, MatchesOracleAndInvariants) {
  std::mt19937_64 rng(static_cast<std::uint64_t>(GetParam().seed));
  const auto log = testing::random_log(rng, 5, 12, 8);
  if (log.alphabet().size() < 2) GTEST_SKIP();
  const double ratio = GetParam().ratio;
  const auto r = discover_entropy_projections(log, ratio);

  EXPECT_EQ(as_names(log, r.family), oracle::entropy_family(log.as_named_multiset(), ratio));
  EXPECT_TRUE(r.family.is_antichain());
  for (const auto& s : r.family.sets) {
    EXPECT_GE(s.size(), 2u);
    EXPECT_LE(projected_entropy(log, s), ratio * r.log_entropy + 1e-9);
    // Reachable through an accepted set one activity smaller.
    if (s.size() >= 3) {
      const auto& prev = r.generations.at(s.size() - 2);
      bool found = false;
      for (const auto& p : prev) found = found || (p.subset_of(s) && p.size() + 1 == s.size());
      EXPECT_TRUE(found);
    }
  }
  EXPECT_EQ(discover_entropy_projections(log, ratio, 3).family, r.family);
}

std::vector<EntropyCase> entropy_cases() {
  std::vector<EntropyCase> out;
  for (int seed = 1; seed <= 15; ++seed) {
    for (double ratio : {0.2, 0.5, 0.8, 1.0}) out.push_back({seed, ratio});
  }
  return out;
}

INSTANTIATE_TEST_SUITE_P(RandomLogs, EntropyProperties, ::testing::ValuesIn(entropy_cases()));

}  // namespace
}  // namespace lpmlens
