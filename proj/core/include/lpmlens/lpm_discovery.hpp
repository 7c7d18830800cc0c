#pragma once

#include <chrono>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lpmlens/event_log.hpp"
#include "lpmlens/lpm_score.hpp"
#include "lpmlens/process_tree.hpp"
#include "lpmlens/projection_family.hpp"

namespace lpmlens {

using Clock = std::chrono::steady_clock;

struct DiscoveryParams {
  std::size_t top_k = 20;
  /// Candidates whose support falls below this are neither ranked nor expanded.
  double support_prune = 0.0;
  double determinism_prune = 0.0;
  std::size_t max_activities = 4;
  ScoreConfig score;
  /// 0 selects default_thread_count().
  std::size_t threads = 1;
  std::optional<Clock::time_point> deadline;
  /// Record the canonical form of every scored candidate.
  bool collect_candidates = false;
  /// Shared replay results. Only valid across projections of one base log.
  std::shared_ptr<ReplayCache> replay_cache;

  void validate() const;
};

struct RankedModel {
  ProcessTree tree;
  std::string canonical;
  QualityScore score;
};

/// Models in descending weighted average, ties by canonical form; canonical
/// forms are unique.
struct Ranking {
  std::vector<RankedModel> entries;

  std::size_t size() const noexcept { return entries.size(); }
  bool empty() const noexcept { return entries.empty(); }
  const RankedModel& operator[](std::size_t i) const { return entries[i]; }
  auto begin() const noexcept { return entries.begin(); }
  auto end() const noexcept { return entries.end(); }
};

/// Orders, deduplicates (keeping the better score) and truncates to `top_k`.
Ranking make_ranking(std::vector<RankedModel> models, std::size_t top_k);

bool ranks_before(const RankedModel& a, const RankedModel& b);

struct DiscoveryResult {
  Ranking ranking;
  std::size_t scored = 0;
  std::size_t pruned = 0;
  bool timed_out = false;
  std::vector<std::string> warnings;
  std::vector<std::string> candidates;  ///< filled when collect_candidates is set
};

/// Incremental search over process trees of 2..max_activities activities.
///
/// Seeds are every seq/xor/and combination of two distinct activities where
/// each leaf may be wrapped in a loop. A tree is extended by replacing one
/// leaf unit u (an activity or a looped activity) with seq(u, c), seq(c, u),
/// xor(u, c) or and(u, c) for a fresh activity c, itself optionally looped.
/// Candidates below a pruning threshold are dropped and not extended.
DiscoveryResult discover(const EventLog& log, const DiscoveryParams& params);

/// One step of the extension grammar, for callers that enumerate the space.
std::vector<ProcessTree> seed_trees(const std::vector<ActivityId>& alphabet);
std::vector<ProcessTree> extend_tree(const ProcessTree& tree, const std::vector<ActivityId>& alphabet);

struct ProjectionRun {
  ProjectionSet projection;
  double seconds = 0.0;
  DiscoveryResult result;
};

struct ProjectedDiscoveryResult {
  Ranking ranking;
  std::vector<ProjectionRun> runs;
  double rescoring_seconds = 0.0;
  bool timed_out = false;
  std::vector<std::string> warnings;
};

/// Discovers on each projected log, rescores every returned model on the full
/// log, drops those failing the pruning thresholds there, and keeps the
/// `top_k` unique best. Throws ContractViolation on an empty family.
ProjectedDiscoveryResult discover_with_projections(const EventLog& log, const ProjectionFamily& family,
                                                   const DiscoveryParams& params);

}  // namespace lpmlens
