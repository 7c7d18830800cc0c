#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "lpmlens/event_log.hpp"
#include "lpmlens/lpm_discovery.hpp"
#include "lpmlens/markov_projection.hpp"
#include "lpmlens/projection_family.hpp"

namespace lpmlens {

enum class ProjectionMethod { Markov, Entropy, Mrig };

ProjectionMethod parse_projection_method(const std::string& name);
std::string to_string(ProjectionMethod method);

struct ProjectionMethodConfig {
  ProjectionMethod method = ProjectionMethod::Markov;
  MclParams mcl;
  double entropy_ratio = 0.7;
  double mrig_threshold = 0.1;
  std::size_t threads = 1;
};

/// Runs the selected projection-set heuristic.
ProjectionFamily discover_projections(const EventLog& log, const ProjectionMethodConfig& config);

/// Share of the ideal top-k (by canonical form) that also appears in the
/// found top-k, over min(k, |ideal|). Throws EvaluationError on an empty ideal.
double recall_at_k(const Ranking& ideal, const Ranking& found, std::size_t k);

/// sum_{i=1..k} (2^rel_i - 1) / log2(i + 1) over the first k relevances.
double dcg_at_k(std::span<const double> relevances, std::size_t k);

/// DCG of the found ranking over DCG of the ideal ranking, with the weighted
/// average as relevance. Capped at 1. Throws EvaluationError when the ideal
/// DCG is 0.
double ndcg_at_k(const Ranking& ideal, const Ranking& found, std::size_t k);

/// For every set of `family`, a uniformly drawn set of the same size from
/// `alphabet`. Sizes are preserved exactly and the result is not reduced.
ProjectionFamily random_family(const ProjectionFamily& family, const std::vector<ActivityId>& alphabet,
                               std::uint64_t seed);

enum class TimingMode {
  Wall,    ///< elapsed time of the projected phase
  CpuSum,  ///< individual projected runs summed
};

struct EvaluationConfig {
  ProjectionMethodConfig method;
  DiscoveryParams discovery;
  std::size_t repetitions = 10;
  std::uint64_t seed = 0;
  std::vector<std::size_t> cutoffs{5, 10, 20};
  TimingMode timing = TimingMode::CpuSum;
  std::chrono::duration<double> ground_truth_timeout = std::chrono::minutes(10);
  /// Share replay results across the untimed baseline repetitions. Timed
  /// runs never share.
  bool share_baseline_replays = true;
};

struct MeanWithError {
  double mean = 0.0;
  double standard_error = 0.0;
};

/// Sample mean and standard error (sample stddev / sqrt(n)); SE is 0 for n < 2.
MeanWithError mean_with_error(std::span<const double> values);

struct TimingRecord {
  double full_discovery_seconds = 0.0;
  double projection_set_seconds = 0.0;
  /// Per projected run, in family order.
  std::vector<double> projected_run_seconds;
  double rescoring_seconds = 0.0;
  double projected_wall_seconds = 0.0;

  /// Projection-set discovery plus projected discovery under `mode`.
  double projected_total(TimingMode mode) const;
};

struct EvalReport {
  ProjectionMethod method = ProjectionMethod::Markov;
  ProjectionFamily family;
  std::vector<std::size_t> projection_sizes;
  Ranking ideal;
  Ranking found;
  std::map<std::size_t, double> recall_at;
  std::map<std::size_t, double> ndcg_at;
  std::map<std::size_t, MeanWithError> baseline_recall_at;
  std::map<std::size_t, MeanWithError> baseline_ndcg_at;
  std::size_t repetitions = 0;
  TimingMode timing_mode = TimingMode::CpuSum;
  TimingRecord timing;
  double speedup = 0.0;
  /// False when ground-truth discovery hit its timeout; metrics are then absent.
  bool complete = true;
  std::vector<std::string> warnings;
};

/// Ground truth on the full log, projected discovery with the chosen
/// heuristic, metrics against the ground truth, and a random baseline of
/// matched projection sizes averaged over `repetitions` seeds.
EvalReport evaluate(const EventLog& log, const EvaluationConfig& config);

/// Same as above with a precomputed ground truth (and its discovery time).
EvalReport evaluate(const EventLog& log, const EvaluationConfig& config, const Ranking& ideal,
                    double ideal_seconds);

}  // namespace lpmlens
