#include "lpmlens/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <unordered_set>

#include "lpmlens/entropy_projection.hpp"
#include "lpmlens/errors.hpp"
#include "lpmlens/mrig_projection.hpp"

namespace lpmlens {

ProjectionMethod parse_projection_method(const std::string& name) {
  if (name == "markov") return ProjectionMethod::Markov;
  if (name == "entropy") return ProjectionMethod::Entropy;
  if (name == "mrig") return ProjectionMethod::Mrig;
  throw ContractViolation("unknown projection method '" + name + "'");
}

std::string to_string(ProjectionMethod method) {
  switch (method) {
    case ProjectionMethod::Markov: return "markov";
    case ProjectionMethod::Entropy: return "entropy";
    case ProjectionMethod::Mrig: return "mrig";
  }
  return "";
}

ProjectionFamily discover_projections(const EventLog& log, const ProjectionMethodConfig& config) {
  switch (config.method) {
    case ProjectionMethod::Markov: return discover_markov_projections(log, config.mcl).family;
    case ProjectionMethod::Entropy: return discover_entropy_projections(log, config.entropy_ratio, config.threads).family;
    case ProjectionMethod::Mrig: return discover_mrig_projections(log, config.mrig_threshold, config.threads).family;
  }
  return {};
}

double recall_at_k(const Ranking& ideal, const Ranking& found, std::size_t k) {
  if (k < 1) throw ContractViolation("k must be >= 1");
  if (ideal.empty()) throw EvaluationError("recall is undefined for an empty ideal ranking");
  std::unordered_set<std::string> wanted;
  for (std::size_t i = 0; i < std::min(k, ideal.size()); ++i) wanted.insert(ideal[i].canonical);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < std::min(k, found.size()); ++i) hits += wanted.count(found[i].canonical);
  return static_cast<double>(hits) / static_cast<double>(wanted.size());
}

double dcg_at_k(std::span<const double> relevances, std::size_t k) {
  double dcg = 0.0;
  for (std::size_t i = 0; i < std::min(k, relevances.size()); ++i) {
    dcg += (std::exp2(relevances[i]) - 1.0) / std::log2(static_cast<double>(i) + 2.0);
  }
  return dcg;
}

namespace {
std::vector<double> relevances(const Ranking& r) {
  std::vector<double> out;
  for (const auto& m : r) out.push_back(m.score.weighted_average);
  return out;
}
}  // namespace

double ndcg_at_k(const Ranking& ideal, const Ranking& found, std::size_t k) {
  if (k < 1) throw ContractViolation("k must be >= 1");
  const double idcg = dcg_at_k(relevances(ideal), k);
  if (!(idcg > 0.0)) throw EvaluationError("ideal DCG is zero; NDCG is undefined");
  return std::min(1.0, dcg_at_k(relevances(found), k) / idcg);
}

ProjectionFamily random_family(const ProjectionFamily& family, const std::vector<ActivityId>& alphabet,
                               std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  ProjectionFamily out;
  for (const auto& q : family.sets) {
    if (q.size() > alphabet.size()) throw ContractViolation("projection set larger than the alphabet");
    auto pool = alphabet;
    // Partial Fisher-Yates: the first |q| slots become a uniform sample.
    for (std::size_t i = 0; i < q.size(); ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, pool.size() - 1);
      std::swap(pool[i], pool[pick(rng)]);
    }
    pool.resize(q.size());
    out.sets.emplace_back(std::move(pool));
  }
  return out;
}

MeanWithError mean_with_error(std::span<const double> values) {
  MeanWithError out;
  if (values.empty()) return out;
  const double n = static_cast<double>(values.size());
  out.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  if (values.size() < 2) return out;
  double ss = 0.0;
  for (double v : values) ss += (v - out.mean) * (v - out.mean);
  out.standard_error = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
  return out;
}

double TimingRecord::projected_total(TimingMode mode) const {
  if (mode == TimingMode::Wall) return projection_set_seconds + projected_wall_seconds;
  return projection_set_seconds + std::accumulate(projected_run_seconds.begin(), projected_run_seconds.end(), 0.0) +
         rescoring_seconds;
}

namespace {

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

Ranking projected_ranking(const EventLog& log, const ProjectionFamily& family, const DiscoveryParams& params,
                          ProjectedDiscoveryResult* detail) {
  if (family.empty()) return {};
  auto result = discover_with_projections(log, family, params);
  auto ranking = result.ranking;
  if (detail != nullptr) *detail = std::move(result);
  return ranking;
}

}  // namespace

EvalReport evaluate(const EventLog& log, const EvaluationConfig& config) {
  auto params = config.discovery;
  params.deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(config.ground_truth_timeout);
  const auto start = Clock::now();
  auto truth = discover(log, params);
  const double seconds = seconds_since(start);
  if (truth.timed_out) {
    EvalReport partial;
    partial.method = config.method.method;
    partial.complete = false;
    partial.ideal = std::move(truth.ranking);
    partial.timing.full_discovery_seconds = seconds;
    partial.warnings.push_back("ground-truth discovery exceeded its timeout; evaluation aborted");
    return partial;
  }
  return evaluate(log, config, truth.ranking, seconds);
}

EvalReport evaluate(const EventLog& log, const EvaluationConfig& config, const Ranking& ideal,
                    double ideal_seconds) {
  if (config.cutoffs.empty()) throw ContractViolation("at least one cutoff k is required");
  if (ideal.empty()) throw EvaluationError("ground-truth ranking is empty; lower the pruning threshold");
  auto params = config.discovery;
  params.deadline.reset();

  EvalReport report;
  report.method = config.method.method;
  report.ideal = ideal;
  report.timing_mode = config.timing;
  report.timing.full_discovery_seconds = ideal_seconds;

  auto start = Clock::now();
  report.family = discover_projections(log, config.method);
  report.timing.projection_set_seconds = seconds_since(start);
  for (const auto& q : report.family.sets) report.projection_sizes.push_back(q.size());
  if (report.family.empty()) report.warnings.push_back("projection method returned no projection sets");

  ProjectedDiscoveryResult detail;
  start = Clock::now();
  report.found = projected_ranking(log, report.family, params, &detail);
  report.timing.projected_wall_seconds = seconds_since(start);
  for (const auto& run : detail.runs) report.timing.projected_run_seconds.push_back(run.seconds);
  report.timing.rescoring_seconds = detail.rescoring_seconds;
  for (const auto& w : detail.warnings) report.warnings.push_back(w);

  for (auto k : config.cutoffs) {
    report.recall_at[k] = recall_at_k(ideal, report.found, k);
    report.ndcg_at[k] = ndcg_at_k(ideal, report.found, k);
  }

  report.repetitions = config.repetitions;
  if (config.repetitions == 1) report.warnings.push_back("one repetition: baseline standard error reported as 0");
  std::map<std::size_t, std::vector<double>> recalls, ndcgs;
  auto baseline_params = params;
  if (config.share_baseline_replays) baseline_params.replay_cache = std::make_shared<ReplayCache>();
  std::seed_seq master{config.seed, config.seed >> 32};
  std::vector<std::uint32_t> seeds(config.repetitions);
  master.generate(seeds.begin(), seeds.end());
  for (std::size_t rep = 0; rep < config.repetitions; ++rep) {
    const auto random = random_family(report.family, log.alphabet(), seeds[rep]);
    const auto ranking = projected_ranking(log, random, baseline_params, nullptr);
    for (auto k : config.cutoffs) {
      recalls[k].push_back(recall_at_k(ideal, ranking, k));
      ndcgs[k].push_back(ndcg_at_k(ideal, ranking, k));
    }
  }
  for (auto k : config.cutoffs) {
    report.baseline_recall_at[k] = mean_with_error(recalls[k]);
    report.baseline_ndcg_at[k] = mean_with_error(ndcgs[k]);
  }

  const double projected = report.timing.projected_total(config.timing);
  report.speedup = projected > 0.0 ? ideal_seconds / projected : 0.0;
  return report;
}

}  // namespace lpmlens
