#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <shared_mutex>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "lpmlens/event_log.hpp"
#include "lpmlens/petri_net.hpp"
#include "lpmlens/process_tree.hpp"

namespace lpmlens {

/// Weights of the five quality criteria; must be non-negative and sum to 1.
struct ScoreWeights {
  double support = 0.2;
  double confidence = 0.2;
  double language_fit = 0.2;
  double determinism = 0.2;
  double coverage = 0.2;

  void validate() const;
  std::array<double, 5> as_array() const { return {support, confidence, language_fit, determinism, coverage}; }
  static ScoreWeights from_array(const std::array<double, 5>& w) { return {w[0], w[1], w[2], w[3], w[4]}; }
};

/// Maps the fitting-segment count c onto [0, 1].
enum class SupportNorm {
  LogRatio,    ///< ln(1 + c) / ln(1 + total events), capped at 1
  TraceRatio,  ///< c / (c + number of traces)
};

struct ScoreConfig {
  ScoreWeights weights;
  std::size_t max_len = 5;  ///< length bound of the language used for language fit
  SupportNorm support_norm = SupportNorm::LogRatio;
};

struct QualityScore {
  double support = 0.0;
  double confidence = 0.0;
  double language_fit = 0.0;
  double determinism = 0.0;
  double coverage = 0.0;
  double weighted_average = 0.0;

  friend bool operator==(const QualityScore&, const QualityScore&) = default;
};

/// Half-open range [begin, end) of a fitting segment in a projected trace.
struct Segment {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::size_t length() const { return end - begin; }
  friend bool operator==(const Segment&, const Segment&) = default;
};

/// Fitting segments of one trace; the gaps between them are non-fitting.
struct Segmentation {
  std::vector<Segment> segments;
  std::size_t fitting_events = 0;

  std::size_t fitting_segment_count() const { return segments.size(); }
};

/// Decomposes a trace into fitting and non-fitting parts so that the number
/// of events inside fitting segments is maximal. Ties go to fewer segments,
/// then to the lexicographically smallest list of (begin, end) pairs.
/// `symbols` are automaton symbol indices; negative entries never fit.
Segmentation segment_symbols(const LanguageAutomaton& automaton, std::span<const int> symbols);

/// Segments a trace already projected onto the leaves of `tree`.
Segmentation segment_trace(std::span<const ActivityId> projected, const ProcessTree& tree);

/// Raw replay counts behind a QualityScore, weighted by trace multiplicity.
struct ReplayStatistics {
  std::vector<ActivityId> activities;     ///< model activities, sorted
  std::vector<std::uint64_t> fitting;     ///< events of each activity inside fitting segments
  std::vector<std::uint64_t> occurrences; ///< events of each activity in the log
  std::uint64_t segments = 0;             ///< fitting segment count c
  std::uint64_t firings = 0;              ///< visible firings replayed
  std::uint64_t enabled_sum = 0;          ///< enabled visible labels summed over firings
  std::uint64_t observed_words = 0;       ///< distinct fitting segments within the length bound
  std::uint64_t language_size = 0;        ///< words of the bounded language
};

/// Harmonic mean; 0 if the input is empty or contains a zero.
double harmonic_mean(std::span<const double> values);

/// Scores process trees against one log. Thread-safe for concurrent scoring.
class LpmEvaluator {
 public:
  LpmEvaluator(const EventLog& log, ScoreConfig config);

  const EventLog& log() const noexcept { return *log_; }
  const ScoreConfig& config() const noexcept { return config_; }

  ReplayStatistics replay(const ProcessTree& tree) const;
  QualityScore score(const ProcessTree& tree) const;
  QualityScore score_from(const ReplayStatistics& stats) const;

 private:
  const EventLog* log_;
  ScoreConfig config_;
};

QualityScore score(const ProcessTree& tree, const EventLog& log, const ScoreConfig& config = {});

/// Replay statistics keyed by model. A tree's statistics depend only on the
/// log projected onto its own activities, so one cache can serve every
/// projection of the same base log. Thread-safe.
class ReplayCache {
 public:
  std::optional<ReplayStatistics> find(const std::string& key) const;
  void insert(const std::string& key, const ReplayStatistics& stats);
  std::size_t size() const;

 private:
  mutable std::shared_mutex mutex_;
  std::unordered_map<std::string, ReplayStatistics> entries_;
};

}  // namespace lpmlens
