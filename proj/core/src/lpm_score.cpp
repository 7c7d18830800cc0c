#include "lpmlens/lpm_score.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <mutex>
#include <unordered_set>

#include "lpmlens/errors.hpp"

namespace lpmlens {

void ScoreWeights::validate() const {
  const auto w = as_array();
  double sum = 0.0;
  for (double v : w) {
    if (!(v >= 0.0)) throw ContractViolation("score weights must be non-negative");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw ContractViolation("score weights must sum to 1");
}

namespace {

struct SegmentWorkspace {
  std::vector<std::size_t> events, count, choice;
};

// Best suffix value: events inside segments (max), then segment count (min).
void segment_into(const LanguageAutomaton& automaton, std::span<const int> symbols, SegmentWorkspace& ws,
                  Segmentation& out) {
  const std::size_t n = symbols.size();
  ws.events.assign(n + 1, 0);
  ws.count.assign(n + 1, 0);
  ws.choice.assign(n + 1, 0);
  auto& events = ws.events;
  auto& count = ws.count;
  auto& choice = ws.choice;
  for (std::size_t i = n; i-- > 0;) {
    events[i] = events[i + 1];
    count[i] = count[i + 1];
    choice[i] = i;  // i means "leave event i unfitted"
    int state = automaton.initial();
    for (std::size_t e = i; e < n; ++e) {
      if (symbols[e] < 0) break;
      state = automaton.next(state, static_cast<std::size_t>(symbols[e]));
      if (state == LanguageAutomaton::kDead) break;
      if (!automaton.accepting(state)) continue;
      const std::size_t ev = e + 1 - i + events[e + 1];
      const std::size_t cnt = count[e + 1] + 1;
      const bool better = ev > events[i] || (ev == events[i] && cnt < count[i]);
      const bool tie_over_skip = ev == events[i] && cnt == count[i] && choice[i] == i;
      if (better || tie_over_skip) {
        events[i] = ev;
        count[i] = cnt;
        choice[i] = e + 1;
      }
    }
  }
  out.fitting_events = events[0];
  out.segments.clear();
  for (std::size_t i = 0; i < n;) {
    if (choice[i] == i) {
      ++i;
    } else {
      out.segments.push_back({i, choice[i]});
      i = choice[i];
    }
  }
}

// Distinct short words, packed into one integer when the alphabet and length
// bound allow it.
class WordSet {
 public:
  WordSet(std::size_t symbols, std::size_t max_len) : base_(symbols + 1) {
    double capacity = 1.0;
    for (std::size_t i = 0; i < max_len; ++i) capacity *= static_cast<double>(base_);
    packed_ = capacity < 1.8e19;
  }

  void insert(std::span<const int> word) {
    if (packed_) {
      std::uint64_t key = 0;
      for (int s : word) key = key * base_ + static_cast<std::uint64_t>(s) + 1;
      keys_.insert(key);
    } else {
      words_.emplace(word.begin(), word.end());
    }
  }

  std::size_t size() const { return packed_ ? keys_.size() : words_.size(); }

 private:
  std::uint64_t base_;
  bool packed_;
  std::unordered_set<std::uint64_t> keys_;
  std::set<std::vector<int>> words_;
};

}  // namespace

Segmentation segment_symbols(const LanguageAutomaton& automaton, std::span<const int> symbols) {
  SegmentWorkspace ws;
  Segmentation out;
  segment_into(automaton, symbols, ws, out);
  return out;
}

Segmentation segment_trace(std::span<const ActivityId> projected, const ProcessTree& tree) {
  const LanguageAutomaton automaton(tree_to_net(tree));
  std::vector<int> symbols;
  symbols.reserve(projected.size());
  for (auto a : projected) symbols.push_back(automaton.symbol_of(a));
  return segment_symbols(automaton, symbols);
}

double harmonic_mean(std::span<const double> values) {
  if (values.empty()) return 0.0;
  double inv = 0.0;
  for (double v : values) {
    if (v <= 0.0) return 0.0;
    inv += 1.0 / v;
  }
  return static_cast<double>(values.size()) / inv;
}

LpmEvaluator::LpmEvaluator(const EventLog& log, ScoreConfig config) : log_(&log), config_(config) {
  config_.weights.validate();
  if (config_.max_len < 1) throw ContractViolation("language length bound must be >= 1");
}

ReplayStatistics LpmEvaluator::replay(const ProcessTree& tree) const {
  const LanguageAutomaton automaton(tree_to_net(tree));
  const auto& labels = automaton.labels();
  ReplayStatistics st;
  st.activities = labels;
  st.fitting.assign(labels.size(), 0);
  st.occurrences.resize(labels.size());
  for (std::size_t s = 0; s < labels.size(); ++s) {
    st.occurrences[s] = log_->count(labels[s]);
    if (st.occurrences[s] == 0) throw ContractViolation("model activity does not occur in the log");
  }

  std::vector<int> local(log_->dimension(), -1);
  for (std::size_t s = 0; s < labels.size(); ++s) local[labels[s]] = static_cast<int>(s);

  WordSet observed(labels.size(), config_.max_len);
  std::vector<int> symbols;
  SegmentWorkspace ws;
  Segmentation seg;
  for (const auto& v : log_->variants()) {
    symbols.clear();
    for (auto a : v.trace) {
      if (local[a] >= 0) symbols.push_back(local[a]);
    }
    if (symbols.empty()) continue;
    segment_into(automaton, symbols, ws, seg);
    const auto m = v.multiplicity;
    st.segments += seg.segments.size() * m;
    for (const auto& s : seg.segments) {
      int state = automaton.initial();
      for (std::size_t p = s.begin; p < s.end; ++p) {
        const auto sym = static_cast<std::size_t>(symbols[p]);
        st.enabled_sum += automaton.enabled_count(state) * m;
        st.firings += m;
        st.fitting[sym] += m;
        state = automaton.next(state, sym);
      }
      if (s.length() <= config_.max_len) {
        observed.insert(std::span<const int>(symbols).subspan(s.begin, s.length()));
      }
    }
  }
  st.observed_words = observed.size();
  st.language_size = automaton.count_words(config_.max_len);
  return st;
}

QualityScore LpmEvaluator::score_from(const ReplayStatistics& st) const {
  QualityScore q;
  const double total_events = static_cast<double>(log_->total_events());
  std::uint64_t covered = 0;
  for (auto c : st.occurrences) covered += c;
  q.coverage = total_events > 0 ? static_cast<double>(covered) / total_events : 0.0;

  if (st.segments > 0) {
    const double c = static_cast<double>(st.segments);
    if (config_.support_norm == SupportNorm::LogRatio) {
      q.support = total_events > 0 ? std::min(1.0, std::log1p(c) / std::log1p(total_events)) : 0.0;
    } else {
      q.support = c / (c + static_cast<double>(log_->trace_count()));
    }
    std::vector<double> ratios;
    for (std::size_t i = 0; i < st.activities.size(); ++i) {
      ratios.push_back(static_cast<double>(st.fitting[i]) / static_cast<double>(st.occurrences[i]));
    }
    q.confidence = harmonic_mean(ratios);
    q.language_fit = st.language_size > 0
                         ? static_cast<double>(st.observed_words) / static_cast<double>(st.language_size)
                         : 0.0;
    const double mean_enabled = static_cast<double>(st.enabled_sum) / static_cast<double>(st.firings);
    q.determinism = std::min(1.0, 1.0 / mean_enabled);
  }
  const auto& w = config_.weights;
  q.weighted_average = w.support * q.support + w.confidence * q.confidence + w.language_fit * q.language_fit +
                       w.determinism * q.determinism + w.coverage * q.coverage;
  return q;
}

QualityScore LpmEvaluator::score(const ProcessTree& tree) const { return score_from(replay(tree)); }

QualityScore score(const ProcessTree& tree, const EventLog& log, const ScoreConfig& config) {
  return LpmEvaluator(log, config).score(tree);
}

std::optional<ReplayStatistics> ReplayCache::find(const std::string& key) const {
  std::shared_lock lock(mutex_);
  const auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void ReplayCache::insert(const std::string& key, const ReplayStatistics& stats) {
  std::unique_lock lock(mutex_);
  entries_.try_emplace(key, stats);
}

std::size_t ReplayCache::size() const {
  std::shared_lock lock(mutex_);
  return entries_.size();
}

}  // namespace lpmlens
