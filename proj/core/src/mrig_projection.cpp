#include "lpmlens/mrig_projection.hpp"

#include <algorithm>

#include "lpmlens/errors.hpp"
#include "lpmlens/log_stats.hpp"
#include "lpmlens/parallel.hpp"
#include "set_growth.hpp"

namespace lpmlens {
namespace {

double relative_gain(double before, double after) {
  return before == 0.0 ? 0.0 : (before - after) / before;
}

double mrig_from(const StatisticEntropies& grown, const StatisticEntropies& base) {
  double best = 0.0;
  bool first = true;
  for (std::size_t i = 0; i < base.activities.size(); ++i) {
    const auto pos = std::lower_bound(grown.activities.begin(), grown.activities.end(), base.activities[i]) -
                     grown.activities.begin();
    const double gain = std::max(relative_gain(base.follows[i], grown.follows[pos]),
                                 relative_gain(base.precedes[i], grown.precedes[pos]));
    if (first || gain > best) best = gain;
    first = false;
  }
  return best;
}

}  // namespace

double mrig(const ProjectionSet& grown, const ProjectionSet& base, const EventLog& log) {
  if (!base.subset_of(grown)) throw ContractViolation("MRIG requires the base set to be a subset of the grown set");
  return mrig_from(statistic_entropies(log, grown), statistic_entropies(log, base));
}

std::vector<std::pair<ProjectionSet, MrigWitness>> MrigProjectionResult::witness_chain(
    const ProjectionSet& set) const {
  std::vector<std::pair<ProjectionSet, MrigWitness>> chain;
  auto current = set;
  for (auto it = witnesses.find(current); it != witnesses.end(); it = witnesses.find(current)) {
    chain.emplace_back(current, it->second);
    current = it->second.parent;
  }
  std::reverse(chain.begin(), chain.end());
  return chain;
}

MrigProjectionResult discover_mrig_projections(const EventLog& log, double threshold, std::size_t threads) {
  if (threshold < 0.0) throw ContractViolation("MRIG threshold must be >= 0");
  const auto& alphabet = log.alphabet();
  if (alphabet.size() < 2) throw ContractViolation("MRIG projection needs at least two activities");

  MrigProjectionResult result;
  result.generations.push_back(detail::singletons(log));

  // Pairs: adjacency in either direction.
  const auto connected = connectedness_matrix(log);
  std::vector<ProjectionSet> accepted;
  for (std::size_t i = 0; i < alphabet.size(); ++i) {
    for (std::size_t j = i + 1; j < alphabet.size(); ++j) {
      if (connected(i, j) + connected(j, i) > 0.0) accepted.push_back(ProjectionSet{alphabet[i], alphabet[j]});
    }
  }
  result.evaluated += alphabet.size() * (alphabet.size() - 1) / 2;
  if (accepted.empty()) {
    result.family = detail::maximal_sets(result.generations);
    return result;
  }
  result.generations.push_back(accepted);

  std::map<ProjectionSet, StatisticEntropies> previous;
  for (const auto& s : accepted) previous.emplace(s, statistic_entropies(log, s));

  const auto full = log.alphabet_set();
  bool reached_full = accepted.front() == full;
  while (!reached_full) {
    const auto candidates = detail::grow_by_one(accepted, alphabet);
    if (candidates.empty()) break;
    std::vector<std::optional<MrigWitness>> found(candidates.size());
    std::vector<StatisticEntropies> stats(candidates.size());
    parallel_for(candidates.size(), threads, [&](std::size_t c) {
      const auto& cand = candidates[c];
      stats[c] = statistic_entropies(log, cand);
      // Parents are tried in ascending order so the witness is deterministic.
      std::vector<ProjectionSet> parents;
      for (auto a : cand) {
        std::vector<ActivityId> rest;
        for (auto b : cand) {
          if (b != a) rest.push_back(b);
        }
        ProjectionSet parent(std::move(rest));
        if (previous.count(parent) != 0) parents.push_back(std::move(parent));
      }
      std::sort(parents.begin(), parents.end());
      for (const auto& parent : parents) {
        const double gain = mrig_from(stats[c], previous.at(parent));
        if (gain > threshold) {
          found[c] = MrigWitness{parent, gain};
          break;
        }
      }
    });
    result.evaluated += candidates.size();

    std::map<ProjectionSet, StatisticEntropies> next;
    accepted.clear();
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      if (!found[c]) continue;
      accepted.push_back(candidates[c]);
      result.witnesses.emplace(candidates[c], *found[c]);
      next.emplace(candidates[c], std::move(stats[c]));
    }
    if (accepted.empty()) break;
    result.generations.push_back(accepted);
    previous = std::move(next);
    reached_full = std::find(candidates.begin(), candidates.end(), full) != candidates.end();
  }
  result.family = detail::maximal_sets(result.generations);
  return result;
}

}  // namespace lpmlens
