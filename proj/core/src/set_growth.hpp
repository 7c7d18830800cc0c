#pragma once

#include <algorithm>
#include <vector>

#include "lpmlens/event_log.hpp"
#include "lpmlens/projection_family.hpp"

namespace lpmlens::detail {

// Absorbs summation-order noise when comparing entropies against a threshold.
inline constexpr double kEntropySlack = 1e-12;

inline std::vector<ProjectionSet> singletons(const EventLog& log) {
  std::vector<ProjectionSet> out;
  for (auto a : log.alphabet()) out.push_back(ProjectionSet{a});
  return out;
}

/// {A + b | A in accepted, b in alphabet, b not in A}, sorted and deduplicated.
inline std::vector<ProjectionSet> grow_by_one(const std::vector<ProjectionSet>& accepted,
                                              const std::vector<ActivityId>& alphabet) {
  std::vector<ProjectionSet> out;
  for (const auto& set : accepted) {
    for (auto b : alphabet) {
      if (!set.contains(b)) out.push_back(set.with(b));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline ProjectionFamily maximal_sets(const std::vector<std::vector<ProjectionSet>>& generations) {
  std::vector<ProjectionSet> all;
  for (const auto& g : generations) all.insert(all.end(), g.begin(), g.end());
  return drop_smaller_than(reduce_to_antichain(std::move(all)), 2);
}

}  // namespace lpmlens::detail
