#pragma once

#include <string>
#include <vector>

#include "lpmlens/event_log.hpp"

namespace lpmlens {

/// A collection of projection sets. After `reduce_to_antichain` no member is
/// a subset of another and members are sorted.
struct ProjectionFamily {
  std::vector<ProjectionSet> sets;

  bool empty() const noexcept { return sets.empty(); }
  std::size_t size() const noexcept { return sets.size(); }
  bool is_antichain() const;
  bool contains(const ProjectionSet& s) const;

  friend bool operator==(const ProjectionFamily&, const ProjectionFamily&) = default;
};

/// Drops duplicates and every set contained in another member; sorts the rest.
ProjectionFamily reduce_to_antichain(std::vector<ProjectionSet> sets);

/// Drops members with fewer than `min_size` activities.
ProjectionFamily drop_smaller_than(ProjectionFamily family, std::size_t min_size);

std::vector<std::vector<std::string>> family_names(const EventLog& log, const ProjectionFamily& family);

}  // namespace lpmlens
