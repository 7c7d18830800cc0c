#pragma once

#include <cstddef>
#include <vector>

#include "lpmlens/event_log.hpp"
#include "lpmlens/projection_family.hpp"

namespace lpmlens {

struct EntropyProjectionResult {
  ProjectionFamily family;
  double log_entropy = 0.0;
  double threshold = 0.0;
  /// The full log has zero total entropy, so only zero-entropy sets pass.
  bool deterministic_log = false;
  /// Accepted sets per generation; generations[0] holds the singletons.
  std::vector<std::vector<ProjectionSet>> generations;
  std::size_t evaluated = 0;
};

/// Grows projection sets one activity at a time, keeping a set while the
/// total entropy of the projected log stays within `ratio` times the total
/// entropy of the full log. Returns the maximal accepted sets with at least
/// two activities.
EntropyProjectionResult discover_entropy_projections(const EventLog& log, double ratio = 0.7,
                                                     std::size_t threads = 1);

}  // namespace lpmlens
