#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "lpmlens/event_log.hpp"
#include "lpmlens/projection_family.hpp"

namespace lpmlens {

/// Maximal relative information gain of growing `base` into `grown`: the
/// largest relative entropy drop of any successor or predecessor ratio
/// vector of an activity in `base`. Terms whose baseline entropy is zero
/// contribute 0. Throws ContractViolation unless base is a subset of grown.
double mrig(const ProjectionSet& grown, const ProjectionSet& base, const EventLog& log);

struct MrigWitness {
  ProjectionSet parent;
  double gain = 0.0;
};

struct MrigProjectionResult {
  ProjectionFamily family;
  std::vector<std::vector<ProjectionSet>> generations;
  /// Accepting parent for every accepted set of size >= 3. Pairs are admitted
  /// by the connectedness bootstrap and carry no witness.
  std::map<ProjectionSet, MrigWitness> witnesses;
  std::size_t evaluated = 0;

  /// Steps from the seeding pair up to `set`, in growth order.
  std::vector<std::pair<ProjectionSet, MrigWitness>> witness_chain(const ProjectionSet& set) const;
};

/// Grows projection sets while some one-activity extension has MRIG > `threshold`.
///
/// Pairs are seeded from activities that are adjacent somewhere in the log
/// (connectedness M[i][j] + M[j][i] > 0) because every statistic of a
/// single-activity projection has zero entropy.
MrigProjectionResult discover_mrig_projections(const EventLog& log, double threshold = 0.1,
                                               std::size_t threads = 1);

}  // namespace lpmlens
