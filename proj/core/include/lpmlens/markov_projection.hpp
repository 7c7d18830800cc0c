#pragma once

#include <cstddef>

#include "lpmlens/event_log.hpp"
#include "lpmlens/log_stats.hpp"
#include "lpmlens/projection_family.hpp"

namespace lpmlens {

struct MclParams {
  double inflation = 1.5;
  int expansion_power = 2;
  double prune_threshold = 1e-5;
  int max_iterations = 100;
  double convergence_epsilon = 1e-8;

  void validate() const;
};

struct MclResult {
  ProjectionFamily family;
  bool converged = false;
  int iterations = 0;
  ActivityMatrix limit;
};

/// Markov clustering of a row-stochastic matrix.
///
/// Alternates expansion (matrix power) with inflation (entrywise power and
/// row renormalization), pruning entries below the threshold after each
/// inflation. Clusters are read from the final iterate: nodes with positive
/// self-mass are attractors, attractors sharing mass form one system, and a
/// cluster is a system plus every node sending mass to it. Clusters may
/// overlap; the returned family is antichain-reduced. Throws
/// ContractViolation if `markov` is not row-stochastic.
MclResult mcl(const ActivityMatrix& markov, const MclParams& params = {});

/// connectedness matrix -> row normalization -> MCL, dropping singleton clusters.
MclResult discover_markov_projections(const EventLog& log, const MclParams& params = {});

}  // namespace lpmlens
