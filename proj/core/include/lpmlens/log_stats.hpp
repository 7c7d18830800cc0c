#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lpmlens/event_log.hpp"

namespace lpmlens {

/// Square matrix of activity-pair statistics. Row/column `i` refers to
/// activity `order()[i]`.
class ActivityMatrix {
 public:
  ActivityMatrix() = default;
  explicit ActivityMatrix(std::vector<ActivityId> order);

  std::size_t dim() const noexcept { return order_.size(); }
  const std::vector<ActivityId>& order() const noexcept { return order_; }

  double& operator()(std::size_t i, std::size_t j) { return values_[i * dim() + j]; }
  double operator()(std::size_t i, std::size_t j) const { return values_[i * dim() + j]; }
  std::span<const double> row(std::size_t i) const { return {values_.data() + i * dim(), dim()}; }
  std::span<double> row(std::size_t i) { return {values_.data() + i * dim(), dim()}; }
  /// Position of `a` in the order, or dim() when absent.
  std::size_t index_of(ActivityId a) const;

  /// True when every row sums to 1 within `tolerance`.
  bool is_row_stochastic(double tolerance = 1e-9) const;

 private:
  std::vector<ActivityId> order_;
  std::vector<double> values_;
};

using DistributionVector = std::vector<double>;

/// Directly-follows counts of a log over its full id space: `follows[a][b]`
/// is the number of positions where `a` is immediately followed by `b`,
/// weighted by trace multiplicity.
struct AdjacencyCounts {
  std::size_t dim = 0;
  std::vector<std::uint64_t> follows;
  std::vector<std::uint64_t> occurrences;

  std::uint64_t followed_by(ActivityId a, ActivityId b) const { return follows[a * dim + b]; }
};

AdjacencyCounts adjacency_counts(const EventLog& log);

/// Ratio of occurrences of `a` directly followed by `b`; 0 when `a` is absent.
double dfr(ActivityId a, ActivityId b, const EventLog& log);
/// Ratio of occurrences of `a` directly preceded by `b`; 0 when `a` is absent.
double dpr(ActivityId a, ActivityId b, const EventLog& log);

/// dfr(a, b, L) for every b, indexed by activity id.
DistributionVector dfr_vector(ActivityId a, const EventLog& log);
DistributionVector dpr_vector(ActivityId a, const EventLog& log);

/// Entropy in bits of a vector of non-negative masses (0 log 0 := 0). The
/// vector is not renormalized.
double entropy(std::span<const double> masses);

/// Per-activity entropies of the successor and predecessor ratio vectors of
/// `L` projected on `set`, computed without materializing the projection.
struct StatisticEntropies {
  std::vector<ActivityId> activities;  // sorted members of the projection set
  std::vector<double> follows;         // H(dfr(a, L|set))
  std::vector<double> precedes;        // H(dpr(a, L|set))

  double total() const;
};

StatisticEntropies statistic_entropies(const EventLog& log, const ProjectionSet& set);

/// Sum over the alphabet of H(dfr(a, L)) + H(dpr(a, L)).
double total_entropy(const EventLog& log);
/// total_entropy(project_log(log, set)) without building the projected log.
double projected_entropy(const EventLog& log, const ProjectionSet& set);

enum class ActivityOrder { Appearance, Lexicographic };

std::vector<ActivityId> activity_order(const EventLog& log, ActivityOrder order);

ActivityMatrix dfr_matrix(const EventLog& log, const std::vector<ActivityId>& order);
ActivityMatrix dpr_matrix(const EventLog& log, const std::vector<ActivityId>& order);

/// M[i][j] = sqrt(dpr(i, j)^2 + dfr(j, i)^2) over the log alphabet.
ActivityMatrix connectedness_matrix(const EventLog& log);
ActivityMatrix connectedness_matrix(const EventLog& log, const std::vector<ActivityId>& order);

/// Divides each non-zero row by its sum; an all-zero row becomes a unit
/// self-loop so the result is always row-stochastic.
ActivityMatrix row_normalize(const ActivityMatrix& m);

}  // namespace lpmlens
