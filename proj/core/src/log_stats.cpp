#include "lpmlens/log_stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lpmlens/errors.hpp"

namespace lpmlens {

ActivityMatrix::ActivityMatrix(std::vector<ActivityId> order)
    : order_(std::move(order)), values_(order_.size() * order_.size(), 0.0) {}

std::size_t ActivityMatrix::index_of(ActivityId a) const {
  auto it = std::find(order_.begin(), order_.end(), a);
  return static_cast<std::size_t>(it - order_.begin());
}

bool ActivityMatrix::is_row_stochastic(double tolerance) const {
  for (std::size_t i = 0; i < dim(); ++i) {
    const auto r = row(i);
    double sum = 0;
    for (double v : r) {
      if (v < 0 || !std::isfinite(v)) return false;
      sum += v;
    }
    if (std::abs(sum - 1.0) > tolerance) return false;
  }
  return true;
}

AdjacencyCounts adjacency_counts(const EventLog& log) {
  AdjacencyCounts c;
  c.dim = log.dimension();
  c.follows.assign(c.dim * c.dim, 0);
  c.occurrences.assign(c.dim, 0);
  for (const auto& v : log.variants()) {
    for (std::size_t i = 0; i < v.trace.size(); ++i) {
      c.occurrences[v.trace[i]] += v.multiplicity;
      if (i + 1 < v.trace.size()) c.follows[v.trace[i] * c.dim + v.trace[i + 1]] += v.multiplicity;
    }
  }
  return c;
}

namespace {

double ratio(std::uint64_t num, std::uint64_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

// Counts occurrences of `a` and how often `b` sits at `offset` (+1 successor,
// -1 predecessor) relative to it.
double neighbour_ratio(ActivityId a, ActivityId b, const EventLog& log, int offset) {
  std::uint64_t hits = 0, total = 0;
  for (const auto& v : log.variants()) {
    const auto n = static_cast<std::ptrdiff_t>(v.trace.size());
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      if (v.trace[i] != a) continue;
      total += v.multiplicity;
      const auto j = i + offset;
      if (j >= 0 && j < n && v.trace[j] == b) hits += v.multiplicity;
    }
  }
  return ratio(hits, total);
}

}  // namespace

double dfr(ActivityId a, ActivityId b, const EventLog& log) { return neighbour_ratio(a, b, log, +1); }

double dpr(ActivityId a, ActivityId b, const EventLog& log) { return neighbour_ratio(a, b, log, -1); }

DistributionVector dfr_vector(ActivityId a, const EventLog& log) {
  const auto c = adjacency_counts(log);
  DistributionVector out(c.dim, 0.0);
  if (a >= c.dim) return out;
  for (ActivityId b = 0; b < c.dim; ++b) out[b] = ratio(c.followed_by(a, b), c.occurrences[a]);
  return out;
}

DistributionVector dpr_vector(ActivityId a, const EventLog& log) {
  const auto c = adjacency_counts(log);
  DistributionVector out(c.dim, 0.0);
  if (a >= c.dim) return out;
  for (ActivityId b = 0; b < c.dim; ++b) out[b] = ratio(c.followed_by(b, a), c.occurrences[a]);
  return out;
}

double entropy(std::span<const double> masses) {
  double h = 0.0;
  for (double x : masses) {
    if (x > 0.0) h -= x * std::log2(x);
  }
  return h;
}

double StatisticEntropies::total() const {
  double sum = 0.0;
  for (std::size_t i = 0; i < activities.size(); ++i) sum += follows[i] + precedes[i];
  return sum;
}

StatisticEntropies statistic_entropies(const EventLog& log, const ProjectionSet& set) {
  StatisticEntropies out;
  out.activities = set.activities();
  const std::size_t k = out.activities.size();
  std::vector<std::size_t> local(log.dimension(), k);
  for (std::size_t i = 0; i < k; ++i) {
    if (out.activities[i] < local.size()) local[out.activities[i]] = i;
  }
  std::vector<std::uint64_t> follows(k * k, 0), occ(k, 0);
  for (const auto& v : log.variants()) {
    std::size_t prev = k;
    for (auto a : v.trace) {
      const auto cur = local[a];
      if (cur == k) continue;
      occ[cur] += v.multiplicity;
      if (prev != k) follows[prev * k + cur] += v.multiplicity;
      prev = cur;
    }
  }
  out.follows.assign(k, 0.0);
  out.precedes.assign(k, 0.0);
  std::vector<double> row(k);
  for (std::size_t a = 0; a < k; ++a) {
    if (occ[a] == 0) continue;
    for (std::size_t b = 0; b < k; ++b) row[b] = ratio(follows[a * k + b], occ[a]);
    out.follows[a] = entropy(row);
    for (std::size_t b = 0; b < k; ++b) row[b] = ratio(follows[b * k + a], occ[a]);
    out.precedes[a] = entropy(row);
  }
  return out;
}

double total_entropy(const EventLog& log) { return statistic_entropies(log, log.alphabet_set()).total(); }

double projected_entropy(const EventLog& log, const ProjectionSet& set) {
  return statistic_entropies(log, set).total();
}

std::vector<ActivityId> activity_order(const EventLog& log, ActivityOrder order) {
  auto ids = log.alphabet();
  if (order == ActivityOrder::Lexicographic) {
    std::sort(ids.begin(), ids.end(), [&](ActivityId a, ActivityId b) {
      return log.activities().name(a) < log.activities().name(b);
    });
  }
  return ids;
}

namespace {

template <typename Fn>
ActivityMatrix fill_matrix(const std::vector<ActivityId>& order, Fn&& fn) {
  ActivityMatrix m(order);
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (std::size_t j = 0; j < order.size(); ++j) m(i, j) = fn(order[i], order[j]);
  }
  return m;
}

}  // namespace

ActivityMatrix dfr_matrix(const EventLog& log, const std::vector<ActivityId>& order) {
  const auto c = adjacency_counts(log);
  return fill_matrix(order, [&](ActivityId a, ActivityId b) {
    return ratio(c.followed_by(a, b), c.occurrences[a]);
  });
}

ActivityMatrix dpr_matrix(const EventLog& log, const std::vector<ActivityId>& order) {
  const auto c = adjacency_counts(log);
  return fill_matrix(order, [&](ActivityId a, ActivityId b) {
    return ratio(c.followed_by(b, a), c.occurrences[a]);
  });
}

ActivityMatrix connectedness_matrix(const EventLog& log) { return connectedness_matrix(log, log.alphabet()); }

ActivityMatrix connectedness_matrix(const EventLog& log, const std::vector<ActivityId>& order) {
  if (order.empty()) throw ContractViolation("connectedness matrix needs at least one activity");
  const auto c = adjacency_counts(log);
  return fill_matrix(order, [&](ActivityId i, ActivityId j) {
    const double precedes = ratio(c.followed_by(j, i), c.occurrences[i]);  // dpr(i, j)
    const double follows = ratio(c.followed_by(j, i), c.occurrences[j]);   // dfr(j, i)
    return std::sqrt(precedes * precedes + follows * follows);
  });
}

ActivityMatrix row_normalize(const ActivityMatrix& m) {
  ActivityMatrix out = m;
  for (std::size_t i = 0; i < out.dim(); ++i) {
    auto r = out.row(i);
    const double sum = std::accumulate(r.begin(), r.end(), 0.0);
    if (sum > 0.0) {
      for (double& v : r) v /= sum;
    } else {
      std::fill(r.begin(), r.end(), 0.0);
      r[i] = 1.0;
    }
  }
  return out;
}

}  // namespace lpmlens
