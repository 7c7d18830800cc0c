#include "lpmlens/markov_projection.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lpmlens/errors.hpp"

namespace lpmlens {

void MclParams::validate() const {
  if (!(inflation > 1.0)) throw ContractViolation("MCL inflation must be > 1");
  if (expansion_power < 2) throw ContractViolation("MCL expansion power must be >= 2");
  if (prune_threshold < 0.0) throw ContractViolation("MCL prune threshold must be >= 0");
  if (max_iterations < 1) throw ContractViolation("MCL needs at least one iteration");
}

namespace {

using Dense = std::vector<double>;

Dense multiply(const Dense& a, const Dense& b, std::size_t n) {
  Dense out(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const double aik = a[i * n + k];
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) out[i * n + j] += aik * b[k * n + j];
    }
  }
  return out;
}

void normalize_rows(Dense& m, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) sum += m[i * n + j];
    if (sum > 0.0) {
      for (std::size_t j = 0; j < n; ++j) m[i * n + j] /= sum;
    } else {
      m[i * n + i] = 1.0;
    }
  }
}

void inflate_and_prune(Dense& m, std::size_t n, double inflation, double threshold) {
  for (double& v : m) v = v > 0.0 ? std::pow(v, inflation) : 0.0;
  normalize_rows(m, n);
  bool pruned = false;
  for (double& v : m) {
    if (v > 0.0 && v < threshold) {
      v = 0.0;
      pruned = true;
    }
  }
  if (pruned) normalize_rows(m, n);
}

std::vector<std::size_t> find_roots(std::vector<std::size_t>& parent) {
  std::vector<std::size_t> roots(parent.size());
  for (std::size_t i = 0; i < parent.size(); ++i) {
    std::size_t r = i;
    while (parent[r] != r) r = parent[r];
    roots[i] = r;
  }
  return roots;
}

ProjectionFamily interpret(const Dense& m, const std::vector<ActivityId>& order) {
  const std::size_t n = order.size();
  std::vector<std::size_t> attractors;
  for (std::size_t i = 0; i < n; ++i) {
    if (m[i * n + i] > 0.0) attractors.push_back(i);
  }
  // Union attractors that exchange mass into attractor systems.
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  for (auto a : attractors) {
    for (auto b : attractors) {
      if (a < b && (m[a * n + b] > 0.0 || m[b * n + a] > 0.0)) {
        auto roots = find_roots(parent);
        parent[std::max(roots[a], roots[b])] = std::min(roots[a], roots[b]);
      }
    }
  }
  const auto roots = find_roots(parent);
  std::vector<std::size_t> systems;
  for (auto a : attractors) {
    if (std::find(systems.begin(), systems.end(), roots[a]) == systems.end()) systems.push_back(roots[a]);
  }
  std::vector<ProjectionSet> clusters;
  for (auto sys : systems) {
    std::vector<ActivityId> members;
    for (std::size_t i = 0; i < n; ++i) {
      bool attracted = false;
      for (auto a : attractors) {
        if (roots[a] == sys && (a == i || m[i * n + a] > 0.0)) attracted = true;
      }
      if (attracted) members.push_back(order[i]);
    }
    clusters.emplace_back(std::move(members));
  }
  return reduce_to_antichain(std::move(clusters));
}

}  // namespace

MclResult mcl(const ActivityMatrix& markov, const MclParams& params) {
  params.validate();
  if (!markov.is_row_stochastic(1e-9)) throw ContractViolation("MCL input matrix is not row-stochastic");
  const std::size_t n = markov.dim();
  Dense current(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) current[i * n + j] = markov(i, j);
  }

  MclResult result;
  for (int it = 1; it <= params.max_iterations; ++it) {
    Dense next = current;
    for (int p = 1; p < params.expansion_power; ++p) next = multiply(next, current, n);
    inflate_and_prune(next, n, params.inflation, params.prune_threshold);
    double change = 0.0;
    for (std::size_t k = 0; k < next.size(); ++k) change = std::max(change, std::abs(next[k] - current[k]));
    current = std::move(next);
    result.iterations = it;
    if (change < params.convergence_epsilon) {
      result.converged = true;
      break;
    }
  }

  result.limit = ActivityMatrix(markov.order());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) result.limit(i, j) = current[i * n + j];
  }
  result.family = interpret(current, markov.order());
  return result;
}

MclResult discover_markov_projections(const EventLog& log, const MclParams& params) {
  if (log.alphabet().empty()) throw ContractViolation("Markov projection needs a non-empty alphabet");
  auto result = mcl(row_normalize(connectedness_matrix(log)), params);
  result.family = drop_smaller_than(std::move(result.family), 2);
  return result;
}

}  // namespace lpmlens
