#include "lpmlens/entropy_projection.hpp"

#include <algorithm>

#include "lpmlens/errors.hpp"
#include "lpmlens/log_stats.hpp"
#include "lpmlens/parallel.hpp"
#include "set_growth.hpp"

namespace lpmlens {

EntropyProjectionResult discover_entropy_projections(const EventLog& log, double ratio, std::size_t threads) {
  if (!(ratio >= 0.0 && ratio <= 1.0)) throw ContractViolation("entropy ratio must lie in [0, 1]");
  if (log.alphabet().size() < 2) throw ContractViolation("entropy projection needs at least two activities");

  EntropyProjectionResult result;
  result.log_entropy = total_entropy(log);
  result.threshold = ratio * result.log_entropy;
  result.deterministic_log = result.log_entropy == 0.0;

  std::vector<ProjectionSet> accepted = detail::singletons(log);
  result.generations.push_back(accepted);
  const auto full = log.alphabet_set();
  while (true) {
    const auto candidates = detail::grow_by_one(accepted, log.alphabet());
    if (candidates.empty()) break;
    std::vector<char> keep(candidates.size(), 0);
    parallel_for(candidates.size(), threads, [&](std::size_t i) {
      keep[i] = projected_entropy(log, candidates[i]) <= result.threshold + detail::kEntropySlack;
    });
    result.evaluated += candidates.size();
    accepted.clear();
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if (keep[i]) accepted.push_back(candidates[i]);
    }
    if (accepted.empty()) break;
    result.generations.push_back(accepted);
    if (std::find(candidates.begin(), candidates.end(), full) != candidates.end()) break;
  }
  result.family = detail::maximal_sets(result.generations);
  return result;
}

}  // namespace lpmlens
