#include "lpmlens/lpm_discovery.hpp"

#include <algorithm>
#include <map>
#include <unordered_set>

#include "lpmlens/errors.hpp"
#include "lpmlens/parallel.hpp"

namespace lpmlens {

void DiscoveryParams::validate() const {
  if (top_k < 1) throw ContractViolation("top_k must be >= 1");
  if (!(support_prune >= 0.0 && support_prune <= 1.0)) throw ContractViolation("support_prune must lie in [0, 1]");
  if (!(determinism_prune >= 0.0 && determinism_prune <= 1.0)) {
    throw ContractViolation("determinism_prune must lie in [0, 1]");
  }
  if (max_activities < 2) throw ContractViolation("max_activities must be >= 2");
  if (score.max_len < 1) throw ContractViolation("max_len must be >= 1");
  score.weights.validate();
}

bool ranks_before(const RankedModel& a, const RankedModel& b) {
  if (a.score.weighted_average != b.score.weighted_average) {
    return a.score.weighted_average > b.score.weighted_average;
  }
  return a.canonical < b.canonical;
}

Ranking make_ranking(std::vector<RankedModel> models, std::size_t top_k) {
  std::sort(models.begin(), models.end(), ranks_before);
  Ranking out;
  std::unordered_set<std::string> seen;
  for (auto& m : models) {
    if (out.entries.size() >= top_k) break;
    if (seen.insert(m.canonical).second) out.entries.push_back(std::move(m));
  }
  return out;
}

namespace {

std::vector<ProcessTree> unit_variants(ActivityId a) {
  return {ProcessTree::leaf(a), ProcessTree::loop(ProcessTree::leaf(a))};
}

std::vector<ProcessTree> combine(const ProcessTree& unit, const ProcessTree& fresh) {
  return {ProcessTree::sequence(unit, fresh), ProcessTree::sequence(fresh, unit), ProcessTree::choice(unit, fresh),
          ProcessTree::parallel(unit, fresh)};
}

bool is_unit(const ProcessTree& t) {
  return t.is_leaf() || (t.op() == TreeOperator::Loop && t.children()[0].is_leaf());
}

ProcessTree rebuild(const ProcessTree& t, std::vector<ProcessTree> children) {
  switch (t.op()) {
    case TreeOperator::Sequence: return ProcessTree::sequence(std::move(children[0]), std::move(children[1]));
    case TreeOperator::Choice: return ProcessTree::choice(std::move(children[0]), std::move(children[1]));
    case TreeOperator::Parallel: return ProcessTree::parallel(std::move(children[0]), std::move(children[1]));
    case TreeOperator::Loop: return ProcessTree::loop(std::move(children[0]));
    case TreeOperator::Activity: break;
  }
  return t;
}

// Every tree obtained by replacing exactly one unit of `t` via `replace`.
template <typename Fn>
void replace_units(const ProcessTree& t, Fn&& replace, std::vector<ProcessTree>& out) {
  if (is_unit(t)) {
    for (auto& r : replace(t)) out.push_back(std::move(r));
    return;
  }
  const auto& ch = t.children();
  for (std::size_t i = 0; i < ch.size(); ++i) {
    std::vector<ProcessTree> sub;
    replace_units(ch[i], replace, sub);
    for (auto& s : sub) {
      auto children = ch;
      children[i] = std::move(s);
      out.push_back(rebuild(t, std::move(children)));
    }
  }
}

struct Candidate {
  ProcessTree tree;
  std::string canonical;
};

QualityScore score_candidate(const LpmEvaluator& evaluator, const ProcessTree& tree, const std::string& canonical,
                             const DiscoveryParams& params) {
  if (!params.replay_cache) return evaluator.score(tree);
  const auto key = canonical + "#" + std::to_string(params.score.max_len);
  auto stats = params.replay_cache->find(key);
  if (!stats) {
    stats = evaluator.replay(tree);
    params.replay_cache->insert(key, *stats);
  }
  return evaluator.score_from(*stats);
}

}  // namespace

std::vector<ProcessTree> seed_trees(const std::vector<ActivityId>& alphabet) {
  std::vector<ProcessTree> out;
  for (std::size_t i = 0; i < alphabet.size(); ++i) {
    for (std::size_t j = i + 1; j < alphabet.size(); ++j) {
      for (const auto& u : unit_variants(alphabet[i])) {
        for (const auto& v : unit_variants(alphabet[j])) {
          for (auto& t : combine(u, v)) out.push_back(std::move(t));
        }
      }
    }
  }
  return out;
}

std::vector<ProcessTree> extend_tree(const ProcessTree& tree, const std::vector<ActivityId>& alphabet) {
  const auto used = tree.leaves();
  std::vector<ProcessTree> out;
  for (auto c : alphabet) {
    if (used.contains(c)) continue;
    const auto fresh = unit_variants(c);
    replace_units(
        tree,
        [&](const ProcessTree& unit) {
          std::vector<ProcessTree> r;
          for (const auto& f : fresh) {
            for (auto& t : combine(unit, f)) r.push_back(std::move(t));
          }
          return r;
        },
        out);
  }
  return out;
}

DiscoveryResult discover(const EventLog& log, const DiscoveryParams& params) {
  params.validate();
  DiscoveryResult result;
  const auto& alphabet = log.alphabet();
  if (alphabet.size() < 2) {
    result.warnings.push_back("log has fewer than two activities; nothing to discover");
    return result;
  }
  const LpmEvaluator evaluator(log, params.score);
  const auto& table = log.activities();
  const std::size_t threads = params.threads == 0 ? default_thread_count() : params.threads;

  std::unordered_set<std::string> seen;
  auto admit = [&](std::vector<ProcessTree> trees) {
    std::vector<Candidate> out;
    for (auto& t : trees) {
      auto canon = canonical_form(t, table);
      if (seen.insert(canon).second) out.push_back({canonicalize(t, table), std::move(canon)});
    }
    return out;
  };

  std::vector<RankedModel> kept;
  auto trim_kept = [&] {
    if (kept.size() <= 4 * params.top_k) return;
    std::nth_element(kept.begin(), kept.begin() + static_cast<std::ptrdiff_t>(params.top_k), kept.end(),
                     ranks_before);
    kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(params.top_k), kept.end());
  };

  auto level = admit(seed_trees(alphabet));
  for (std::size_t leaves = 2; !level.empty(); ++leaves) {
    std::vector<QualityScore> scores(level.size());
    std::vector<char> done(level.size(), 0);
    parallel_for(level.size(), threads, [&](std::size_t i) {
      if (params.deadline && Clock::now() > *params.deadline) return;
      scores[i] = score_candidate(evaluator, level[i].tree, level[i].canonical, params);
      done[i] = 1;
    });

    std::vector<Candidate> survivors;
    for (std::size_t i = 0; i < level.size(); ++i) {
      if (!done[i]) {
        result.timed_out = true;
        continue;
      }
      ++result.scored;
      if (params.collect_candidates) result.candidates.push_back(level[i].canonical);
      if (scores[i].support < params.support_prune || scores[i].determinism < params.determinism_prune) {
        ++result.pruned;
        continue;
      }
      kept.push_back({level[i].tree, level[i].canonical, scores[i]});
      survivors.push_back(std::move(level[i]));
    }
    trim_kept();
    if (result.timed_out || leaves >= params.max_activities || leaves >= alphabet.size()) break;

    std::vector<ProcessTree> next;
    for (const auto& s : survivors) {
      for (auto& t : extend_tree(s.tree, alphabet)) next.push_back(std::move(t));
    }
    level = admit(std::move(next));
  }
  if (result.timed_out) result.warnings.push_back("discovery deadline reached; ranking is partial");
  result.ranking = make_ranking(std::move(kept), params.top_k);
  return result;
}

ProjectedDiscoveryResult discover_with_projections(const EventLog& log, const ProjectionFamily& family,
                                                   const DiscoveryParams& params) {
  params.validate();
  if (family.empty()) throw ContractViolation("projection family must not be empty");
  ProjectedDiscoveryResult out;
  std::map<std::string, ProcessTree> found;
  for (const auto& q : family.sets) {
    ProjectionRun run;
    run.projection = q;
    const auto start = Clock::now();
    const auto projected = project_log(log, q);
    run.result = discover(projected, params);
    run.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    for (const auto& m : run.result.ranking) found.emplace(m.canonical, m.tree);
    for (const auto& w : run.result.warnings) out.warnings.push_back(w);
    out.timed_out = out.timed_out || run.result.timed_out;
    out.runs.push_back(std::move(run));
  }

  const auto start = Clock::now();
  const LpmEvaluator evaluator(log, params.score);
  std::vector<RankedModel> rescored;
  for (const auto& [canon, tree] : found) {
    auto s = score_candidate(evaluator, tree, canon, params);
    if (s.support < params.support_prune || s.determinism < params.determinism_prune) continue;
    rescored.push_back({tree, canon, s});
  }
  out.ranking = make_ranking(std::move(rescored), params.top_k);
  out.rescoring_seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return out;
}

}  // namespace lpmlens
