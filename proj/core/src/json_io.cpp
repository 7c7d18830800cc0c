#include "lpmlens/json_io.hpp"

#include "lpmlens/errors.hpp"

namespace lpmlens {

using nlohmann::json;

json family_to_json(const EventLog& log, const ProjectionFamily& family) {
  json out = json::array();
  for (const auto& names : family_names(log, family)) out.push_back(names);
  return out;
}

ProjectionFamily family_from_json(const EventLog& log, const json& j) {
  if (!j.is_array()) throw FormatError("projection family must be a JSON array of arrays");
  ProjectionFamily family;
  for (const auto& set : j) {
    if (!set.is_array() || set.empty()) throw FormatError("each projection set must be a non-empty array");
    std::vector<ActivityId> ids;
    for (const auto& name : set) {
      if (!name.is_string()) throw FormatError("activity names must be strings");
      const auto id = log.activities().find(name.get<std::string>());
      if (id == ActivityTable::npos) throw FormatError("unknown activity '" + name.get<std::string>() + "'");
      ids.push_back(id);
    }
    family.sets.emplace_back(std::move(ids));
  }
  return family;
}

json score_to_json(const QualityScore& s) {
  return json{{"support", s.support},         {"confidence", s.confidence},
              {"language_fit", s.language_fit}, {"determinism", s.determinism},
              {"coverage", s.coverage},       {"weighted_average", s.weighted_average}};
}

json ranking_to_json(const EventLog& log, const Ranking& ranking) {
  json out = json::array();
  std::size_t rank = 0;
  for (const auto& m : ranking) {
    out.push_back(json{{"rank", ++rank},
                       {"model", m.canonical},
                       {"activities", names_of(log, m.tree.leaves())},
                       {"scores", score_to_json(m.score)}});
  }
  return out;
}

json matrix_to_json(const EventLog& log, const ActivityMatrix& m) {
  json order = json::array();
  for (auto a : m.order()) order.push_back(log.activities().name(a));
  json values = json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    const auto r = m.row(i);
    values.push_back(std::vector<double>(r.begin(), r.end()));
  }
  return json{{"order", order}, {"values", values}};
}

namespace {
json keyed(const std::map<std::size_t, double>& m) {
  json out = json::object();
  for (const auto& [k, v] : m) out[std::to_string(k)] = v;
  return out;
}

json keyed(const std::map<std::size_t, MeanWithError>& m) {
  json out = json::object();
  for (const auto& [k, v] : m) out[std::to_string(k)] = json{{"mean", v.mean}, {"standard_error", v.standard_error}};
  return out;
}
}  // namespace

json report_to_json(const EventLog& log, const EvalReport& r, bool include_timing) {
  json timing{{"full_discovery_seconds", r.timing.full_discovery_seconds},
              {"projection_set_seconds", r.timing.projection_set_seconds},
              {"projected_run_seconds", r.timing.projected_run_seconds},
              {"projected_wall_seconds", r.timing.projected_wall_seconds},
              {"rescoring_seconds", r.timing.rescoring_seconds},
              {"mode", r.timing_mode == TimingMode::Wall ? "wall" : "cpu-sum"}};
  json out{{"method", to_string(r.method)},
              {"complete", r.complete},
              {"projection_sets", family_to_json(log, r.family)},
              {"projection_sizes", r.projection_sizes},
              {"recall_at", keyed(r.recall_at)},
              {"ndcg_at", keyed(r.ndcg_at)},
              {"random_baseline", json{{"repetitions", r.repetitions},
                                       {"recall_at", keyed(r.baseline_recall_at)},
                                       {"ndcg_at", keyed(r.baseline_ndcg_at)}}},
              {"ideal", ranking_to_json(log, r.ideal)},
              {"found", ranking_to_json(log, r.found)},
              {"warnings", r.warnings}};
  if (include_timing) {
    out["speedup"] = r.speedup;
    out["timing"] = timing;
  }
  return out;
}

}  // namespace lpmlens
