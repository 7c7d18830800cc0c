#pragma once

#include <nlohmann/json.hpp>

#include "lpmlens/evaluation.hpp"
#include "lpmlens/event_log.hpp"
#include "lpmlens/log_stats.hpp"
#include "lpmlens/lpm_discovery.hpp"
#include "lpmlens/projection_family.hpp"

namespace lpmlens {

/// `[["a","b"],["c","d"]]` with names sorted inside each set.
nlohmann::json family_to_json(const EventLog& log, const ProjectionFamily& family);
/// Parses the shape written by family_to_json; unknown names throw FormatError.
ProjectionFamily family_from_json(const EventLog& log, const nlohmann::json& j);

nlohmann::json score_to_json(const QualityScore& score);
/// `[{"rank":1,"model":"seq(a,b)","activities":[...],"scores":{...}}, ...]`
nlohmann::json ranking_to_json(const EventLog& log, const Ranking& ranking);

/// `{"order":[...],"values":[[...],...]}`
nlohmann::json matrix_to_json(const EventLog& log, const ActivityMatrix& m);

/// Timing-derived fields (speedup, timing) vary between runs; omit them for
/// byte-reproducible output.
nlohmann::json report_to_json(const EventLog& log, const EvalReport& report, bool include_timing = true);

}  // namespace lpmlens
