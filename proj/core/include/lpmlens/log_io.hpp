#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>

#include "lpmlens/event_log.hpp"

namespace lpmlens {

struct CsvConfig {
  std::string case_column = "case";
  std::string activity_column = "activity";
  /// When set, events are stably sorted by this column within each case.
  std::optional<std::string> time_column;
  char delimiter = ',';
};

/// How timestamp cells were compared after inspecting the whole column.
enum class TimestampOrder { None, Numeric, Iso8601, Lexicographic };

struct ParseDiagnostics {
  std::size_t rows = 0;
  std::size_t skipped_events = 0;
  TimestampOrder timestamp_order = TimestampOrder::None;
};

/// Reads a delimited file with a header row. Rows sharing a case id form one
/// trace. A row with an empty activity cell registers its case without adding
/// an event, which is how empty traces survive a write/read cycle.
EventLog parse_csv(std::istream& in, const CsvConfig& config = {},
                   ParseDiagnostics* diagnostics = nullptr);

/// Reads the core of an XES document: one trace per <trace>, events named by
/// their `concept:name` attribute, optionally ordered by `time:timestamp`.
/// Events without a name are skipped and counted in `diagnostics`.
EventLog parse_xes(std::istream& in, ParseDiagnostics* diagnostics = nullptr);

/// Loads a log by file extension (`.xes` or anything else as CSV).
EventLog load_log(const std::string& path, const CsvConfig& config = {},
                  ParseDiagnostics* diagnostics = nullptr);

/// Writes `case,activity,index` rows, one case per trace occurrence.
void write_csv(std::ostream& out, const EventLog& log);

/// Seconds since the Unix epoch for an ISO-8601 date-time, if it parses.
std::optional<double> parse_iso8601(const std::string& text);

}  // namespace lpmlens
