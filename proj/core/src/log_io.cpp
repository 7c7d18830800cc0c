#include "lpmlens/log_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <chrono>
#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_map>
#include <variant>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "lpmlens/errors.hpp"

namespace lpmlens {
namespace {

// RFC 4180 style record splitting; quoted fields may contain delimiters,
// doubled quotes and line breaks.
bool read_record(std::istream& in, char delim, std::vector<std::string>& fields,
                 std::size_t& line) {
  fields.clear();
  std::string field;
  bool in_quotes = false;
  bool any = false;
  char c;
  while (in.get(c)) {
    any = true;
    if (in_quotes) {
      if (c == '"') {
        if (in.peek() == '"') {
          in.get(c);
          field.push_back('"');
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
      }
      continue;
    }
    if (c == '"') {
      in_quotes = true;
    } else if (c == delim) {
      fields.push_back(std::move(field));
      field.clear();
    } else if (c == '\n') {
      ++line;
      break;
    } else if (c != '\r') {
      field.push_back(c);
    }
  }
  if (!any) return false;
  if (in_quotes) throw ParseError("unterminated quoted field", line);
  fields.push_back(std::move(field));
  return true;
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

std::optional<double> parse_number(const std::string& s) {
  double value = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec != std::errc() || ptr != end || s.empty()) return std::nullopt;
  return value;
}

bool parse_fixed(const std::string& s, std::size_t pos, std::size_t len, int& out) {
  if (pos + len > s.size()) return false;
  auto [ptr, ec] = std::from_chars(s.data() + pos, s.data() + pos + len, out);
  return ec == std::errc() && ptr == s.data() + pos + len;
}

using SortKey = std::variant<double, std::string>;

// Picks one comparison mode for the whole column so keys stay comparable.
std::vector<SortKey> make_sort_keys(const std::vector<std::string>& cells, TimestampOrder& order) {
  std::vector<SortKey> keys;
  keys.reserve(cells.size());
  if (std::all_of(cells.begin(), cells.end(), [](const auto& c) { return parse_number(c).has_value(); })) {
    order = TimestampOrder::Numeric;
    for (const auto& c : cells) keys.emplace_back(*parse_number(c));
    return keys;
  }
  if (std::all_of(cells.begin(), cells.end(), [](const auto& c) { return parse_iso8601(c).has_value(); })) {
    order = TimestampOrder::Iso8601;
    for (const auto& c : cells) keys.emplace_back(*parse_iso8601(c));
    return keys;
  }
  order = TimestampOrder::Lexicographic;
  for (const auto& c : cells) keys.emplace_back(c);
  return keys;
}

struct PendingEvent {
  std::string activity;
  std::size_t key_index;
};

EventLog assemble(const std::vector<std::vector<PendingEvent>>& cases,
                  const std::vector<SortKey>* keys) {
  EventLogBuilder builder;
  for (auto events : cases) {
    if (keys != nullptr) {
      std::stable_sort(events.begin(), events.end(), [&](const auto& a, const auto& b) {
        return (*keys)[a.key_index] < (*keys)[b.key_index];
      });
    }
    std::vector<std::string> names;
    for (const auto& e : events) {
      if (!e.activity.empty()) names.push_back(e.activity);
    }
    builder.add_trace(names);
  }
  return builder.build();
}

}  // namespace

std::optional<double> parse_iso8601(const std::string& raw) {
  const std::string s = trim(raw);
  int y, mo, d;
  if (s.size() < 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
  if (!parse_fixed(s, 0, 4, y) || !parse_fixed(s, 5, 2, mo) || !parse_fixed(s, 8, 2, d)) return std::nullopt;
  const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(mo)},
                                        std::chrono::day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) return std::nullopt;
  double seconds = static_cast<double>(std::chrono::sys_days{ymd}.time_since_epoch().count()) * 86400.0;
  std::size_t pos = 10;
  if (pos < s.size() && (s[pos] == 'T' || s[pos] == ' ')) {
    int hh, mm, ss = 0;
    if (!parse_fixed(s, pos + 1, 2, hh) || s.size() < pos + 6 || s[pos + 3] != ':' ||
        !parse_fixed(s, pos + 4, 2, mm)) {
      return std::nullopt;
    }
    pos += 6;
    if (pos < s.size() && s[pos] == ':') {
      if (!parse_fixed(s, pos + 1, 2, ss)) return std::nullopt;
      pos += 3;
    }
    seconds += hh * 3600.0 + mm * 60.0 + ss;
    if (pos < s.size() && (s[pos] == '.' || s[pos] == ',')) {
      std::size_t end = pos + 1;
      while (end < s.size() && std::isdigit(static_cast<unsigned char>(s[end]))) ++end;
      if (end == pos + 1) return std::nullopt;
      auto frac = parse_number("0." + s.substr(pos + 1, end - pos - 1));
      if (!frac) return std::nullopt;
      seconds += *frac;
      pos = end;
    }
    if (pos < s.size()) {
      if (s[pos] == 'Z') {
        ++pos;
      } else if (s[pos] == '+' || s[pos] == '-') {
        const int sign = s[pos] == '+' ? 1 : -1;
        int oh, om = 0;
        if (!parse_fixed(s, pos + 1, 2, oh)) return std::nullopt;
        pos += 3;
        if (pos < s.size() && s[pos] == ':') ++pos;
        if (pos < s.size()) {
          if (!parse_fixed(s, pos, 2, om)) return std::nullopt;
          pos += 2;
        }
        seconds -= sign * (oh * 3600.0 + om * 60.0);
      }
    }
  }
  if (pos != s.size()) return std::nullopt;
  return seconds;
}

EventLog parse_csv(std::istream& in, const CsvConfig& config, ParseDiagnostics* diagnostics) {
  std::size_t line = 1;
  std::vector<std::string> header;
  if (!read_record(in, config.delimiter, header, line) ||
      (header.size() == 1 && trim(header[0]).empty())) {
    throw EmptyLogError("empty CSV input");
  }
  auto column = [&](const std::string& name) -> std::size_t {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (trim(header[i]) == name) return i;
    }
    throw FormatError("missing column '" + name + "'");
  };
  const auto case_col = column(config.case_column);
  const auto act_col = column(config.activity_column);
  std::optional<std::size_t> time_col;
  if (config.time_column) time_col = column(*config.time_column);

  std::unordered_map<std::string, std::size_t> case_index;
  std::vector<std::vector<PendingEvent>> cases;
  std::vector<std::string> time_cells;
  std::vector<std::string> fields;
  std::size_t rows = 0;
  while (true) {
    const std::size_t row_line = line;
    if (!read_record(in, config.delimiter, fields, line)) break;
    if (fields.size() == 1 && trim(fields[0]).empty()) continue;
    const auto needed = std::max({case_col, act_col, time_col.value_or(0)});
    if (fields.size() <= needed) throw ParseError("row has too few columns", row_line);
    ++rows;
    const auto case_id = fields[case_col];
    auto [it, inserted] = case_index.try_emplace(case_id, cases.size());
    if (inserted) cases.emplace_back();
    PendingEvent ev{trim(fields[act_col]), time_cells.size()};
    if (time_col) time_cells.push_back(trim(fields[*time_col]));
    cases[it->second].push_back(std::move(ev));
  }
  if (rows == 0) throw EmptyLogError("CSV input has a header but no rows");

  TimestampOrder order = TimestampOrder::None;
  std::vector<SortKey> keys;
  if (time_col) keys = make_sort_keys(time_cells, order);
  if (diagnostics != nullptr) {
    diagnostics->rows = rows;
    diagnostics->timestamp_order = order;
  }
  return assemble(cases, time_col ? &keys : nullptr);
}

EventLog parse_xes(std::istream& in, ParseDiagnostics* diagnostics) {
  namespace pt = boost::property_tree;
  pt::ptree doc;
  try {
    pt::read_xml(in, doc);
  } catch (const pt::xml_parser_error& e) {
    throw ParseError("malformed XES: " + e.message(), e.line());
  }
  const auto log_node = doc.get_child_optional("log");
  if (!log_node) throw FormatError("XES document has no <log> root element");

  auto attribute = [](const pt::ptree& node, const std::string& key) -> std::optional<std::string> {
    for (const auto& [tag, child] : node) {
      if (tag == "<xmlattr>") continue;
      if (child.get<std::string>("<xmlattr>.key", "") == key) {
        return child.get<std::string>("<xmlattr>.value", "");
      }
    }
    return std::nullopt;
  };

  std::size_t skipped = 0;
  std::size_t events_seen = 0;
  std::vector<std::vector<PendingEvent>> cases;
  std::vector<std::string> stamps;
  std::vector<bool> trace_has_time;
  for (const auto& [tag, trace] : *log_node) {
    if (tag != "trace") continue;
    auto& events = cases.emplace_back();
    bool any_time = false;
    std::string last_stamp;
    for (const auto& [etag, event] : trace) {
      if (etag != "event") continue;
      ++events_seen;
      auto name = attribute(event, "concept:name");
      if (!name || name->empty()) {
        ++skipped;
        continue;
      }
      if (auto stamp = attribute(event, "time:timestamp")) {
        any_time = true;
        last_stamp = *stamp;
      }
      events.push_back({*name, stamps.size()});
      stamps.push_back(last_stamp);
    }
    trace_has_time.push_back(any_time);
  }
  if (cases.empty()) throw EmptyLogError("XES document contains no traces");

  TimestampOrder order = TimestampOrder::None;
  std::vector<SortKey> keys;
  const bool any_time = std::find(trace_has_time.begin(), trace_has_time.end(), true) != trace_has_time.end();
  if (any_time) {
    // Events preceding the first timestamp of their trace carry an empty cell;
    // give them the earliest representable key so they keep their position.
    std::vector<std::string> cells;
    std::vector<std::size_t> blanks;
    for (std::size_t i = 0; i < stamps.size(); ++i) {
      if (stamps[i].empty()) blanks.push_back(i);
      else cells.push_back(stamps[i]);
    }
    auto parsed = make_sort_keys(cells, order);
    keys.resize(stamps.size());
    std::size_t next = 0;
    for (std::size_t i = 0; i < stamps.size(); ++i) {
      if (stamps[i].empty()) {
        keys[i] = order == TimestampOrder::Lexicographic ? SortKey{std::string()} : SortKey{-1e300};
      } else {
        keys[i] = parsed[next++];
      }
    }
  }
  if (diagnostics != nullptr) {
    diagnostics->rows = events_seen;
    diagnostics->skipped_events = skipped;
    diagnostics->timestamp_order = order;
  }
  return assemble(cases, any_time ? &keys : nullptr);
}

EventLog load_log(const std::string& path, const CsvConfig& config, ParseDiagnostics* diagnostics) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open '" + path + "'");
  auto lower = path;
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  if (lower.size() >= 4 && lower.compare(lower.size() - 4, 4, ".xes") == 0) {
    return parse_xes(in, diagnostics);
  }
  return parse_csv(in, config, diagnostics);
}

namespace {
std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  return out + "\"";
}
}  // namespace

void write_csv(std::ostream& out, const EventLog& log) {
  out << "case,activity,index\n";
  std::size_t case_no = 0;
  for (const auto& v : log.variants()) {
    for (std::uint64_t m = 0; m < v.multiplicity; ++m) {
      const auto case_id = "case_" + std::to_string(++case_no);
      if (v.trace.empty()) {
        out << case_id << ",,0\n";
        continue;
      }
      for (std::size_t i = 0; i < v.trace.size(); ++i) {
        out << case_id << ',' << csv_escape(log.activities().name(v.trace[i])) << ',' << i << '\n';
      }
    }
  }
}

}  // namespace lpmlens
