#pragma once

#include <cstdint>
#include <initializer_list>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace lpmlens {

using ActivityId = std::uint32_t;

/// Dense interning of activity labels. Ids are assigned in order of first
/// appearance and never change once issued.
class ActivityTable {
 public:
  ActivityId intern(std::string_view name);
  /// Returns the id of `name`, or `npos` when unknown.
  ActivityId find(std::string_view name) const;
  const std::string& name(ActivityId id) const { return names_.at(id); }
  std::size_t size() const noexcept { return names_.size(); }

  static constexpr ActivityId npos = static_cast<ActivityId>(-1);

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, ActivityId> ids_;
};

using Trace = std::vector<ActivityId>;

/// A non-empty set of activities, kept sorted and duplicate free.
class ProjectionSet {
 public:
  ProjectionSet() = default;
  explicit ProjectionSet(std::vector<ActivityId> activities);
  ProjectionSet(std::initializer_list<ActivityId> activities)
      : ProjectionSet(std::vector<ActivityId>(activities)) {}

  const std::vector<ActivityId>& activities() const noexcept { return activities_; }
  std::size_t size() const noexcept { return activities_.size(); }
  bool empty() const noexcept { return activities_.empty(); }
  bool contains(ActivityId a) const;
  /// Non-strict subset test.
  bool subset_of(const ProjectionSet& other) const;
  ProjectionSet with(ActivityId a) const;
  /// Membership mask over ids `0..dim-1`.
  std::vector<bool> mask(std::size_t dim) const;

  auto begin() const noexcept { return activities_.begin(); }
  auto end() const noexcept { return activities_.end(); }

  friend bool operator==(const ProjectionSet&, const ProjectionSet&) = default;
  friend auto operator<=>(const ProjectionSet&, const ProjectionSet&) = default;

 private:
  std::vector<ActivityId> activities_;
};

/// Finite multiset of traces over an interned activity table.
///
/// Distinct traces are stored once together with their multiplicity, in
/// order of first insertion. Projections share the activity table of the log
/// they were derived from, so ids stay comparable across projections. The
/// log is immutable after construction.
class EventLog {
 public:
  struct Variant {
    Trace trace;
    std::uint64_t multiplicity = 0;
  };

  EventLog();
  EventLog(std::shared_ptr<const ActivityTable> table, std::vector<Variant> variants);

  const ActivityTable& activities() const noexcept { return *table_; }
  const std::shared_ptr<const ActivityTable>& table_ptr() const noexcept { return table_; }
  const std::vector<Variant>& variants() const noexcept { return variants_; }

  /// Sorted ids of the activities that occur in at least one trace.
  const std::vector<ActivityId>& alphabet() const noexcept { return alphabet_; }
  ProjectionSet alphabet_set() const { return ProjectionSet(alphabet_); }
  /// Size of the id space (the table), which may exceed the alphabet for projections.
  std::size_t dimension() const noexcept { return table_->size(); }

  std::uint64_t count(ActivityId a) const;
  std::uint64_t total_events() const noexcept { return total_events_; }
  std::uint64_t trace_count() const noexcept { return trace_count_; }

  /// Multiset equality; variant order is irrelevant, activities compared by name.
  bool same_multiset(const EventLog& other) const;
  /// Multiset as name sequences, convenient for assertions.
  std::map<std::vector<std::string>, std::uint64_t> as_named_multiset() const;

 private:
  std::shared_ptr<const ActivityTable> table_;
  std::vector<Variant> variants_;
  std::vector<ActivityId> alphabet_;
  std::vector<std::uint64_t> counts_;
  std::uint64_t total_events_ = 0;
  std::uint64_t trace_count_ = 0;
};

/// Accumulates traces and merges identical ones into multiplicities.
class EventLogBuilder {
 public:
  EventLogBuilder();
  explicit EventLogBuilder(std::shared_ptr<ActivityTable> table);

  void add_trace(const std::vector<std::string>& names, std::uint64_t multiplicity = 1);
  void add_trace(const Trace& trace, std::uint64_t multiplicity = 1);
  ActivityTable& table() { return *table_; }
  EventLog build() const;

 private:
  std::shared_ptr<ActivityTable> table_;
  std::vector<EventLog::Variant> variants_;
  std::map<Trace, std::size_t> index_;
};

/// Convenience for tests and fixtures: `make_log({{{"a","b"}, 2}, {{"a"}, 1}})`.
EventLog make_log(const std::vector<std::pair<std::vector<std::string>, std::uint64_t>>& traces);

/// Resolves activity names against the log's table; unknown names throw ContractViolation.
ProjectionSet make_projection(const EventLog& log, const std::vector<std::string>& names);
std::vector<std::string> names_of(const EventLog& log, const ProjectionSet& set);

Trace project_trace(std::span<const ActivityId> trace, const ProjectionSet& set);
EventLog project_log(const EventLog& log, const ProjectionSet& set);

}  // namespace lpmlens
