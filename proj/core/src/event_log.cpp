#include "lpmlens/event_log.hpp"

#include <algorithm>

#include "lpmlens/errors.hpp"

namespace lpmlens {

ActivityId ActivityTable::intern(std::string_view name) {
  if (name.empty()) throw FormatError("activity label must not be empty");
  auto it = ids_.find(std::string(name));
  if (it != ids_.end()) return it->second;
  const auto id = static_cast<ActivityId>(names_.size());
  names_.emplace_back(name);
  ids_.emplace(names_.back(), id);
  return id;
}

ActivityId ActivityTable::find(std::string_view name) const {
  auto it = ids_.find(std::string(name));
  return it == ids_.end() ? npos : it->second;
}

ProjectionSet::ProjectionSet(std::vector<ActivityId> activities)
    : activities_(std::move(activities)) {
  std::sort(activities_.begin(), activities_.end());
  activities_.erase(std::unique(activities_.begin(), activities_.end()), activities_.end());
}

bool ProjectionSet::contains(ActivityId a) const {
  return std::binary_search(activities_.begin(), activities_.end(), a);
}

bool ProjectionSet::subset_of(const ProjectionSet& other) const {
  return std::includes(other.activities_.begin(), other.activities_.end(),
                       activities_.begin(), activities_.end());
}

ProjectionSet ProjectionSet::with(ActivityId a) const {
  auto copy = activities_;
  copy.push_back(a);
  return ProjectionSet(std::move(copy));
}

std::vector<bool> ProjectionSet::mask(std::size_t dim) const {
  std::vector<bool> m(dim, false);
  for (auto a : activities_) {
    if (a < dim) m[a] = true;
  }
  return m;
}

EventLog::EventLog() : table_(std::make_shared<ActivityTable>()) {}

EventLog::EventLog(std::shared_ptr<const ActivityTable> table, std::vector<Variant> variants)
    : table_(std::move(table)), variants_(std::move(variants)) {
  counts_.assign(table_->size(), 0);
  for (const auto& v : variants_) {
    trace_count_ += v.multiplicity;
    total_events_ += v.trace.size() * v.multiplicity;
    for (auto a : v.trace) {
      if (a >= counts_.size()) throw ContractViolation("trace refers to an activity outside its table");
      counts_[a] += v.multiplicity;
    }
  }
  for (ActivityId a = 0; a < counts_.size(); ++a) {
    if (counts_[a] > 0) alphabet_.push_back(a);
  }
}

std::uint64_t EventLog::count(ActivityId a) const {
  return a < counts_.size() ? counts_[a] : 0;
}

std::map<std::vector<std::string>, std::uint64_t> EventLog::as_named_multiset() const {
  std::map<std::vector<std::string>, std::uint64_t> out;
  for (const auto& v : variants_) {
    std::vector<std::string> names;
    names.reserve(v.trace.size());
    for (auto a : v.trace) names.push_back(table_->name(a));
    out[names] += v.multiplicity;
  }
  return out;
}

bool EventLog::same_multiset(const EventLog& other) const {
  return as_named_multiset() == other.as_named_multiset();
}

EventLogBuilder::EventLogBuilder() : table_(std::make_shared<ActivityTable>()) {}

EventLogBuilder::EventLogBuilder(std::shared_ptr<ActivityTable> table) : table_(std::move(table)) {}

void EventLogBuilder::add_trace(const std::vector<std::string>& names, std::uint64_t multiplicity) {
  Trace trace;
  trace.reserve(names.size());
  for (const auto& n : names) trace.push_back(table_->intern(n));
  add_trace(trace, multiplicity);
}

void EventLogBuilder::add_trace(const Trace& trace, std::uint64_t multiplicity) {
  if (multiplicity == 0) return;
  auto [it, inserted] = index_.try_emplace(trace, variants_.size());
  if (inserted) {
    variants_.push_back({trace, multiplicity});
  } else {
    variants_[it->second].multiplicity += multiplicity;
  }
}

EventLog EventLogBuilder::build() const {
  return EventLog(std::make_shared<ActivityTable>(*table_), variants_);
}

EventLog make_log(const std::vector<std::pair<std::vector<std::string>, std::uint64_t>>& traces) {
  EventLogBuilder builder;
  for (const auto& [names, m] : traces) builder.add_trace(names, m);
  return builder.build();
}

ProjectionSet make_projection(const EventLog& log, const std::vector<std::string>& names) {
  std::vector<ActivityId> ids;
  for (const auto& n : names) {
    auto id = log.activities().find(n);
    if (id == ActivityTable::npos) throw ContractViolation("unknown activity '" + n + "'");
    ids.push_back(id);
  }
  return ProjectionSet(std::move(ids));
}

std::vector<std::string> names_of(const EventLog& log, const ProjectionSet& set) {
  std::vector<std::string> out;
  for (auto a : set) out.push_back(log.activities().name(a));
  std::sort(out.begin(), out.end());
  return out;
}

Trace project_trace(std::span<const ActivityId> trace, const ProjectionSet& set) {
  Trace out;
  for (auto a : trace) {
    if (set.contains(a)) out.push_back(a);
  }
  return out;
}

EventLog project_log(const EventLog& log, const ProjectionSet& set) {
  const auto keep = set.mask(log.dimension());
  std::vector<EventLog::Variant> variants;
  std::map<Trace, std::size_t> index;
  for (const auto& v : log.variants()) {
    Trace projected;
    for (auto a : v.trace) {
      if (keep[a]) projected.push_back(a);
    }
    auto [it, inserted] = index.try_emplace(projected, variants.size());
    if (inserted) {
      variants.push_back({std::move(projected), v.multiplicity});
    } else {
      variants[it->second].multiplicity += v.multiplicity;
    }
  }
  return EventLog(log.table_ptr(), std::move(variants));
}

}  // namespace lpmlens
