#include "lpmlens/projection_family.hpp"

#include <algorithm>

namespace lpmlens {

bool ProjectionFamily::is_antichain() const {
  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (sets[i].empty()) return false;
    for (std::size_t j = 0; j < sets.size(); ++j) {
      if (i != j && sets[i].subset_of(sets[j])) return false;
    }
  }
  return true;
}

bool ProjectionFamily::contains(const ProjectionSet& s) const {
  return std::find(sets.begin(), sets.end(), s) != sets.end();
}

ProjectionFamily reduce_to_antichain(std::vector<ProjectionSet> sets) {
  std::sort(sets.begin(), sets.end());
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  std::erase_if(sets, [](const ProjectionSet& s) { return s.empty(); });
  // Larger sets first so a set only needs checking against survivors.
  std::vector<const ProjectionSet*> by_size;
  for (const auto& s : sets) by_size.push_back(&s);
  std::stable_sort(by_size.begin(), by_size.end(),
                   [](const auto* a, const auto* b) { return a->size() > b->size(); });
  std::vector<ProjectionSet> kept;
  for (const auto* s : by_size) {
    const bool covered = std::any_of(kept.begin(), kept.end(), [&](const ProjectionSet& k) {
      return k.size() > s->size() && s->subset_of(k);
    });
    if (!covered) kept.push_back(*s);
  }
  std::sort(kept.begin(), kept.end());
  return ProjectionFamily{std::move(kept)};
}

ProjectionFamily drop_smaller_than(ProjectionFamily family, std::size_t min_size) {
  std::erase_if(family.sets, [&](const ProjectionSet& s) { return s.size() < min_size; });
  return family;
}

std::vector<std::vector<std::string>> family_names(const EventLog& log, const ProjectionFamily& family) {
  std::vector<std::vector<std::string>> out;
  for (const auto& s : family.sets) out.push_back(names_of(log, s));
  return out;
}

}  // namespace lpmlens
