#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lpmlens/event_log.hpp"
#include "lpmlens/process_tree.hpp"

namespace lpmlens {

using Marking = std::vector<std::uint32_t>;

/// Labeled Petri net with an initial marking and a set of final markings.
/// Transitions without a label are silent (tau).
struct AcceptingPetriNet {
  struct Transition {
    std::optional<ActivityId> label;
    std::vector<std::size_t> inputs;
    std::vector<std::size_t> outputs;
  };

  std::size_t place_count = 0;
  std::vector<Transition> transitions;
  Marking initial;
  std::vector<Marking> finals;

  bool enabled(const Marking& m, std::size_t t) const;
  Marking fire(const Marking& m, std::size_t t) const;
  /// Sorted visible labels.
  std::vector<ActivityId> visible_labels() const;
};

/// Compositional translation with silent routing transitions. The result has
/// one source place (initially marked) and one sink place (the only final
/// marking) and is 1-safe.
AcceptingPetriNet tree_to_net(const ProcessTree& tree);

/// Markings reachable from `from` through silent transitions, including `from`.
std::vector<Marking> tau_closure(const AcceptingPetriNet& net, std::vector<Marking> from);

/// True when the net can replay `trace` (visible transitions, silent moves
/// interleaved freely) and end in a final marking.
bool accepts(const AcceptingPetriNet& net, std::span<const ActivityId> trace);

/// Graphviz rendering; the initial place holds a token and the final place
/// is drawn hatched.
std::string to_dot(const AcceptingPetriNet& net, const ActivityTable& table, const std::string& name = "lpm");

/// Deterministic automaton over the visible behaviour of a net. Each state is
/// the silent closure of a set of reachable markings. Symbols are positions in
/// `labels()`, which keeps the transition table dense.
class LanguageAutomaton {
 public:
  static constexpr int kDead = -1;

  explicit LanguageAutomaton(const AcceptingPetriNet& net, std::size_t max_states = 1u << 16);

  const std::vector<ActivityId>& labels() const noexcept { return labels_; }
  std::size_t symbol_count() const noexcept { return labels_.size(); }
  std::size_t state_count() const noexcept { return accepting_.size(); }
  int initial() const noexcept { return 0; }
  int next(int state, std::size_t symbol) const { return next_[static_cast<std::size_t>(state) * labels_.size() + symbol]; }
  bool accepting(int state) const { return accepting_[static_cast<std::size_t>(state)]; }
  /// Number of distinct visible labels enabled in the state.
  std::uint32_t enabled_count(int state) const { return enabled_[static_cast<std::size_t>(state)]; }

  /// Symbol index of an activity, or -1 if the net has no such label.
  int symbol_of(ActivityId a) const;
  bool accepts(std::span<const ActivityId> trace) const;
  /// Number of accepted words of length 1..max_len.
  std::uint64_t count_words(std::size_t max_len) const;

 private:
  std::vector<ActivityId> labels_;
  std::vector<int> next_;
  std::vector<bool> accepting_;
  std::vector<std::uint32_t> enabled_;
};

}  // namespace lpmlens
