#include "lpmlens/petri_net.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

#include "lpmlens/errors.hpp"

namespace lpmlens {

bool AcceptingPetriNet::enabled(const Marking& m, std::size_t t) const {
  for (auto p : transitions[t].inputs) {
    if (m[p] == 0) return false;
  }
  return true;
}

Marking AcceptingPetriNet::fire(const Marking& m, std::size_t t) const {
  Marking out = m;
  for (auto p : transitions[t].inputs) --out[p];
  for (auto p : transitions[t].outputs) ++out[p];
  return out;
}

std::vector<ActivityId> AcceptingPetriNet::visible_labels() const {
  std::vector<ActivityId> out;
  for (const auto& t : transitions) {
    if (t.label) out.push_back(*t.label);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

class NetBuilder {
 public:
  std::size_t place() { return net_.place_count++; }

  void transition(std::optional<ActivityId> label, std::vector<std::size_t> in, std::vector<std::size_t> out) {
    net_.transitions.push_back({label, std::move(in), std::move(out)});
  }

  void build(const ProcessTree& t, std::size_t in, std::size_t out) {
    const auto& ch = t.children();
    switch (t.op()) {
      case TreeOperator::Activity:
        transition(t.activity(), {in}, {out});
        break;
      case TreeOperator::Sequence: {
        const auto mid = place();
        build(ch[0], in, mid);
        build(ch[1], mid, out);
        break;
      }
      case TreeOperator::Choice:
        build(ch[0], in, out);
        build(ch[1], in, out);
        break;
      case TreeOperator::Parallel: {
        const auto l_in = place(), l_out = place(), r_in = place(), r_out = place();
        transition(std::nullopt, {in}, {l_in, r_in});
        build(ch[0], l_in, l_out);
        build(ch[1], r_in, r_out);
        transition(std::nullopt, {l_out, r_out}, {out});
        break;
      }
      case TreeOperator::Loop: {
        const auto body_in = place(), body_out = place();
        transition(std::nullopt, {in}, {body_in});
        build(ch[0], body_in, body_out);
        transition(std::nullopt, {body_out}, {body_in});
        transition(std::nullopt, {body_out}, {out});
        break;
      }
    }
  }

  AcceptingPetriNet finish(std::size_t source, std::size_t sink) {
    net_.initial.assign(net_.place_count, 0);
    net_.initial[source] = 1;
    Marking final_marking(net_.place_count, 0);
    final_marking[sink] = 1;
    net_.finals = {final_marking};
    return std::move(net_);
  }

 private:
  AcceptingPetriNet net_;
};

}  // namespace

AcceptingPetriNet tree_to_net(const ProcessTree& tree) {
  tree.validate();
  NetBuilder b;
  const auto source = b.place();
  const auto sink = b.place();
  b.build(tree, source, sink);
  return b.finish(source, sink);
}

std::vector<Marking> tau_closure(const AcceptingPetriNet& net, std::vector<Marking> from) {
  std::set<Marking> seen(from.begin(), from.end());
  std::deque<Marking> queue(seen.begin(), seen.end());
  while (!queue.empty()) {
    auto m = std::move(queue.front());
    queue.pop_front();
    for (std::size_t t = 0; t < net.transitions.size(); ++t) {
      if (net.transitions[t].label || !net.enabled(m, t)) continue;
      auto next = net.fire(m, t);
      if (seen.insert(next).second) queue.push_back(std::move(next));
    }
  }
  return {seen.begin(), seen.end()};
}

namespace {

std::vector<Marking> step(const AcceptingPetriNet& net, const std::vector<Marking>& state, ActivityId label) {
  std::vector<Marking> out;
  for (const auto& m : state) {
    for (std::size_t t = 0; t < net.transitions.size(); ++t) {
      if (net.transitions[t].label == label && net.enabled(m, t)) out.push_back(net.fire(m, t));
    }
  }
  if (out.empty()) return out;
  return tau_closure(net, std::move(out));
}

bool contains_final(const AcceptingPetriNet& net, const std::vector<Marking>& state) {
  return std::any_of(state.begin(), state.end(), [&](const Marking& m) {
    return std::find(net.finals.begin(), net.finals.end(), m) != net.finals.end();
  });
}

}  // namespace

bool accepts(const AcceptingPetriNet& net, std::span<const ActivityId> trace) {
  auto state = tau_closure(net, {net.initial});
  for (auto a : trace) {
    state = step(net, state, a);
    if (state.empty()) return false;
  }
  return contains_final(net, state);
}

std::string to_dot(const AcceptingPetriNet& net, const ActivityTable& table, const std::string& name) {
  std::ostringstream out;
  out << "digraph \"" << name << "\" {\n  rankdir=LR;\n";
  for (std::size_t p = 0; p < net.place_count; ++p) {
    out << "  p" << p << " [shape=circle,label=\"";
    if (net.initial[p] > 0) out << "&#9679;";
    out << "\"";
    const bool is_final = std::any_of(net.finals.begin(), net.finals.end(), [&](const Marking& m) { return m[p] > 0; });
    if (is_final) out << ",style=filled,fillcolor=\"gray85\",peripheries=2";
    out << "];\n";
  }
  for (std::size_t t = 0; t < net.transitions.size(); ++t) {
    const auto& tr = net.transitions[t];
    out << "  t" << t << " [shape=box";
    if (tr.label) {
      std::string label = table.name(*tr.label);
      std::string escaped;
      for (char c : label) {
        if (c == '"' || c == '\\') escaped.push_back('\\');
        escaped.push_back(c);
      }
      out << ",label=\"" << escaped << "\"";
    } else {
      out << ",label=\"\",style=filled,fillcolor=black,width=0.15";
    }
    out << "];\n";
    for (auto p : tr.inputs) out << "  p" << p << " -> t" << t << ";\n";
    for (auto p : tr.outputs) out << "  t" << t << " -> p" << p << ";\n";
  }
  out << "}\n";
  return out.str();
}

LanguageAutomaton::LanguageAutomaton(const AcceptingPetriNet& net, std::size_t max_states)
    : labels_(net.visible_labels()) {
  const std::size_t k = labels_.size();
  std::map<std::vector<Marking>, int> index;
  std::vector<std::vector<Marking>> states;
  auto intern = [&](std::vector<Marking> s) -> int {
    auto [it, inserted] = index.try_emplace(s, static_cast<int>(states.size()));
    if (inserted) {
      if (states.size() >= max_states) throw ContractViolation("language automaton exceeds state limit");
      states.push_back(std::move(s));
      next_.resize(states.size() * k, kDead);
    }
    return it->second;
  };
  intern(tau_closure(net, {net.initial}));
  for (std::size_t s = 0; s < states.size(); ++s) {
    for (std::size_t sym = 0; sym < k; ++sym) {
      auto succ = step(net, states[s], labels_[sym]);
      if (succ.empty()) continue;
      const int id = intern(std::move(succ));
      next_[s * k + sym] = id;
    }
  }
  accepting_.resize(states.size());
  enabled_.resize(states.size());
  for (std::size_t s = 0; s < states.size(); ++s) {
    accepting_[s] = contains_final(net, states[s]);
    std::uint32_t enabled = 0;
    for (std::size_t sym = 0; sym < k; ++sym) enabled += next_[s * k + sym] != kDead ? 1 : 0;
    enabled_[s] = enabled;
  }
}

int LanguageAutomaton::symbol_of(ActivityId a) const {
  auto it = std::lower_bound(labels_.begin(), labels_.end(), a);
  return it != labels_.end() && *it == a ? static_cast<int>(it - labels_.begin()) : -1;
}

bool LanguageAutomaton::accepts(std::span<const ActivityId> trace) const {
  int state = initial();
  for (auto a : trace) {
    const int sym = symbol_of(a);
    if (sym < 0) return false;
    state = next(state, static_cast<std::size_t>(sym));
    if (state == kDead) return false;
  }
  return accepting(state);
}

std::uint64_t LanguageAutomaton::count_words(std::size_t max_len) const {
  std::vector<std::uint64_t> ways(state_count(), 0), next_ways(state_count());
  ways[static_cast<std::size_t>(initial())] = 1;
  std::uint64_t total = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::fill(next_ways.begin(), next_ways.end(), 0);
    for (std::size_t s = 0; s < state_count(); ++s) {
      if (ways[s] == 0) continue;
      for (std::size_t sym = 0; sym < symbol_count(); ++sym) {
        const int n = next(static_cast<int>(s), sym);
        if (n != kDead) next_ways[static_cast<std::size_t>(n)] += ways[s];
      }
    }
    ways.swap(next_ways);
    for (std::size_t s = 0; s < state_count(); ++s) {
      if (accepting(static_cast<int>(s))) total += ways[s];
    }
  }
  return total;
}

}  // namespace lpmlens
