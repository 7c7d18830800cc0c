#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "lpmlens/event_log.hpp"

namespace lpmlens {

enum class TreeOperator { Activity, Sequence, Choice, Parallel, Loop };

/// Block-structured process model. Sequence, exclusive choice and
/// concurrency are binary; loop is unary and means one or more repetitions
/// of its body. Leaves carry activity ids and must be unique within a tree.
class ProcessTree {
 public:
  /// A single leaf for activity 0; exists so trees can live in containers.
  ProcessTree() = default;

  static ProcessTree leaf(ActivityId activity);
  static ProcessTree sequence(ProcessTree left, ProcessTree right);
  static ProcessTree choice(ProcessTree left, ProcessTree right);
  static ProcessTree parallel(ProcessTree left, ProcessTree right);
  static ProcessTree loop(ProcessTree body);

  TreeOperator op() const noexcept { return op_; }
  bool is_leaf() const noexcept { return op_ == TreeOperator::Activity; }
  ActivityId activity() const noexcept { return activity_; }
  const std::vector<ProcessTree>& children() const noexcept { return children_; }

  /// Leaf activities in left-to-right order.
  std::vector<ActivityId> leaf_order() const;
  ProjectionSet leaves() const { return ProjectionSet(leaf_order()); }
  std::size_t leaf_count() const;
  /// Throws ContractViolation on duplicate leaves, nested loops or a
  /// malformed arity.
  void validate() const;

  friend bool operator==(const ProcessTree&, const ProcessTree&) = default;

 private:
  ProcessTree(TreeOperator op, ActivityId activity, std::vector<ProcessTree> children)
      : op_(op), activity_(activity), children_(std::move(children)) {}

  TreeOperator op_ = TreeOperator::Activity;
  ActivityId activity_ = 0;
  std::vector<ProcessTree> children_;
};

/// Deterministic text such as `seq(a,xor(b,loop(c)))`. Nested sequences,
/// choices and concurrency blocks are flattened, and the operands of the
/// commutative operators (`xor`, `and`) are sorted, so language-equal trees
/// that differ only by associativity or operand order share one form.
/// Labels containing syntax characters are double-quoted.
std::string canonical_form(const ProcessTree& tree, const ActivityTable& table);

/// Rebuilds `tree` in the shape implied by its canonical form (flattened
/// operands re-nested to the right, commutative operands sorted).
ProcessTree canonicalize(const ProcessTree& tree, const ActivityTable& table);

/// Parses the text produced by canonical_form (binary or flattened operands,
/// optional whitespace). Labels are interned into `table`.
ProcessTree parse_tree(std::string_view text, ActivityTable& table);
/// Parses against an immutable table; unknown labels throw FormatError.
ProcessTree parse_tree(std::string_view text, const ActivityTable& table);

/// Every trace of the tree's language with at most `max_len` events.
std::set<Trace> bounded_language(const ProcessTree& tree, std::size_t max_len);

}  // namespace lpmlens
