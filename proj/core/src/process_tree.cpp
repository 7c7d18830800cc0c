#include "lpmlens/process_tree.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

#include "lpmlens/errors.hpp"

namespace lpmlens {

ProcessTree ProcessTree::leaf(ActivityId activity) { return ProcessTree(TreeOperator::Activity, activity, {}); }

ProcessTree ProcessTree::sequence(ProcessTree left, ProcessTree right) {
  return ProcessTree(TreeOperator::Sequence, 0, {std::move(left), std::move(right)});
}

ProcessTree ProcessTree::choice(ProcessTree left, ProcessTree right) {
  return ProcessTree(TreeOperator::Choice, 0, {std::move(left), std::move(right)});
}

ProcessTree ProcessTree::parallel(ProcessTree left, ProcessTree right) {
  return ProcessTree(TreeOperator::Parallel, 0, {std::move(left), std::move(right)});
}

ProcessTree ProcessTree::loop(ProcessTree body) {
  return ProcessTree(TreeOperator::Loop, 0, {std::move(body)});
}

std::vector<ActivityId> ProcessTree::leaf_order() const {
  std::vector<ActivityId> out;
  std::function<void(const ProcessTree&)> walk = [&](const ProcessTree& t) {
    if (t.is_leaf()) {
      out.push_back(t.activity());
      return;
    }
    for (const auto& c : t.children()) walk(c);
  };
  walk(*this);
  return out;
}

std::size_t ProcessTree::leaf_count() const {
  if (is_leaf()) return 1;
  std::size_t n = 0;
  for (const auto& c : children_) n += c.leaf_count();
  return n;
}

void ProcessTree::validate() const {
  std::function<void(const ProcessTree&)> check = [&](const ProcessTree& t) {
    switch (t.op()) {
      case TreeOperator::Activity:
        if (!t.children().empty()) throw ContractViolation("leaf with children");
        return;
      case TreeOperator::Loop:
        if (t.children().size() != 1) throw ContractViolation("loop must have exactly one body");
        if (t.children()[0].op() == TreeOperator::Loop) throw ContractViolation("directly nested loops");
        break;
      default:
        if (t.children().size() != 2) throw ContractViolation("binary operator must have two operands");
    }
    for (const auto& c : t.children()) check(c);
  };
  check(*this);
  auto leaves = leaf_order();
  std::sort(leaves.begin(), leaves.end());
  if (std::adjacent_find(leaves.begin(), leaves.end()) != leaves.end()) {
    throw ContractViolation("process tree has duplicate activity labels");
  }
}

namespace {

const char* keyword(TreeOperator op) {
  switch (op) {
    case TreeOperator::Sequence: return "seq";
    case TreeOperator::Choice: return "xor";
    case TreeOperator::Parallel: return "and";
    case TreeOperator::Loop: return "loop";
    case TreeOperator::Activity: break;
  }
  return "";
}

bool commutative(TreeOperator op) { return op == TreeOperator::Choice || op == TreeOperator::Parallel; }

std::string quote_label(const std::string& name) {
  const bool plain = !name.empty() && std::none_of(name.begin(), name.end(), [](char c) {
    return c == '(' || c == ')' || c == ',' || c == '"' || c == '\\' || std::isspace(static_cast<unsigned char>(c));
  });
  if (plain && name != "seq" && name != "xor" && name != "and" && name != "loop") return name;
  std::string out = "\"";
  for (char c : name) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out + "\"";
}

// Operands of `t` after flattening nested nodes of the same associative operator.
void flatten_into(const ProcessTree& t, TreeOperator op, std::vector<const ProcessTree*>& out) {
  if (t.op() == op) {
    for (const auto& c : t.children()) flatten_into(c, op, out);
  } else {
    out.push_back(&t);
  }
}

struct CanonicalNode {
  std::string text;
  ProcessTree tree;
};

CanonicalNode canonical(const ProcessTree& t, const ActivityTable& table) {
  if (t.is_leaf()) return {quote_label(table.name(t.activity())), t};
  if (t.op() == TreeOperator::Loop) {
    auto body = canonical(t.children()[0], table);
    return {std::string("loop(") + body.text + ")", ProcessTree::loop(std::move(body.tree))};
  }
  std::vector<const ProcessTree*> operands;
  for (const auto& c : t.children()) flatten_into(c, t.op(), operands);
  std::vector<CanonicalNode> parts;
  for (const auto* o : operands) parts.push_back(canonical(*o, table));
  if (commutative(t.op())) {
    std::sort(parts.begin(), parts.end(), [](const auto& a, const auto& b) { return a.text < b.text; });
  }
  std::string text = std::string(keyword(t.op())) + "(";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) text += ",";
    text += parts[i].text;
  }
  text += ")";
  ProcessTree tree = std::move(parts.back().tree);
  for (std::size_t i = parts.size() - 1; i-- > 0;) {
    switch (t.op()) {
      case TreeOperator::Sequence: tree = ProcessTree::sequence(std::move(parts[i].tree), std::move(tree)); break;
      case TreeOperator::Choice: tree = ProcessTree::choice(std::move(parts[i].tree), std::move(tree)); break;
      default: tree = ProcessTree::parallel(std::move(parts[i].tree), std::move(tree)); break;
    }
  }
  return {std::move(text), std::move(tree)};
}

class TreeParser {
 public:
  TreeParser(std::string_view text, std::function<ActivityId(const std::string&)> resolve)
      : text_(text), resolve_(std::move(resolve)) {}

  ProcessTree parse() {
    auto t = node();
    skip_space();
    if (pos_ != text_.size()) fail("trailing characters");
    t.validate();
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw FormatError("cannot parse process tree at offset " + std::to_string(pos_) + ": " + why);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool consume(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::string label() {
    skip_space();
    std::string out;
    if (pos_ < text_.size() && text_[pos_] == '"') {
      ++pos_;
      while (pos_ < text_.size() && text_[pos_] != '"') {
        if (text_[pos_] == '\\' && pos_ + 1 < text_.size()) ++pos_;
        out.push_back(text_[pos_++]);
      }
      if (pos_ >= text_.size()) fail("unterminated quoted label");
      ++pos_;
      return out;
    }
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '(' || c == ')' || c == ',' || std::isspace(static_cast<unsigned char>(c))) break;
      out.push_back(c);
      ++pos_;
    }
    if (out.empty()) fail("expected a label or operator");
    return out;
  }

  ProcessTree node() {
    skip_space();
    const bool quoted = pos_ < text_.size() && text_[pos_] == '"';
    auto word = label();
    if (quoted || !consume('(')) return ProcessTree::leaf(resolve_(word));
    std::vector<ProcessTree> operands;
    do {
      operands.push_back(node());
    } while (consume(','));
    if (!consume(')')) fail("expected ')'");
    if (word == "loop") {
      if (operands.size() != 1) fail("loop takes exactly one operand");
      return ProcessTree::loop(std::move(operands[0]));
    }
    TreeOperator op;
    if (word == "seq") op = TreeOperator::Sequence;
    else if (word == "xor") op = TreeOperator::Choice;
    else if (word == "and") op = TreeOperator::Parallel;
    else fail("unknown operator '" + word + "'");
    if (operands.size() < 2) fail("operator needs at least two operands");
    ProcessTree tree = std::move(operands.back());
    for (std::size_t i = operands.size() - 1; i-- > 0;) {
      switch (op) {
        case TreeOperator::Sequence: tree = ProcessTree::sequence(std::move(operands[i]), std::move(tree)); break;
        case TreeOperator::Choice: tree = ProcessTree::choice(std::move(operands[i]), std::move(tree)); break;
        default: tree = ProcessTree::parallel(std::move(operands[i]), std::move(tree)); break;
      }
    }
    return tree;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::function<ActivityId(const std::string&)> resolve_;
};

using Language = std::set<Trace>;

Language concatenations(const Language& left, const Language& right, std::size_t max_len) {
  Language out;
  for (const auto& u : left) {
    for (const auto& v : right) {
      if (u.size() + v.size() > max_len) continue;
      Trace w = u;
      w.insert(w.end(), v.begin(), v.end());
      out.insert(std::move(w));
    }
  }
  return out;
}

void interleave(const Trace& u, std::size_t i, const Trace& v, std::size_t j, Trace& prefix, Language& out) {
  if (i == u.size() && j == v.size()) {
    out.insert(prefix);
    return;
  }
  if (i < u.size()) {
    prefix.push_back(u[i]);
    interleave(u, i + 1, v, j, prefix, out);
    prefix.pop_back();
  }
  if (j < v.size()) {
    prefix.push_back(v[j]);
    interleave(u, i, v, j + 1, prefix, out);
    prefix.pop_back();
  }
}

Language language(const ProcessTree& t, std::size_t max_len) {
  if (max_len == 0) return {};
  switch (t.op()) {
    case TreeOperator::Activity:
      return {Trace{t.activity()}};
    case TreeOperator::Sequence:
      return concatenations(language(t.children()[0], max_len - 1), language(t.children()[1], max_len - 1), max_len);
    case TreeOperator::Choice: {
      auto out = language(t.children()[0], max_len);
      out.merge(language(t.children()[1], max_len));
      return out;
    }
    case TreeOperator::Parallel: {
      const auto left = language(t.children()[0], max_len - 1);
      const auto right = language(t.children()[1], max_len - 1);
      Language out;
      Trace prefix;
      for (const auto& u : left) {
        for (const auto& v : right) {
          if (u.size() + v.size() <= max_len) interleave(u, 0, v, 0, prefix, out);
        }
      }
      return out;
    }
    case TreeOperator::Loop: {
      const auto body = language(t.children()[0], max_len);
      Language out = body;
      Language frontier = body;
      while (!frontier.empty()) {
        Language next;
        for (auto& w : concatenations(frontier, body, max_len)) {
          if (out.insert(w).second) next.insert(w);
        }
        frontier = std::move(next);
      }
      return out;
    }
  }
  return {};
}

}  // namespace

std::string canonical_form(const ProcessTree& tree, const ActivityTable& table) {
  return canonical(tree, table).text;
}

ProcessTree canonicalize(const ProcessTree& tree, const ActivityTable& table) {
  return canonical(tree, table).tree;
}

ProcessTree parse_tree(std::string_view text, ActivityTable& table) {
  return TreeParser(text, [&](const std::string& name) { return table.intern(name); }).parse();
}

ProcessTree parse_tree(std::string_view text, const ActivityTable& table) {
  return TreeParser(text, [&](const std::string& name) {
           const auto id = table.find(name);
           if (id == ActivityTable::npos) throw FormatError("unknown activity '" + name + "' in process tree");
           return id;
         })
      .parse();
}

std::set<Trace> bounded_language(const ProcessTree& tree, std::size_t max_len) {
  return language(tree, max_len);
}

}  // namespace lpmlens
