#include <gtest/gtest.h>

#include <random>

#include "lpmlens/errors.hpp"
#include "lpmlens/petri_net.hpp"
#include "lpmlens/process_tree.hpp"
#include "oracles.hpp"

namespace lpmlens {
namespace {

class Trees : public ::testing::Test {
 protected:
  ActivityTable table;
  ProcessTree parse(const std::string& text) { return parse_tree(text, table); }
  std::set<std::vector<std::string>> language(const std::string& text, std::size_t max_len) {
    std::set<std::vector<std::string>> out;
    for (const auto& w : bounded_language(parse(text), max_len)) {
      std::vector<std::string> named;
      for (auto a : w) named.push_back(table.name(a));
      out.insert(named);
    }
    return out;
  }
};

using Words = std::set<std::vector<std::string>>;

TEST_F(Trees, CanonicalFormFlattensAndSortsCommutativeOperands) {
  const auto t = parse("and(c,and(b,a))");
  EXPECT_EQ(canonical_form(t, table), "and(a,b,c)");
  EXPECT_EQ(canonical_form(parse("xor(b,a)"), table), canonical_form(parse("xor(a,b)"), table));
  EXPECT_EQ(canonical_form(parse("seq(seq(a,b),c)"), table), canonical_form(parse("seq(a,seq(b,c))"), table));
  EXPECT_NE(canonical_form(parse("seq(a,b)"), table), canonical_form(parse("seq(b,a)"), table));
}

TEST_F(Trees, ParseRoundTripsCanonicalForms) {
  for (const std::string text : {"seq(a,xor(b,loop(c)))", "and(seq(e,f),seq(g,h))", "loop(and(x,y))", "z"}) {
    const auto t = parse(text);
    const auto form = canonical_form(t, table);
    EXPECT_EQ(canonical_form(parse(form), table), form);
    EXPECT_EQ(parse(form), canonicalize(t, table));
  }
}

TEST_F(Trees, QuotesLabelsWithSyntaxCharacters) {
  const auto t = ProcessTree::sequence(ProcessTree::leaf(table.intern("a,b")), ProcessTree::leaf(table.intern("seq")));
  const auto form = canonical_form(t, table);
  EXPECT_EQ(parse(form), t);
}

TEST_F(Trees, WhitespaceIsAllowed) {
  EXPECT_EQ(parse(" seq( a , b ) "), parse("seq(a,b)"));
}

TEST_F(Trees, MalformedTextIsAFormatError) {
  EXPECT_THROW(parse("seq(a,"), FormatError);
  EXPECT_THROW(parse("loop(a,b)"), FormatError);
  EXPECT_THROW(parse("foo(a,b)"), FormatError);
  EXPECT_THROW(parse("seq(a,b))"), FormatError);
  const ActivityTable& frozen = table;
  EXPECT_THROW(parse_tree("seq(a,unknown)", frozen), FormatError);
}

TEST_F(Trees, ValidateRejectsDuplicatesAndNestedLoops) {
  const auto a = ProcessTree::leaf(table.intern("a"));
  EXPECT_THROW(ProcessTree::sequence(a, a).validate(), ContractViolation);
  EXPECT_THROW(ProcessTree::loop(ProcessTree::loop(a)).validate(), ContractViolation);
  EXPECT_NO_THROW(ProcessTree::loop(a).validate());
}

TEST_F(Trees, LeafOrderAndCount) {
  const auto t = parse("seq(b,and(a,c))");
  EXPECT_EQ(t.leaf_count(), 3u);
  EXPECT_EQ(t.leaf_order(), (std::vector<ActivityId>{table.find("b"), table.find("a"), table.find("c")}));
}

TEST_F(Trees, BoundedLanguages) {
  EXPECT_EQ(language("seq(loop(a),b)", 3), (Words{{"a", "b"}, {"a", "a", "b"}}));
  EXPECT_EQ(language("xor(a,b)", 3), (Words{{"a"}, {"b"}}));
  EXPECT_EQ(language("and(a,b)", 3), (Words{{"a", "b"}, {"b", "a"}}));
  EXPECT_EQ(language("and(seq(a,b),c)", 3), (Words{{"a", "b", "c"}, {"a", "c", "b"}, {"c", "a", "b"}}));
  EXPECT_EQ(language("loop(seq(a,b))", 5), (Words{{"a", "b"}, {"a", "b", "a", "b"}}));
  EXPECT_TRUE(language("seq(a,b)", 1).empty());
}

TEST_F(Trees, NetHasOneSourceAndOneSink) {
  const auto net = tree_to_net(parse("seq(a,xor(b,loop(c)))"));
  ASSERT_EQ(net.finals.size(), 1u);
  std::uint32_t tokens = 0;
  for (auto x : net.initial) tokens += x;
  EXPECT_EQ(tokens, 1u);
  EXPECT_EQ(net.visible_labels().size(), 3u);
  const auto dot = to_dot(net, table);
  EXPECT_NE(dot.find("digraph"), std::string::npos);
  EXPECT_NE(dot.find("\"a\""), std::string::npos);
}

void all_words(std::size_t k, std::size_t len, std::vector<Trace>& out, Trace& cur) {
  if (!cur.empty()) out.push_back(cur);
  if (cur.size() == len) return;
  for (ActivityId a = 0; a < k; ++a) {
    cur.push_back(a);
    all_words(k, len, out, cur);
    cur.pop_back();
  }
}

// Language, net and automaton are three separate encodings of the same model.
void check_equivalent(const ProcessTree& tree, std::size_t alphabet, std::size_t max_len) {
  const auto lang = bounded_language(tree, max_len);
  const auto net = tree_to_net(tree);
  const LanguageAutomaton dfa(net);
  EXPECT_EQ(dfa.count_words(max_len), lang.size());
  std::vector<Trace> words;
  Trace cur;
  all_words(alphabet, max_len, words, cur);
  for (const auto& w : words) {
    const bool in = lang.count(w) > 0;
    EXPECT_EQ(accepts(net, w), in);
    EXPECT_EQ(dfa.accepts(w), in);
  }
}

TEST(TreeSemantics, EnumeratedTreesAgreeAcrossRepresentations) {
  ActivityTable table;
  std::vector<ActivityId> sigma;
  for (const char* n : {"a", "b", "c", "d"}) sigma.push_back(table.intern(n));
  const auto trees = testing::oracle::all_trees(sigma, 3, table);
  ASSERT_GT(trees.size(), 100u);
  for (const auto& t : trees) {
    SCOPED_TRACE(canonical_form(t, table));
    check_equivalent(t, sigma.size(), 4);
  }
}

TEST(TreeSemantics, RandomFourLeafTreesAgreeAcrossRepresentations) {
  ActivityTable table;
  std::vector<ActivityId> sigma;
  for (const char* n : {"a", "b", "c", "d"}) sigma.push_back(table.intern(n));
  std::mt19937_64 rng(3);
  for (int rep = 0; rep < 40; ++rep) {
    auto leaves = sigma;
    std::shuffle(leaves.begin(), leaves.end(), rng);
    std::vector<ProcessTree> parts;
    for (auto a : leaves) {
      auto leaf = ProcessTree::leaf(a);
      parts.push_back(rng() % 4 == 0 ? ProcessTree::loop(leaf) : leaf);
    }
    while (parts.size() > 1) {
      const auto i = rng() % (parts.size() - 1);
      auto l = parts[i], r = parts[i + 1];
      ProcessTree joined;
      switch (rng() % 3) {
        case 0: joined = ProcessTree::sequence(l, r); break;
        case 1: joined = ProcessTree::choice(l, r); break;
        default: joined = ProcessTree::parallel(l, r); break;
      }
      parts.erase(parts.begin() + static_cast<std::ptrdiff_t>(i), parts.begin() + static_cast<std::ptrdiff_t>(i) + 2);
      parts.insert(parts.begin() + static_cast<std::ptrdiff_t>(i), joined);
    }
    SCOPED_TRACE(canonical_form(parts[0], table));
    check_equivalent(parts[0], sigma.size(), 5);
    EXPECT_EQ(bounded_language(canonicalize(parts[0], table), 5), bounded_language(parts[0], 5));
  }
}

}  // namespace
}  // namespace lpmlens
