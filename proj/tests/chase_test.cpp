#include <gtest/gtest.h>

#include "disjrw/chase.hpp"
#include "disjrw/homomorphism.hpp"
#include "support.hpp"

using namespace disjrw;

TEST(Triggers, FoundAndOrdered) {
  Document d = support::load("color_triangle.dr");
  auto ts = find_triggers(d.facts, d.rules[0]);
  ASSERT_EQ(ts.size(), 3u);
  for (std::size_t i = 1; i < ts.size(); ++i) EXPECT_LT(ts[i - 1].image(), ts[i].image());
  for (const auto& t : ts) EXPECT_TRUE(d.facts.includes(d.rules[0].body().apply(t.hom)));
}

TEST(Triggers, MakeTriggerChecksImage) {
  DisjunctiveRule r = support::rule("r: p(X) -> q(X)");
  Substitution h;
  h.bind(*r.body().vars().begin(), Term::constant("b"));
  EXPECT_THROW(make_trigger(r, 0, h, support::facts("p(a).")), std::invalid_argument);
  EXPECT_NO_THROW(make_trigger(r, 0, h, support::facts("p(b).")));
}

TEST(Triggers, ApplyGivesOneBranchPerDisjunct) {
  DisjunctiveRule r = support::rule("r: p(X,Y) -> r(X,Z1) | r(Y,Z2), s(Z2)");
  FactBase f = support::facts("p(a,b).");
  auto ts = find_triggers(f, r);
  ASSERT_EQ(ts.size(), 1u);
  VarSource vs;
  vs.reserve_past(1u << 20);
  auto branches = apply_trigger(f, ts[0], vs);
  ASSERT_EQ(branches.size(), 2u);
  EXPECT_EQ(branches[0].size(), 2u);
  EXPECT_EQ(branches[1].size(), 3u);
  for (const auto& b : branches) {
    EXPECT_TRUE(b.includes(f));
    EXPECT_EQ(b.vars().size(), 1u);  // one fresh null per branch
  }
  EXPECT_TRUE(is_satisfied(ts[0], branches[0]));
  EXPECT_FALSE(is_satisfied(ts[0], f));
}

TEST(Chase, ExpandedTreeVerifies) {
  Document d = support::load("color_square.dr");
  DerivationTree t = expand_chase(d.facts, d.rules);
  EXPECT_TRUE(t.complete());
  EXPECT_TRUE(verify_tree(t, d.facts));
  // Four vertices, two colors: one saturated leaf per coloring.
  EXPECT_EQ(t.leaves().size(), 16u);
  EXPECT_EQ(t.max_depth(), 4u);
}

TEST(Chase, BudgetLeavesOpenNodes) {
  Document d = support::load("color_square.dr");
  ChaseBudget b;
  b.max_depth = 2;
  DerivationTree t = expand_chase(d.facts, d.rules, b);
  EXPECT_FALSE(t.complete());
  EXPECT_EQ(t.open_leaves().size(), 4u);
  EXPECT_TRUE(verify_tree(t, d.facts));
}

TEST(Chase, TamperedTreeFailsVerification) {
  Document d = support::load("color_edge.dr");
  DerivationTree t = expand_chase(d.facts, d.rules);
  ASSERT_GT(t.size(), 1u);
  t.node(1).label.insert(Atom(Predicate("g", 1), {Term::constant("zz")}));
  EXPECT_FALSE(verify_tree(t, d.facts));
}

TEST(Chase, ColorabilityVerdicts) {
  struct Case {
    const char* file;
    ChaseVerdict::Kind kind;
  };
  for (auto c : {Case{"color_triangle.dr", ChaseVerdict::Kind::Entailed},
                 Case{"color_edge.dr", ChaseVerdict::Kind::NotEntailed},
                 Case{"color_square.dr", ChaseVerdict::Kind::NotEntailed}}) {
    Document d = support::load(c.file);
    ChaseVerdict v = chase_entails(d.facts, d.rules, d.ucq());
    EXPECT_EQ(v.kind, c.kind) << c.file;
  }
}

TEST(Chase, EntailedLeavesAreClosed) {
  Document d = support::load("color_triangle.dr");
  ChaseVerdict v = chase_entails(d.facts, d.rules, d.ucq());
  ASSERT_EQ(v.kind, ChaseVerdict::Kind::Entailed);
  for (std::size_t leaf : v.tree.leaves()) {
    EXPECT_EQ(v.tree.node(leaf).state, TreeNode::State::Closed);
    EXPECT_TRUE(entails_some(v.tree.node(leaf).label, d.ucq()));
  }
}

TEST(Chase, ObliviousAppliesSatisfiedTriggers) {
  DisjunctiveRule r = support::rule("r: p(X) -> q(X)");
  RuleSet rs(std::vector<DisjunctiveRule>{r});
  FactBase f = support::facts("p(a). q(a).");
  ChaseBudget b;
  EXPECT_EQ(expand_chase(f, rs, b).size(), 1u);
  b.restricted = false;
  EXPECT_EQ(expand_chase(f, rs, b).size(), 2u);
}

TEST(Chase, UnknownWhenBudgetRunsOut) {
  // Infinite chain: p(a,N1), p(N1,N2), ... never reaches q.
  Document d = parse("@facts p(a,b).\n@rules r: p(X,Y) -> p(Y,Z).\n@queries ? :- q(U).\n");
  ChaseBudget b;
  b.max_depth = 5;
  EXPECT_EQ(chase_entails(d.facts, d.rules, d.ucq(), b).kind, ChaseVerdict::Kind::Unknown);
}
