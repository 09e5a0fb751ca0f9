#include <gtest/gtest.h>

#include "disjrw/constructions.hpp"
#include "disjrw/homomorphism.hpp"
#include "disjrw/rewriting.hpp"
#include "reduction_check.hpp"
#include "support.hpp"

using namespace disjrw;
using support::brute_equiv;
using support::brute_hom;
using support::cq;

namespace {

ConstructionError::Kind error_kind(const DisjunctiveRule& r) {
  try {
    build_nonfus_query(r);
  } catch (const ConstructionError& e) {
    return e.kind;
  }
  ADD_FAILURE() << "no error for " << to_string(r);
  return ConstructionError::Kind::InvalidInput;
}

}  // namespace

TEST(NonFus, QueryShape) {
  DisjunctiveRule r = support::load("nonfus.dr").rules[0];
  EXPECT_EQ(link_predicate_name(r), "link_r");
  CQ q = build_nonfus_query(r);
  EXPECT_EQ(q.size(), 3u);
  EXPECT_TRUE(brute_equiv(q, cq("t1(A), link_r(A,B), t2(B)")));
}

TEST(NonFus, LinkArityFollowsFrontiers) {
  DisjunctiveRule r = support::load("grandparent.dr").rules[0];
  CQ q = build_nonfus_query(r);
  EXPECT_EQ(q.size(), 5u);
  bool seen = false;
  for (const Atom& a : q)
    if (a.pred.name_str() == link_predicate_name(r)) {
      seen = true;
      EXPECT_EQ(a.args.size(), 4u);
    }
  EXPECT_TRUE(seen);
}

TEST(NonFus, Preconditions) {
  EXPECT_EQ(error_kind(support::rule("r: p(X) -> t1(X)")), ConstructionError::Kind::NotTwoDisjuncts);
  EXPECT_EQ(error_kind(support::rule("r: p(X,Y) -> p(X,X) | t(Y)")), ConstructionError::Kind::NotSourceToTarget);
  EXPECT_EQ(error_kind(support::load("disconnected.dr").rules[0]), ConstructionError::Kind::Disconnected);
  // t1(X) | t1(X), t2(X): the second disjunct implies the first.
  EXPECT_EQ(error_kind(support::rule("r: p(X) -> t1(X) | t1(X), t2(X)")),
            ConstructionError::Kind::ConjunctiveEquivalent);
}

TEST(NonFus, Disconnection) {
  EXPECT_TRUE(is_disconnected(support::load("disconnected.dr").rules[0]));
  EXPECT_FALSE(is_disconnected(support::load("nonfus.dr").rules[0]));
}

TEST(NonFus, ConjunctiveEquivalence) {
  EXPECT_FALSE(conjunctive_equivalent(support::load("nonfus.dr").rules[0]).has_value());
  auto j = conjunctive_equivalent(support::rule("r: p(X) -> t1(X) | t1(X), t2(X)"));
  ASSERT_TRUE(j.has_value());
  EXPECT_EQ(*j, 0u);
}

TEST(NonFus, FamilyGrowsAndIsIncomparable) {
  DisjunctiveRule r = support::load("nonfus.dr").rules[0];
  auto fam = build_nonfus_family(r, 3);
  ASSERT_EQ(fam.size(), 4u);
  for (std::size_t i = 0; i < fam.size(); ++i) {
    // Q_i: t1, i+1 link atoms and i body atoms, t2.
    EXPECT_EQ(fam[i].size(), 2 * i + 3) << i;
    for (std::size_t j = 0; j < fam.size(); ++j)
      if (i != j) EXPECT_FALSE(brute_hom(fam[j], fam[i])) << i << " " << j;
  }
}

TEST(Reduction, Artifacts) {
  Document d = support::load("reduction/ancestors.dr");
  ReductionOutput red = build_reduction(d.find_query("query")->cq, d.rules);
  ASSERT_EQ(red.entries.size(), 2u);
  EXPECT_EQ(red.ucq.size(), 3u);
  EXPECT_EQ(red.entries[0].special.name_str(), "pr_base");
  EXPECT_EQ(red.mapping.rules().size(), 2u + 4u);  // m rules, then par/anc/s/T renamings
  for (const auto& e : red.entries) {
    EXPECT_EQ(e.mapping_rule.disjunct_count(), 2u);
    EXPECT_EQ(e.mapping_rule.body().size(), e.frontier.size());
  }
  // Q_Q: one hat_T atom per term plus the hatted query atoms.
  EXPECT_EQ(red.q_q.size(), 4u);
  EXPECT_TRUE(red.mapping.source().count(Predicate(kReductionT, 1)));
  EXPECT_TRUE(red.mapping.target().count(Predicate("hat_T", 1)));
}

TEST(Reduction, ReverseRecoversInputs) {
  for (const char* f : {"reduction/ancestors.dr", "reduction/reach.dr", "reduction/mutual.dr"}) {
    Document d = support::load(f);
    const CQ& q = d.find_query("query")->cq;
    ReductionOutput red = build_reduction(q, d.rules);
    auto back = reverse(red.q_q, red);
    ASSERT_TRUE(std::holds_alternative<CQ>(back)) << f;
    EXPECT_TRUE(support::brute_iso(std::get<CQ>(back), q)) << f;
    for (std::size_t i = 0; i < red.entries.size(); ++i) {
      auto r = reverse(red.entries[i].query, red);
      ASSERT_TRUE(std::holds_alternative<DisjunctiveRule>(r)) << f;
      EXPECT_TRUE(same_rule_modulo_renaming(std::get<DisjunctiveRule>(r), d.rules[i])) << f << " " << i;
    }
  }
}

TEST(Reduction, ReverseErrors) {
  Document d = support::load("reduction/ancestors.dr");
  ReductionOutput red = build_reduction(d.find_query("query")->cq, d.rules);
  CQ two = red.entries[0].query;
  two.insert_all(safe_copy(red.entries[1].query).atoms);
  try {
    reverse(two, red);
    FAIL();
  } catch (const ConstructionError& e) {
    EXPECT_EQ(e.kind, ConstructionError::Kind::TooManySpecialAtoms);
  }
  try {
    reverse(cq("pr_nothing(X)"), red);
    FAIL();
  } catch (const ConstructionError& e) {
    EXPECT_EQ(e.kind, ConstructionError::Kind::UnknownSpecialPredicate);
  }
}

TEST(Reduction, InputValidation) {
  CQ q = cq("a(U)");
  auto rules = [](const char* text) { return parse(std::string("@rules\n") + text).rules; };
  EXPECT_THROW(build_reduction(q, rules("r: a(X) -> b(X) | c(X).")), ConstructionError);
  EXPECT_THROW(build_reduction(q, rules("r: a(X) -> b(X,Y).")), ConstructionError);
  EXPECT_THROW(build_reduction(q, rules("r: a(X) -> b(X), c(X).")), ConstructionError);
  EXPECT_THROW(build_reduction(q, rules("r: a(X) -> b(X,k).")), ConstructionError);
  EXPECT_THROW(build_reduction(q, rules("r: tt_T(X) -> b(X).")), ConstructionError);
}

TEST(Reduction, OneStepRewritingsReappear) {
  for (const char* f : {"reduction/ancestors.dr", "reduction/reach.dr", "reduction/mutual.dr"}) {
    Document d = support::load(f);
    const CQ& q = d.find_query("query")->cq;
    ReductionOutput red = build_reduction(q, d.rules);
    auto res = support::forward_spot_check(q, d.rules, red, 3);
    EXPECT_GT(res.one_step, 0u) << f;
    EXPECT_EQ(res.found, res.one_step) << f << ": " << res.missing;
  }
}

TEST(Unfold, ComposesOnHeadAtom) {
  RuleSet rs = parse("@rules\nbase: par(X,Y) -> anc(X,Y).\nstep: par(X,Y), anc(Y,Z) -> anc(X,Z).\n").rules;
  auto u = unfold(rs[1], rs[0]);
  ASSERT_EQ(u.size(), 1u);
  EXPECT_TRUE(same_rule_modulo_renaming(u[0], support::rule("x: par(X,Y), par(Y,Z) -> anc(X,Z)")));
  EXPECT_TRUE(unfold(rs[0], rs[1]).empty());
}

TEST(Unfold, ClosureIsBoundedAndDeduplicated) {
  RuleSet rs = parse("@rules\nbase: par(X,Y) -> anc(X,Y).\nstep: par(X,Y), anc(Y,Z) -> anc(X,Z).\n").rules;
  RuleSet c1 = unfold_closure(rs, 1);
  RuleSet c2 = unfold_closure(rs, 2);
  EXPECT_EQ(c1.size(), 4u);  // base, step, step∘base, step∘step
  EXPECT_GT(c2.size(), c1.size());
  for (std::size_t i = 0; i < c2.size(); ++i)
    for (std::size_t j = i + 1; j < c2.size(); ++j) EXPECT_FALSE(same_rule_modulo_renaming(c2[i], c2[j]));
  EXPECT_THROW(unfold_closure(parse("@rules\nr: a(X) -> b(X) | c(X).\n").rules, 1), ConstructionError);
}

TEST(Unfold, RenamingEquality) {
  EXPECT_TRUE(same_rule_modulo_renaming(support::rule("a: p(X,Y) -> q(X)"), support::rule("b: p(U,V) -> q(U)")));
  EXPECT_FALSE(same_rule_modulo_renaming(support::rule("a: p(X,Y) -> q(X)"), support::rule("b: p(U,V) -> q(V)")));
  EXPECT_FALSE(same_rule_modulo_renaming(support::rule("a: p(X,X) -> q(X)"), support::rule("b: p(U,V) -> q(U)")));
}
