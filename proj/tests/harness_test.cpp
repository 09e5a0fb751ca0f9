#include <gtest/gtest.h>

#include "disjrw/chase.hpp"
#include "disjrw/harness.hpp"
#include "disjrw/homomorphism.hpp"
#include "disjrw/textio.hpp"
#include "support.hpp"

using namespace disjrw;

namespace {

std::string dump(const Instance& inst) {
  Document d;
  d.facts = inst.facts;
  d.rules = inst.rules;
  for (const CQ& q : inst.query) d.queries.push_back({std::nullopt, q});
  return serialize(d);
}

std::vector<DisjunctivePieceUnifier> unifiers(const UCQ& q, const DisjunctiveRule& r) {
  std::vector<DisjunctivePieceUnifier> out;
  enumerate_disjunctive_piece_unifiers(q, r, std::nullopt, [&](const DisjunctivePieceUnifier& mu) {
    out.push_back(mu);
    return true;
  });
  return out;
}

}  // namespace

TEST(Generator, DeterministicPerSeed) {
  for (std::uint64_t seed : {1u, 7u, 99u}) {
    GenConfig cfg;
    cfg.seed = seed;
    VarSource a, b;
    EXPECT_EQ(dump(gen_instance(cfg, a)), dump(gen_instance(cfg, b))) << seed;
  }
  GenConfig c1, c2;
  c1.seed = 1;
  c2.seed = 2;
  VarSource a, b;
  EXPECT_NE(dump(gen_instance(c1, a)), dump(gen_instance(c2, b)));
}

TEST(Generator, RespectsBounds) {
  GenConfig cfg;
  cfg.max_arity = 3;
  cfg.max_rule_disjuncts = 3;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    cfg.seed = seed;
    VarSource vars;
    Instance inst = gen_instance(cfg, vars);
    EXPECT_TRUE(inst.facts.is_ground());
    EXPECT_GE(inst.rules.size(), 1u);
    EXPECT_LE(inst.rules.size(), cfg.max_rules);
    EXPECT_LE(inst.query.size(), cfg.max_query_cqs);
    for (const auto& r : inst.rules) {
      EXPECT_LE(r.disjunct_count(), cfg.max_rule_disjuncts);
      EXPECT_LE(r.body().size(), cfg.max_atoms_per_set);
      for (const auto& h : r.head()) EXPECT_LE(h.size(), cfg.max_atoms_per_set);
    }
    for (const Atom& a : inst.facts) EXPECT_LE(a.args.size(), cfg.max_arity);
  }
}

TEST(Generator, Validation) {
  GenConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.max_arity = 0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg = GenConfig{};
  cfg.max_atoms_per_set = 6;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg = GenConfig{};
  cfg.p_constant = 1.5;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
}

TEST(Checks, BackwardForwardOnColoring) {
  Document d = support::load("color_triangle.dr");
  const DisjunctiveRule& r = d.rules[0];
  for (const auto& mu : unifiers(d.ucq(), r)) {
    CQ b = apply_beta(mu, r);
    // Variables of β act as nulls, so β itself is a fact base satisfying it.
    FactBase f = b;
    EXPECT_TRUE(check_backward_forward(f, d.ucq(), r, mu));
  }
}

TEST(Checks, ForwardBackwardOnColoring) {
  Document d = support::load("color_edge.dr");
  VarSource vars;
  vars.reserve_past(1u << 20);
  for (const Trigger& t : find_triggers(d.facts, d.rules[0])) {
    // Each branch entails the atoms it added, so their union is entailed by α.
    UCQ q;
    for (const FactBase& branch : apply_trigger(d.facts, t, vars)) q.insert(CQ(branch.minus(d.facts)));
    EXPECT_TRUE(check_forward_backward(d.facts, q, t));
    EXPECT_TRUE(check_beta_after_alpha(d.facts, t));
  }
}

TEST(Checks, AlphaAfterBeta) {
  Document d = support::load("piece_unifier.dr");
  for (const auto& r : d.rules)
    for (const auto& q : d.queries)
      for (const auto& mu : unifiers(UCQ{q.cq}, r)) EXPECT_TRUE(check_alpha_after_beta(UCQ{q.cq}, r, mu));
}

TEST(Checks, BoundedEntailmentAgreesWithChase) {
  for (const char* f : {"color_triangle.dr", "color_edge.dr", "color_square.dr"}) {
    Document d = support::load(f);
    const bool chase = chase_entails(d.facts, d.rules, d.ucq()).kind == ChaseVerdict::Kind::Entailed;
    const std::size_t depth = d.facts.terms().size();
    EXPECT_EQ(bounded_entails(d.facts, d.rules, d.ucq(), depth), chase) << f;
  }
  Document tri = support::load("color_triangle.dr");
  EXPECT_FALSE(bounded_entails(tri.facts, tri.rules, tri.ucq(), 0));
}

TEST(Checks, CrossCheckColoring) {
  Document d = support::load("color_triangle.dr");
  CrossCheckReport rep = cross_check(d.facts, d.rules, d.ucq(), 3);
  EXPECT_EQ(rep.soundness_violations, 0u);
  EXPECT_EQ(rep.completeness_violations, 0u);
  EXPECT_EQ(rep.chase, ChaseVerdict::Kind::Entailed);
  ASSERT_EQ(rep.levels.size(), 4u);
  EXPECT_FALSE(rep.levels[0].derivation);
  EXPECT_TRUE(rep.levels[3].derivation);
  for (const auto& l : rep.levels) EXPECT_EQ(l.derivation, l.rewriting) << l.depth;
}

TEST(Checks, AlgorithmInvariant) {
  Document d = support::load("transitivity_const.dr");
  EXPECT_TRUE(check_algorithm_invariant(d.ucq(), d.rules, 3));
  Document c = support::load("piece_unifier.dr");
  for (const auto& q : c.queries) EXPECT_TRUE(check_algorithm_invariant(UCQ{q.cq}, c.rules, 2));
}

TEST(Suite, SmallRunPasses) {
  SuiteConfig cfg;
  cfg.count = 15;
  cfg.gen.seed = 1000;
  SuiteReport rep = run_suite(cfg);
  EXPECT_EQ(rep.instances, 15u);
  EXPECT_TRUE(rep.ok()) << (rep.failures.empty() ? "" : rep.failures[0].check + ": " + rep.failures[0].detail);
  EXPECT_EQ(rep.counts.size(), suite_check_names().size() - 1);
  for (const auto& [name, c] : rep.counts) EXPECT_EQ(c.passed + c.failed + c.skipped, 15u) << name;
}

TEST(Suite, ParallelMatchesSerial) {
  SuiteConfig cfg;
  cfg.count = 8;
  cfg.checks = {"beta_preservation", "alpha_preservation"};
  SuiteReport par = run_suite(cfg);
  cfg.parallel = false;
  SuiteReport ser = run_suite(cfg);
  for (const auto& name : cfg.checks) {
    EXPECT_EQ(par.counts[name].passed, ser.counts[name].passed) << name;
    EXPECT_EQ(par.counts[name].skipped, ser.counts[name].skipped) << name;
  }
}

TEST(Suite, UnknownCheck) {
  EXPECT_THROW(run_check("nope", GenConfig{}, 3), std::invalid_argument);
  SuiteConfig cfg;
  cfg.count = 1;
  cfg.checks = {"nope"};
  EXPECT_THROW(run_suite(cfg), std::invalid_argument);
}
