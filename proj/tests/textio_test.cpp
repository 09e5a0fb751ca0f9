#include <gtest/gtest.h>

#include <json.hpp>

#include "disjrw/chase.hpp"
#include "disjrw/constructions.hpp"
#include "disjrw/harness.hpp"
#include "disjrw/rewriting.hpp"
#include "support.hpp"

using namespace disjrw;

namespace {

bool same_document(const Document& a, const Document& b) {
  if (a.facts != b.facts || a.rules.size() != b.rules.size() || a.queries.size() != b.queries.size()) return false;
  if (a.source != b.source) return false;
  for (std::size_t i = 0; i < a.rules.size(); ++i)
    if (a.rules[i].name() != b.rules[i].name() || !same_rule_modulo_renaming(a.rules[i], b.rules[i])) return false;
  for (std::size_t i = 0; i < a.queries.size(); ++i)
    if (a.queries[i].name != b.queries[i].name || !support::brute_equiv(a.queries[i].cq, b.queries[i].cq))
      return false;
  return true;
}

std::size_t error_line(const std::string& text) {
  try {
    parse(text);
  } catch (const ParseError& e) {
    return e.line;
  }
  return 0;
}

}  // namespace

TEST(Parse, ColorabilityDocument) {
  Document d = support::load("color_triangle.dr");
  EXPECT_EQ(d.facts.size(), 6u);
  ASSERT_EQ(d.rules.size(), 1u);
  const DisjunctiveRule& r = d.rules[0];
  EXPECT_EQ(r.name(), "color");
  EXPECT_EQ(r.disjunct_count(), 2u);
  EXPECT_EQ(r.frontier().size(), 1u);
  EXPECT_TRUE(r.existentials().empty());
  EXPECT_EQ(d.ucq().size(), 2u);
  EXPECT_FALSE(d.source.has_value());
}

TEST(Parse, ExistentialsAreHeadOnlyVariables) {
  DisjunctiveRule r = support::rule("r: p(X,Y) -> p1(X,Z), p2(Y,Z)");
  EXPECT_TRUE(r.is_conjunctive());
  ASSERT_EQ(r.existentials(0).size(), 1u);
  EXPECT_EQ(r.frontier().size(), 2u);
}

TEST(Parse, SectionsInAnyOrderWithComments) {
  Document d = parse("% leading comment\r\n@queries q: ? :- t1(U), t2(U).\n@source p.\n@rules\n"
                     "r: p(X,Y) -> t1(X) | t2(Y). % trailing\n@facts p(a,b), p(b,c).\n");
  EXPECT_EQ(d.facts.size(), 2u);
  EXPECT_EQ(d.ucq().size(), 1u);
  ASSERT_TRUE(d.source.has_value());
  EXPECT_EQ(*d.source, std::set<std::string>{"p"});
  Mapping m = d.mapping();
  EXPECT_EQ(m.target().size(), 2u);
  ASSERT_NE(d.find_query("q"), nullptr);
  EXPECT_EQ(d.find_query("q")->cq.size(), 2u);
}

TEST(Parse, DigitConstants) {
  Document d = parse("@facts e(1,2).\n@queries ? :- e(1,X).\n");
  EXPECT_TRUE(d.facts.is_ground());
  EXPECT_EQ(d.ucq()[0].constants().size(), 1u);
}

TEST(Parse, Errors) {
  EXPECT_THROW(parse("@facts p(X)."), ParseError);                      // non-ground fact
  EXPECT_THROW(parse("@facts p(a). p(a,b)."), ParseError);              // arity clash
  EXPECT_THROW(parse("@rules r: -> q(X)."), ParseError);                // empty body
  EXPECT_THROW(parse("@rules r: p(X) -> q(X) | ."), ParseError);        // empty disjunct
  EXPECT_THROW(parse("@rules p(X) -> q(X)"), ParseError);               // missing dot
  EXPECT_THROW(parse("p(a)."), ParseError);                             // outside a section
  EXPECT_THROW(parse("@bogus"), ParseError);
  EXPECT_THROW(parse("@queries ? :- P(X)."), ParseError);
  EXPECT_THROW(parse("@source p.\n@rules r: q(X) -> t(X)."), ParseError);  // body off source
  EXPECT_THROW(parse("@source p.\n@rules r: p(X) -> p(X)."), ParseError);  // head on source
}

TEST(Parse, ErrorPositions) {
  EXPECT_EQ(error_line("@facts\np(a).\n\np(X).\n"), 4u);
  try {
    parse("@rules\nr: p(X) => q(X).");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line, 2u);
    EXPECT_EQ(e.column, 9u);
    EXPECT_NE(std::string(e.what()).find("2:9:"), std::string::npos);
  }
}

TEST(Serialize, UcqLines) {
  UCQ q{support::cq("p(U,V)")};
  EXPECT_EQ(serialize(q), "? :- p(V0,V1).\n");
  const std::string empty = serialize(UCQ{});
  ASSERT_FALSE(empty.empty());
  EXPECT_EQ(empty[0], '%');
  EXPECT_TRUE(parse("@queries\n" + empty).ucq().empty());
}

TEST(Serialize, RoundTripFixtures) {
  for (const char* f : {"color_mapping.dr", "color_triangle.dr", "piece_unifier.dr", "grandparent.dr",
                        "transitivity_const.dr", "nonfus_mapping.dr"}) {
    Document d = support::load(f);
    Document back = parse(serialize(d));
    EXPECT_TRUE(same_document(d, back)) << f;
    EXPECT_EQ(serialize(back), serialize(d)) << f;
  }
}

TEST(Serialize, RoundTripGenerated) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    GenConfig cfg;
    cfg.seed = seed;
    VarSource vars;
    Instance inst = gen_instance(cfg, vars);
    Document d;
    d.facts = inst.facts;
    d.rules = inst.rules;
    for (const CQ& q : inst.query) d.queries.push_back({std::nullopt, q});
    Document back = parse(serialize(d));
    EXPECT_TRUE(same_document(d, back)) << "seed " << seed << "\n" << serialize(d);
    EXPECT_EQ(serialize(back), serialize(d)) << "seed " << seed;
  }
}

TEST(Serialize, ChaseTree) {
  Document d = support::load("color_edge.dr");
  DerivationTree t = expand_chase(d.facts, d.rules);
  const std::string text = serialize(t);
  EXPECT_NE(text.find("color"), std::string::npos);
  EXPECT_EQ(serialize(t), text);
}

TEST(Json, RewritingOutcome) {
  Document d = support::load("transitivity_open.dr");
  RewritingOutcome out = rewrite(d.ucq(), d.rules);
  auto j = nlohmann::json::parse(export_json(out, JsonOptions{false}));
  EXPECT_EQ(j["status"], "complete");
  EXPECT_EQ(j["cqs"].size(), 1u);
  EXPECT_EQ(j["cover_size"], 1);
  EXPECT_EQ(j["elapsed_ms"], 0);
  EXPECT_TRUE(j.contains("iterations"));
  EXPECT_TRUE(j.contains("generated_count"));
}

TEST(Json, ChaseVerdict) {
  Document d = support::load("color_edge.dr");
  ChaseVerdict v = chase_entails(d.facts, d.rules, d.ucq());
  auto j = nlohmann::json::parse(export_json(v, JsonOptions{false}));
  EXPECT_EQ(j["status"], "not_entailed");
  EXPECT_TRUE(j["cqs"].empty());
}
