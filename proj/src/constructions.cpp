#include "disjrw/constructions.hpp"

#include <algorithm>

#include "disjrw/chase.hpp"
#include "disjrw/homomorphism.hpp"
#include "disjrw/partition.hpp"
#include "disjrw/rewriting.hpp"

namespace disjrw {

namespace {

using Kind = ConstructionError::Kind;

std::string rule_name(const DisjunctiveRule& r, std::size_t index) {
  return r.name() ? *r.name() : "r" + std::to_string(index);
}

std::vector<Term> frontier_in_order(const DisjunctiveRule& r, std::size_t i) {
  std::vector<Term> out;
  const auto& fr = r.frontier_of(i);
  for (const Atom& a : r.disjunct(i))
    for (Term t : a.args)
      if (fr.count(t) && std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
  return out;
}

bool connected(const std::vector<const Atom*>& atoms) {
  if (atoms.empty()) return true;
  std::vector<bool> reached(atoms.size(), false);
  std::vector<std::size_t> stack{0};
  reached[0] = true;
  while (!stack.empty()) {
    std::size_t i = stack.back();
    stack.pop_back();
    for (std::size_t j = 0; j < atoms.size(); ++j) {
      if (reached[j]) continue;
      bool shared = false;
      for (Term t : atoms[i]->args)
        if (t.is_variable() && std::find(atoms[j]->args.begin(), atoms[j]->args.end(), t) != atoms[j]->args.end())
          shared = true;
      if (shared) {
        reached[j] = true;
        stack.push_back(j);
      }
    }
  }
  return std::all_of(reached.begin(), reached.end(), [](bool b) { return b; });
}

void check_nonfus_preconditions(const DisjunctiveRule& rule) {
  if (rule.disjunct_count() != 2)
    throw ConstructionError(Kind::NotTwoDisjuncts, "the construction needs a rule with exactly two disjuncts");
  auto body_preds = rule.body().predicates();
  for (const auto& h : rule.head())
    for (const Atom& a : h)
      if (body_preds.count(a.pred))
        throw ConstructionError(Kind::NotSourceToTarget,
                                "predicate " + a.pred.name_str() + " occurs in both body and head");
  if (is_disconnected(rule)) throw ConstructionError(Kind::Disconnected, "rule is disconnected");
  if (auto j = conjunctive_equivalent(rule))
    throw ConstructionError(Kind::ConjunctiveEquivalent,
                            "rule is equivalent to its conjunctive restriction to disjunct " +
                                std::to_string(*j + 1));
}

// A CQ with the positions of its H1 copy (left end) and H2 copy (right end).
struct Chain {
  CQ q;
  Substitution left;   // H1 variables -> terms of q
  Substitution right;  // H2 variables -> terms of q
};

Substitution restrict_compose(const Substitution& outer, const Substitution& inner) {
  Substitution out;
  for (const auto& [v, t] : inner.bindings()) out.bind(v, outer.apply(t));
  return out;
}

PieceUnifier isomorphic_part(const CQ& query, const DisjunctiveRule& rule, std::size_t i,
                             const Substitution& placement) {
  const AtomSet& h = rule.disjunct(i);
  std::vector<std::vector<Term>> classes;
  for (Term v : h.vars()) classes.push_back({v, placement.apply(v)});
  for (Term c : h.constants()) classes.push_back({c});
  return PieceUnifier{query, h.apply(placement), i, h, TermPartition::from_classes(classes)};
}

}  // namespace

std::string link_predicate_name(const DisjunctiveRule& rule) {
  return "link_" + rule.name().value_or("rule");
}

bool is_disconnected(const DisjunctiveRule& rule) {
  for (std::size_t i = 0; i < rule.disjunct_count(); ++i)
    if (rule.frontier_of(i).empty()) return true;
  std::vector<const Atom*> atoms;
  for (const Atom& a : rule.body()) atoms.push_back(&a);
  for (const auto& h : rule.head())
    for (const Atom& a : h) atoms.push_back(&a);
  return !connected(atoms);
}

std::optional<std::size_t> conjunctive_equivalent(const DisjunctiveRule& rule) {
  Substitution freeze;
  for (Term v : rule.body().vars())
    freeze.bind(v, Term::constant("frozen_" + std::to_string(v.var_id())));
  const FactBase frozen = rule.body().apply(freeze);
  const RuleSet single({rule});
  ChaseBudget budget;
  budget.max_depth = 64;
  budget.max_nodes = 200000;
  for (std::size_t j = 0; j < rule.disjunct_count(); ++j) {
    UCQ target{rule.disjunct(j).apply(freeze)};
    if (chase_entails(frozen, single, target, budget).kind == ChaseVerdict::Kind::Entailed) return j;
  }
  return std::nullopt;
}

CQ build_nonfus_query(const DisjunctiveRule& rule, VarSource& vars) {
  return build_nonfus_family(rule, 0, vars).front();
}

std::vector<CQ> build_nonfus_family(const DisjunctiveRule& rule, std::size_t k, VarSource& vars) {
  check_nonfus_preconditions(rule);
  const auto fr1 = frontier_in_order(rule, 0), fr2 = frontier_in_order(rule, 1);
  const Predicate link(link_predicate_name(rule), static_cast<std::uint32_t>(fr1.size() + fr2.size()));

  Chain q0;
  {
    SafeCopy h1 = safe_copy(rule.disjunct(0), vars), h2 = safe_copy(rule.disjunct(1), vars);
    std::vector<Term> args;
    for (Term x : fr1) args.push_back(h1.renaming.apply(x));
    for (Term x : fr2) args.push_back(h2.renaming.apply(x));
    q0.q = h1.atoms.united(h2.atoms);
    q0.q.insert(Atom(link, args));
    q0.left = h1.renaming;
    q0.right = h2.renaming;
  }

  std::vector<Chain> chain{q0};
  const auto rule_vars = rule.vars();
  for (std::size_t i = 1; i <= k; ++i) {
    const Chain& prev = chain.back();
    SafeCopy c1 = safe_copy(q0.q, vars), c2 = safe_copy(prev.q, vars);
    DisjunctivePieceUnifier mu;
    mu.parts.push_back(isomorphic_part(c1.atoms, rule, 0, restrict_compose(c1.renaming, q0.left)));
    mu.parts.push_back(isomorphic_part(c2.atoms, rule, 1, restrict_compose(c2.renaming, prev.right)));
    mu.joined = join_partitions(std::vector<TermPartition>{mu.parts[0].partition, mu.parts[1].partition});
    CQ beta = apply_beta(mu, rule);
    Substitution u = mu.joined.associated_substitution([&](Term t) { return rule_vars.count(t) > 0; });

    SafeCopy fresh = safe_copy(beta, vars);
    Substitution to_fresh = fresh.renaming.after(u);
    Chain next;
    next.q = fresh.atoms;
    next.left = restrict_compose(to_fresh, restrict_compose(c2.renaming, prev.left));
    next.right = restrict_compose(to_fresh, restrict_compose(c1.renaming, q0.right));
    chain.push_back(std::move(next));
  }

  std::vector<CQ> out;
  for (const auto& c : chain) out.push_back(c.q);
  return out;
}

std::string hat_name(const std::string& pred) {
  if (pred == kReductionT) return "hat_T";
  return "hat_" + pred;
}

std::string special_name(const std::string& rule_name) { return "pr_" + rule_name; }

namespace {

Predicate hat(const Predicate& p) { return Predicate(hat_name(p.name_str()), p.arity); }

AtomSet hatted(const AtomSet& s) {
  std::vector<Atom> out;
  for (const Atom& a : s) out.emplace_back(hat(a.pred), a.args);
  return AtomSet(std::move(out));
}

AtomSet with_t(const AtomSet& s) {
  const Predicate t(kReductionT, 1);
  AtomSet out = s;
  for (Term x : s.terms()) out.insert(Atom(t, {x}));
  return out;
}

}  // namespace

ReductionOutput build_reduction(const CQ& q, const RuleSet& datalog_rules, VarSource& vars) {
  const Predicate t(kReductionT, 1);
  std::set<Predicate> p_preds = q.predicates();
  for (std::size_t i = 0; i < datalog_rules.size(); ++i) {
    const auto& r = datalog_rules[i];
    if (!r.is_conjunctive() || !r.is_datalog() || r.disjunct(0).size() != 1)
      throw ConstructionError(Kind::InvalidInput,
                              "rule " + rule_name(r, i) + " is not a conjunctive datalog rule with an atomic head");
    if (!r.body().constants().empty() || !r.disjunct(0).constants().empty())
      throw ConstructionError(Kind::InvalidInput, "rule " + rule_name(r, i) + " mentions a constant");
    auto b = r.body().predicates();
    p_preds.insert(b.begin(), b.end());
    p_preds.insert(r.disjunct(0)[0].pred);
  }
  if (p_preds.count(t)) throw ConstructionError(Kind::InvalidInput, "predicate tt_T is reserved");

  std::set<Predicate> source = p_preds;
  source.insert(t);
  std::set<Predicate> target;
  std::map<Predicate, Predicate> unhat;
  for (const Predicate& p : source) {
    target.insert(hat(p));
    unhat.emplace(hat(p), p);
  }

  std::vector<DisjunctiveRule> mapping_rules;
  std::vector<ReductionEntry> entries;
  for (std::size_t i = 0; i < datalog_rules.size(); ++i) {
    const DisjunctiveRule r = datalog_rules[i].renamed(vars);
    const std::string name = rule_name(datalog_rules[i], i);
    const Atom& head = r.disjunct(0)[0];
    std::vector<Term> fr;
    for (Term x : head.args)
      if (std::find(fr.begin(), fr.end(), x) == fr.end()) fr.push_back(x);
    const Predicate special(special_name(name), static_cast<std::uint32_t>(fr.size()));
    target.insert(special);

    CQ qr = hatted(with_t(r.body()));
    qr.insert(Atom(special, fr));

    std::vector<Atom> t_body;
    for (Term x : fr) t_body.emplace_back(t, std::vector<Term>{x});
    std::vector<AtomSet> heads{AtomSet{Atom(special, fr)}, hatted(r.disjunct(0))};
    DisjunctiveRule m("m_" + name, AtomSet(std::move(t_body)), std::move(heads));
    m = m.renamed(vars);
    mapping_rules.push_back(m);

    std::string rname = name;
    entries.push_back(ReductionEntry{DisjunctiveRule(rname, r.body(), r.head()), special, fr, qr, m});
  }
  for (const Predicate& p : source) {
    std::vector<Term> xs;
    for (std::uint32_t k = 0; k < p.arity; ++k) xs.push_back(vars.fresh());
    mapping_rules.emplace_back("trans_" + p.name_str(), AtomSet{Atom(p, xs)},
                               std::vector<AtomSet>{AtomSet{Atom(hat(p), xs)}});
  }

  ReductionOutput out{hatted(with_t(q)), UCQ{}, Mapping(RuleSet(mapping_rules, vars), source, target),
                      std::move(entries), std::move(unhat)};
  out.ucq.insert(out.q_q);
  for (const auto& e : out.entries) out.ucq.insert(e.query);
  return out;
}

Reversed reverse(const CQ& q, const ReductionOutput& red) {
  const Predicate t(kReductionT, 1);
  const ReductionEntry* special = nullptr;
  const Atom* special_atom = nullptr;
  std::vector<Atom> rest;
  for (const Atom& a : q) {
    auto it = std::find_if(red.entries.begin(), red.entries.end(),
                           [&](const ReductionEntry& e) { return e.special == a.pred; });
    if (it != red.entries.end()) {
      if (special) throw ConstructionError(Kind::TooManySpecialAtoms, "more than one special atom");
      special = &*it;
      special_atom = &a;
      continue;
    }
    if (a.pred.name_str().rfind("pr_", 0) == 0)
      throw ConstructionError(Kind::UnknownSpecialPredicate, "unknown special predicate " + a.pred.name_str());
    Predicate p = a.pred;
    if (auto u = red.unhat.find(p); u != red.unhat.end()) p = u->second;
    if (p == t) continue;
    rest.emplace_back(p, a.args);
  }
  AtomSet body(std::move(rest));
  if (!special) return body;

  Substitution s;
  for (std::size_t k = 0; k < special->frontier.size(); ++k) s.bind(special->frontier[k], special_atom->args[k]);
  return DisjunctiveRule(special->rule.name(), std::move(body), {special->rule.disjunct(0).apply(s)});
}

std::vector<DisjunctiveRule> unfold(const DisjunctiveRule& r2, const DisjunctiveRule& r1_in, VarSource& vars) {
  std::vector<DisjunctiveRule> out;
  const DisjunctiveRule r1 = r1_in.renamed(vars);
  const Atom& h1 = r1.disjunct(0)[0];
  for (const Atom& a : r2.body()) {
    if (a.pred != h1.pred) continue;
    std::set<Term> universe = AtomSet{a}.terms();
    for (Term x : h1.args) universe.insert(x);
    TermPartition p(universe);
    for (std::size_t k = 0; k < a.args.size(); ++k) p.merge(a.args[k], h1.args[k]);
    if (!p.is_admissible()) continue;
    Substitution u = p.associated_substitution();
    AtomSet body = r1.body().apply(u).united(r2.body().minus(AtomSet{a}).apply(u));
    std::string name = r2.name().value_or("r") + "_" + r1_in.name().value_or("r");
    out.emplace_back(std::move(name), std::move(body), std::vector<AtomSet>{r2.disjunct(0).apply(u)});
  }
  return out;
}

bool same_rule_modulo_renaming(const DisjunctiveRule& a, const DisjunctiveRule& b) {
  auto marked = [](const DisjunctiveRule& r) {
    AtomSet s = r.body();
    for (std::size_t i = 0; i < r.disjunct_count(); ++i)
      for (const Atom& h : r.disjunct(i))
        s.insert(Atom(Predicate("head" + std::to_string(i) + "_" + h.pred.name_str(), h.pred.arity), h.args));
    return s;
  };
  if (a.body().size() != b.body().size() || a.disjunct_count() != b.disjunct_count()) return false;
  AtomSet ma = marked(a), mb = marked(b);
  return ma.size() == mb.size() && cq_entails(ma, mb) && cq_entails(mb, ma);
}

RuleSet unfold_closure(const RuleSet& rules, std::size_t max_compositions, VarSource& vars) {
  for (std::size_t i = 0; i < rules.size(); ++i) {
    const auto& r = rules[i];
    if (!r.is_conjunctive() || !r.is_datalog() || r.disjunct(0).size() != 1)
      throw ConstructionError(Kind::InvalidInput,
                              "rule " + rule_name(r, i) + " is not a conjunctive datalog rule with an atomic head");
  }
  std::vector<DisjunctiveRule> all(rules.begin(), rules.end());
  std::vector<DisjunctiveRule> layer = all;
  for (std::size_t step = 0; step < max_compositions && !layer.empty(); ++step) {
    std::vector<DisjunctiveRule> next;
    for (const auto& r2 : layer)
      for (const auto& r1 : rules)
        for (auto& c : unfold(r2, r1, vars)) {
          bool dup = std::any_of(all.begin(), all.end(), [&](const auto& x) { return same_rule_modulo_renaming(x, c); });
          if (dup) continue;
          all.push_back(c);
          next.push_back(std::move(c));
        }
    layer = std::move(next);
  }
  return RuleSet(std::move(all), vars);
}

}  // namespace disjrw
