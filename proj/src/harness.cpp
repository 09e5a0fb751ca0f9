#include "disjrw/harness.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>

#include "disjrw/cover.hpp"
#include "disjrw/homomorphism.hpp"

namespace disjrw {

namespace {

using Rng = std::mt19937_64;

std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

template <class T>
const T& choose(Rng& rng, const std::vector<T>& v) {
  return v[pick(rng, 0, v.size() - 1)];
}

struct Vocabulary {
  std::vector<Predicate> preds;
  std::vector<Term> constants;
};

Atom random_atom(Rng& rng, const Vocabulary& voc, const std::vector<Term>& pool, double p_constant) {
  const Predicate& p = choose(rng, voc.preds);
  std::vector<Term> args;
  for (std::uint32_t i = 0; i < p.arity; ++i)
    args.push_back(pool.empty() || coin(rng, p_constant) ? choose(rng, voc.constants) : choose(rng, pool));
  return Atom(p, std::move(args));
}

AtomSet random_set(Rng& rng, const Vocabulary& voc, const std::vector<Term>& pool, std::size_t n,
                   double p_constant) {
  AtomSet out;
  for (std::size_t i = 0; i < n; ++i) out.insert(random_atom(rng, voc, pool, p_constant));
  return out;
}

std::vector<Term> fresh_pool(VarSource& vars, std::size_t n) {
  std::vector<Term> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(vars.fresh());
  return out;
}

DisjunctiveRule gen_rule(const GenConfig& cfg, Rng& rng, const Vocabulary& voc, VarSource& vars,
                         std::size_t index) {
  const auto pool = fresh_pool(vars, pick(rng, 1, 3));
  AtomSet body = random_set(rng, voc, pool, pick(rng, 1, cfg.max_atoms_per_set), cfg.p_constant);
  const auto bv = body.vars();
  const std::vector<Term> body_vars(bv.begin(), bv.end());
  std::vector<AtomSet> head;
  const std::size_t d = pick(rng, 1, cfg.max_rule_disjuncts);
  for (std::size_t i = 0; i < d; ++i) {
    const auto ex = fresh_pool(vars, 2);
    AtomSet h;
    const std::size_t n = pick(rng, 1, cfg.max_atoms_per_set);
    for (std::size_t k = 0; k < n; ++k) {
      const Predicate& p = choose(rng, voc.preds);
      std::vector<Term> args;
      for (std::uint32_t j = 0; j < p.arity; ++j) {
        if (coin(rng, cfg.p_existential) || body_vars.empty())
          args.push_back(choose(rng, ex));
        else if (coin(rng, cfg.p_constant))
          args.push_back(choose(rng, voc.constants));
        else
          args.push_back(choose(rng, body_vars));
      }
      h.insert(Atom(p, std::move(args)));
    }
    head.push_back(std::move(h));
  }
  return DisjunctiveRule("r" + std::to_string(index), std::move(body), std::move(head));
}

Vocabulary gen_vocabulary(const GenConfig& cfg, Rng& rng) {
  Vocabulary voc;
  const std::size_t n = pick(rng, 1, cfg.max_predicates);
  for (std::size_t i = 0; i < n; ++i)
    voc.preds.emplace_back("p" + std::to_string(i), static_cast<std::uint32_t>(pick(rng, 1, cfg.max_arity)));
  for (std::size_t i = 0; i < cfg.max_constants; ++i) voc.constants.push_back(Term::constant("c" + std::to_string(i)));
  return voc;
}

std::string describe(const Instance& inst) {
  std::string s = "facts: " + to_string(inst.facts) + "; rules:";
  for (const auto& r : inst.rules) s += " " + to_string(r) + ";";
  s += " query:";
  for (const auto& c : inst.query) s += " [" + to_string(c) + "]";
  return s;
}

std::string describe(const UCQ& q) {
  std::string s;
  for (const auto& c : q) s += "[" + to_string(c) + "]";
  return s;
}

}  // namespace

void GenConfig::validate() const {
  if (max_predicates == 0 || max_arity == 0 || max_rule_disjuncts == 0 || max_atoms_per_set == 0 ||
      max_constants == 0 || max_rules == 0 || max_query_cqs == 0)
    throw std::invalid_argument("generator bounds must be positive");
  if (max_arity > 3 || max_rule_disjuncts > 3 || max_atoms_per_set > 5 || max_constants > 4)
    throw std::invalid_argument("generator bounds exceed the supported instance scale");
  if (p_existential < 0 || p_existential > 1 || p_constant < 0 || p_constant > 1)
    throw std::invalid_argument("probabilities must lie in [0, 1]");
}

Instance gen_instance(const GenConfig& cfg, VarSource& vars) {
  cfg.validate();
  Rng rng(cfg.seed);
  const Vocabulary voc = gen_vocabulary(cfg, rng);
  Instance inst;
  inst.facts = random_set(rng, voc, {}, pick(rng, 1, 2 * cfg.max_atoms_per_set), 1.0);
  std::vector<DisjunctiveRule> rules;
  const std::size_t nr = pick(rng, 1, cfg.max_rules);
  for (std::size_t i = 0; i < nr; ++i) rules.push_back(gen_rule(cfg, rng, voc, vars, i));
  inst.rules = RuleSet(std::move(rules), vars);
  const std::size_t nq = pick(rng, 1, cfg.max_query_cqs);
  for (std::size_t i = 0; i < nq; ++i) {
    const auto pool = fresh_pool(vars, pick(rng, 1, 3));
    inst.query.insert(random_set(rng, voc, pool, pick(rng, 1, cfg.max_atoms_per_set), cfg.p_constant));
  }
  return inst;
}

bool all_entail(const std::vector<FactBase>& fs, const UCQ& q) {
  return std::all_of(fs.begin(), fs.end(), [&](const FactBase& f) { return entails_some(f, q); });
}

namespace {

// Streams unifiers, throwing once the cap is passed.
void for_each_unifier(const UCQ& q, const DisjunctiveRule& rule,
                      const std::function<bool(const DisjunctivePieceUnifier&)>& visit, VarSource& vars) {
  std::size_t count = 0;
  enumerate_disjunctive_piece_unifiers(
      q, rule, std::nullopt,
      [&](const DisjunctivePieceUnifier& mu) {
        if (++count > kEnumerationCap) throw CapExceeded("more than the cap of disjunctive piece-unifiers");
        return visit(mu);
      },
      {}, vars);
}

std::vector<DisjunctivePieceUnifier> all_unifiers(const UCQ& q, const DisjunctiveRule& rule, VarSource& vars) {
  std::vector<DisjunctivePieceUnifier> out;
  for_each_unifier(q, rule, [&](const DisjunctivePieceUnifier& mu) {
    out.push_back(mu);
    return true;
  }, vars);
  return out;
}

// Every fact base of `a` entails some fact base of `b`.
bool sets_entail(const std::vector<FactBase>& a, const std::vector<FactBase>& b) {
  return std::all_of(a.begin(), a.end(), [&](const FactBase& f) {
    return std::any_of(b.begin(), b.end(), [&](const FactBase& g) { return homomorphism(g, f).has_value(); });
  });
}

}  // namespace

bool check_backward_forward(const FactBase& f, const UCQ& q, const DisjunctiveRule& rule,
                            const DisjunctivePieceUnifier& mu, VarSource& vars) {
  if (!homomorphism(apply_beta(mu, rule), f))
    throw std::invalid_argument("backward-forward: the fact base does not entail the rewriting");
  for (const Trigger& t : find_triggers(f, rule))
    if (all_entail(apply_trigger(f, t, vars), q)) return true;
  return false;
}

bool check_forward_backward(const FactBase& f, const UCQ& q, const Trigger& trigger, VarSource& vars) {
  if (!all_entail(apply_trigger(f, trigger, vars), q))
    throw std::invalid_argument("forward-backward: the trigger application does not entail the query");
  if (entails_some(f, q)) return true;
  bool found = false;
  for_each_unifier(q, *trigger.rule, [&](const DisjunctivePieceUnifier& mu) {
    found = homomorphism(apply_beta(mu, *trigger.rule), f).has_value();
    return !found;
  }, vars);
  return found;
}

bool check_alpha_preservation(const FactBase& f1, const FactBase& f2, const Trigger& t2, VarSource& vars) {
  if (!homomorphism(f2, f1)) throw std::invalid_argument("alpha preservation: f1 does not entail f2");
  const auto a2 = apply_trigger(f2, t2, vars);
  for (const Trigger& t1 : find_triggers(f1, *t2.rule, t2.rule_index))
    if (sets_entail(apply_trigger(f1, t1, vars), a2)) return true;
  return false;
}

bool check_beta_preservation(const UCQ& q1, const UCQ& q2, const DisjunctiveRule& rule,
                             const DisjunctivePieceUnifier& mu2, VarSource& vars) {
  if (!ucq_entails(q2, q1)) throw std::invalid_argument("beta preservation: q2 does not entail q1");
  const CQ b2 = apply_beta(mu2, rule);
  if (entails_some(b2, q1)) return true;
  bool found = false;
  for_each_unifier(q1, rule, [&](const DisjunctivePieceUnifier& mu1) {
    found = cq_entails(b2, apply_beta(mu1, rule));
    return !found;
  }, vars);
  return found;
}

bool check_beta_after_alpha(const FactBase& f, const Trigger& t, VarSource& vars) {
  const UCQ q(apply_trigger(f, t, vars));
  bool found = false;
  for_each_unifier(q, *t.rule, [&](const DisjunctivePieceUnifier& mu) {
    found = homomorphism(apply_beta(mu, *t.rule), f).has_value();
    return !found;
  }, vars);
  return found;
}

bool check_alpha_after_beta(const UCQ& q, const DisjunctiveRule& rule, const DisjunctivePieceUnifier& mu,
                            VarSource& vars) {
  const FactBase b = safe_copy(apply_beta(mu, rule), vars).atoms;
  for (const Trigger& t : find_triggers(b, rule))
    if (all_entail(apply_trigger(b, t, vars), q)) return true;
  return false;
}

bool bounded_entails(const FactBase& f, const RuleSet& rules, const UCQ& q, std::size_t depth, VarSource& vars) {
  std::size_t nodes = 0;
  std::unordered_map<std::string, bool> memo;
  std::function<bool(const FactBase&, std::size_t)> ent = [&](const FactBase& g, std::size_t d) -> bool {
    if (++nodes > kEnumerationCap) throw CapExceeded("bounded derivation search exceeded the cap");
    if (entails_some(g, q)) return true;
    if (d == 0) return false;
    const std::string key = canonical_string(g) + "#" + std::to_string(d);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    bool result = false;
    for (std::size_t r = 0; r < rules.size() && !result; ++r)
      for (const Trigger& t : find_triggers(g, rules[r], r)) {
        if (is_satisfied(t, g)) continue;
        const auto branches = apply_trigger(g, t, vars);
        if (std::all_of(branches.begin(), branches.end(), [&](const FactBase& b) { return ent(b, d - 1); })) {
          result = true;
          break;
        }
      }
    memo.emplace(key, result);
    return result;
  };
  return ent(f, depth);
}

CrossCheckReport cross_check(const FactBase& f, const RuleSet& rules, const UCQ& q, std::size_t depth,
                             VarSource& vars) {
  CrossCheckReport rep;
  RewriteBudget budget;
  budget.max_iterations = depth;
  budget.max_cq_atoms = 64;
  budget.max_generated = kEnumerationCap;
  RewriteOptions opts;
  opts.trace = true;
  const RewritingOutcome rw = rewrite(q, rules, budget, opts, vars);
  rep.inconclusive = rw.truncated;

  bool any_rewriting = false;
  for (std::size_t k = 0; k <= depth; ++k) {
    const UCQ& star = k == 0 ? q : (k <= rw.trace.size() ? rw.trace[k - 1].result : rw.result);
    CrossCheckLevel lvl{k, bounded_entails(f, rules, q, k, vars), entails_some(f, star)};
    any_rewriting = any_rewriting || lvl.rewriting;
    if (lvl.rewriting && !lvl.derivation) {
      ++rep.soundness_violations;
      rep.detail += "depth " + std::to_string(k) + ": rewriting entailed without a derivation; ";
    }
    if (lvl.derivation && !lvl.rewriting && !rw.truncated) {
      ++rep.completeness_violations;
      rep.detail += "depth " + std::to_string(k) + ": derivation without a matching rewriting; ";
    }
    rep.levels.push_back(lvl);
  }

  ChaseBudget cb;
  cb.max_depth = 4 * depth + 4;
  cb.max_nodes = 20000;
  rep.chase = chase_entails(f, rules, q, cb, vars).kind;
  if (rep.chase == ChaseVerdict::Kind::NotEntailed && any_rewriting) {
    ++rep.soundness_violations;
    rep.detail += "chase saturated without the query although a rewriting maps to the facts; ";
  }
  return rep;
}

bool check_algorithm_invariant(const UCQ& q, const RuleSet& rules, std::size_t k, VarSource& vars) {
  RewriteBudget budget;
  budget.max_iterations = k;
  budget.max_cq_atoms = 64;
  budget.max_generated = kEnumerationCap;
  RewriteOptions opts;
  opts.trace = true;
  const RewritingOutcome rw = rewrite(q, rules, budget, opts, vars);
  if (rw.truncated) throw CapExceeded("rewriting truncated");
  UCQ w = q;
  for (std::size_t i = 1; i <= k; ++i) {
    w = w_step(w, rules, {}, vars);
    if (w.size() > 5000) throw CapExceeded("w_step iterate too large");
    const UCQ& star = i <= rw.trace.size() ? rw.trace[i - 1].result : rw.result;
    if (!ucq_equivalent(w, star)) return false;
  }
  return true;
}

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::Pass: return "pass";
    case Outcome::Fail: return "fail";
    case Outcome::Skipped: return "skipped";
  }
  return "skipped";
}

bool SuiteReport::ok() const {
  for (const auto& [name, c] : counts)
    if (c.failed || c.skipped) return false;
  return true;
}

const std::vector<std::string>& suite_check_names() {
  static const std::vector<std::string> names{
      "backward_forward", "forward_backward", "alpha_preservation", "beta_preservation",
      "beta_after_alpha", "alpha_after_beta", "cross_check",        "algorithm_invariant"};
  return names;
}

namespace {

// Signals that the drawn inputs do not meet a precondition; the caller
// regenerates.
struct Regenerate {};

constexpr std::size_t kAttempts = 25;

std::uint64_t derive_seed(std::uint64_t seed, std::size_t check, std::size_t attempt) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (check * 131 + attempt + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::vector<Term> fact_constants(const Instance& inst) {
  auto cs = inst.facts.constants();
  std::vector<Term> out(cs.begin(), cs.end());
  if (out.empty()) out.push_back(Term::constant("c0"));
  return out;
}

// Facts plus an image of the rule body, so the rule has a trigger. Body
// variables become constants, or nulls with probability p_null.
FactBase with_body_image(const Instance& inst, const DisjunctiveRule& rule, Rng& rng, double p_null,
                         VarSource& vars) {
  const auto cs = fact_constants(inst);
  Substitution s;
  for (Term v : rule.body().vars()) s.bind(v, coin(rng, p_null) ? vars.fresh() : choose(rng, cs));
  return inst.facts.united(rule.body().apply(s));
}

std::size_t pick_rule(const Instance& inst, Rng& rng) { return pick(rng, 0, inst.rules.size() - 1); }

// A random unifier of q over some rule, or Regenerate.
std::pair<std::size_t, DisjunctivePieceUnifier> random_unifier(const Instance& inst, const UCQ& q, Rng& rng,
                                                               VarSource& vars) {
  std::vector<std::size_t> order(inst.rules.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  for (std::size_t r : order) {
    auto mus = all_unifiers(q, inst.rules[r], vars);
    if (!mus.empty()) return {r, mus[pick(rng, 0, mus.size() - 1)]};
  }
  throw Regenerate{};
}

// Subsets of each branch, with nulls kept as variables and some constants
// generalized, so that the branches entail the result.
UCQ mine_query(const std::vector<FactBase>& branches, const FactBase& base, Rng& rng, VarSource& vars) {
  UCQ q;
  for (const FactBase& b : branches) {
    std::vector<Atom> chosen;
    const AtomSet added = b.minus(base);
    if (!added.empty() && coin(rng, 0.8)) chosen.push_back(added[pick(rng, 0, added.size() - 1)]);
    for (const Atom& a : b)
      if (coin(rng, 0.3)) chosen.push_back(a);
    if (chosen.empty()) chosen.push_back(b[pick(rng, 0, b.size() - 1)]);
    if (chosen.size() > 4) chosen.resize(4);
    Substitution gen;
    for (Term c : AtomSet(chosen).constants())
      if (coin(rng, 0.5)) gen.bind(c, vars.fresh());
    std::vector<Atom> out;
    for (const Atom& a : chosen) {
      std::vector<Term> args;
      for (Term t : a.args) args.push_back(t.is_constant() && gen.lookup(t) ? *gen.lookup(t) : t);
      out.emplace_back(a.pred, std::move(args));
    }
    q.insert(safe_copy(AtomSet(std::move(out)), vars).atoms);
  }
  return q;
}

// Specialization of some CQs of q: merges, constant bindings and extra facts.
UCQ specialize(const UCQ& q, const FactBase& extra, Rng& rng, VarSource& vars) {
  UCQ out;
  for (const CQ& c : q) {
    if (!out.empty() && coin(rng, 0.4)) continue;
    const auto cv = c.vars();
    const std::vector<Term> vs(cv.begin(), cv.end());
    const auto cs = extra.constants();
    const std::vector<Term> consts(cs.begin(), cs.end());
    Substitution s;
    for (Term v : vs) {
      if (coin(rng, 0.25)) s.bind(v, choose(rng, vs));
      else if (!consts.empty() && coin(rng, 0.2)) s.bind(v, choose(rng, consts));
    }
    // Bind in one pass: images are original terms, so chains do not arise.
    CQ sc = c.apply(s);
    if (!extra.empty() && coin(rng, 0.5)) sc.insert(extra[pick(rng, 0, extra.size() - 1)]);
    out.insert(safe_copy(sc, vars).atoms);
  }
  return out;
}

Trigger random_trigger(const FactBase& f, const Instance& inst, std::size_t r, Rng& rng) {
  auto ts = find_triggers(f, inst.rules[r], r);
  if (ts.empty()) throw Regenerate{};
  return ts[pick(rng, 0, ts.size() - 1)];
}

CheckResult attempt(const std::string& name, const Instance& inst, Rng& rng, std::size_t depth,
                    VarSource& vars) {
  auto verdict = [&](bool ok, const std::string& extra) {
    return CheckResult{ok ? Outcome::Pass : Outcome::Fail, ok ? std::string() : describe(inst) + "; " + extra};
  };

  if (name == "backward_forward") {
    auto [r, mu] = random_unifier(inst, inst.query, rng, vars);
    const CQ beta = apply_beta(mu, inst.rules[r]);
    Substitution freeze;
    std::size_t k = 0;
    for (Term v : beta.vars()) freeze.bind(v, Term::constant("k" + std::to_string(k++)));
    const FactBase f = inst.facts.united(beta.apply(freeze));
    return verdict(check_backward_forward(f, inst.query, inst.rules[r], mu, vars),
                   "rule " + std::to_string(r) + ", beta " + to_string(beta));
  }
  if (name == "forward_backward" || name == "beta_after_alpha") {
    const std::size_t r = pick_rule(inst, rng);
    const FactBase f = with_body_image(inst, inst.rules[r], rng, 0.0, vars);
    const Trigger t = random_trigger(f, inst, r, rng);
    if (name == "beta_after_alpha")
      return verdict(check_beta_after_alpha(f, t, vars), "facts " + to_string(f) + ", rule " + std::to_string(r));
    const UCQ q = mine_query(apply_trigger(f, t, vars), f, rng, vars);
    return verdict(check_forward_backward(f, q, t, vars),
                   "facts " + to_string(f) + ", rule " + std::to_string(r) + ", mined query " + describe(q));
  }
  if (name == "alpha_preservation") {
    const std::size_t r = pick_rule(inst, rng);
    const FactBase f2 = with_body_image(inst, inst.rules[r], rng, 0.4, vars);
    const Trigger t2 = random_trigger(f2, inst, r, rng);
    const auto cs = fact_constants(inst);
    Substitution s;
    for (Term v : f2.vars())
      if (coin(rng, 0.5)) s.bind(v, choose(rng, cs));
    const FactBase f1 = f2.apply(s).united(inst.facts);
    return verdict(check_alpha_preservation(f1, f2, t2, vars),
                   "f1 " + to_string(f1) + ", f2 " + to_string(f2) + ", rule " + std::to_string(r));
  }
  if (name == "beta_preservation") {
    const UCQ q2 = specialize(inst.query, inst.facts, rng, vars);
    auto [r, mu2] = random_unifier(inst, q2, rng, vars);
    return verdict(check_beta_preservation(inst.query, q2, inst.rules[r], mu2, vars),
                   "q2 " + describe(q2) + ", rule " + std::to_string(r));
  }
  if (name == "alpha_after_beta") {
    auto [r, mu] = random_unifier(inst, inst.query, rng, vars);
    return verdict(check_alpha_after_beta(inst.query, inst.rules[r], mu, vars),
                   "rule " + std::to_string(r) + ", beta " + to_string(apply_beta(mu, inst.rules[r])));
  }
  if (name == "cross_check") {
    FactBase f = inst.facts;
    for (const auto& rule : inst.rules) f = f.united(with_body_image(inst, rule, rng, 0.0, vars));
    const CrossCheckReport rep = cross_check(f, inst.rules, inst.query, depth, vars);
    if (rep.inconclusive) throw Regenerate{};
    return verdict(rep.soundness_violations == 0 && rep.completeness_violations == 0,
                   "facts " + to_string(f) + ", " + rep.detail);
  }
  if (name == "algorithm_invariant") {
    return verdict(check_algorithm_invariant(inst.query, inst.rules, depth, vars), "iterations " + std::to_string(depth));
  }
  throw std::invalid_argument("unknown check " + name);
}

}  // namespace

CheckResult run_check(const std::string& name, const GenConfig& gen, std::size_t depth) {
  const auto& names = suite_check_names();
  const auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) throw std::invalid_argument("unknown check " + name);
  const std::size_t id = static_cast<std::size_t>(it - names.begin());
  for (std::size_t a = 0; a < kAttempts; ++a) {
    GenConfig g = gen;
    g.seed = derive_seed(gen.seed, id, a);
    VarSource vars;
    Rng rng(g.seed ^ 0x5DEECE66DULL);
    try {
      const Instance inst = gen_instance(g, vars);
      CheckResult res = attempt(name, inst, rng, depth, vars);
      if (res.outcome == Outcome::Fail) res.detail = "derived seed " + std::to_string(g.seed) + "; " + res.detail;
      return res;
    } catch (const Regenerate&) {
    } catch (const CapExceeded&) {
    }
  }
  return CheckResult{Outcome::Skipped, "no input met the precondition within the attempt limit"};
}

SuiteReport run_suite(const SuiteConfig& cfg) {
  cfg.gen.validate();
  std::vector<std::string> checks = cfg.checks;
  if (checks.empty()) {
    checks = suite_check_names();
    checks.pop_back();
  }
  const auto& names = suite_check_names();
  for (const auto& c : checks)
    if (std::find(names.begin(), names.end(), c) == names.end()) throw std::invalid_argument("unknown check " + c);
  std::vector<std::vector<CheckResult>> results(cfg.count, std::vector<CheckResult>(checks.size()));
  const long n = static_cast<long>(cfg.count);
#pragma omp parallel for schedule(dynamic) if (cfg.parallel)
  for (long i = 0; i < n; ++i) {
    GenConfig g = cfg.gen;
    g.seed = cfg.gen.seed + static_cast<std::uint64_t>(i);
    for (std::size_t c = 0; c < checks.size(); ++c) {
      // Exceptions must not leave the parallel region.
      try {
        results[i][c] = run_check(checks[c], g, cfg.depth);
      } catch (const std::exception& e) {
        results[i][c] = CheckResult{Outcome::Fail, std::string("exception: ") + e.what()};
      }
    }
  }

  SuiteReport rep;
  rep.instances = cfg.count;
  for (const auto& c : checks) rep.counts[c];
  for (std::size_t i = 0; i < cfg.count; ++i)
    for (std::size_t c = 0; c < checks.size(); ++c) {
      CheckCounts& counts = rep.counts[checks[c]];
      switch (results[i][c].outcome) {
        case Outcome::Pass: ++counts.passed; break;
        case Outcome::Fail:
          ++counts.failed;
          rep.failures.push_back({checks[c], cfg.gen.seed + i, results[i][c].detail});
          break;
        case Outcome::Skipped:
          ++counts.skipped;
          rep.failures.push_back({checks[c], cfg.gen.seed + i, results[i][c].detail});
          break;
      }
    }
  return rep;
}

}  // namespace disjrw
