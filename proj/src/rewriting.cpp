#include "disjrw/rewriting.hpp"

#include <algorithm>
#include <map>
#include <tuple>
#include <unordered_set>

#include "disjrw/cover.hpp"

namespace disjrw {

namespace {

// Small union-find over terms, copied on every branch of the search.
class Classes {
 public:
  int id(Term t) {
    for (std::size_t i = 0; i < terms_.size(); ++i)
      if (terms_[i] == t) return static_cast<int>(i);
    terms_.push_back(t);
    parent_.push_back(static_cast<int>(parent_.size()));
    return parent_.back();
  }
  int find(int i) const {
    while (parent_[i] != i) i = parent_[i];
    return i;
  }
  void unite(Term a, Term b) {
    int ra = find(id(a)), rb = find(id(b));
    if (ra != rb) parent_[std::max(ra, rb)] = std::min(ra, rb);
  }
  const std::vector<Term>& terms() const { return terms_; }
  int root_of(Term t) const {
    for (std::size_t i = 0; i < terms_.size(); ++i)
      if (terms_[i] == t) return find(static_cast<int>(i));
    return -1;
  }

 private:
  std::vector<Term> terms_;
  std::vector<int> parent_;
};

struct UnifierSearch {
  const CQ& q;
  const AtomSet& head;
  const std::set<Term>& exist;
  const std::set<Term> rule_vars;
  const UnifierOptions& opts;

  std::vector<std::vector<std::size_t>> candidates;  // per query atom, head atom indices
  std::vector<int> choice;                           // -1 = skipped
  std::set<Term> skipped_vars;
  std::set<std::tuple<std::vector<int>, std::vector<std::vector<Term>>>> seen;
  std::vector<PieceUnifier> out;
  std::size_t disjunct;

  UnifierSearch(const CQ& q_, const DisjunctiveRule& rule, std::size_t i, const UnifierOptions& o)
      : q(q_), head(rule.disjunct(i)), exist(rule.existentials(i)), rule_vars(rule.vars()), opts(o),
        disjunct(i) {
    for (const Atom& a : q) {
      std::vector<std::size_t> c;
      for (std::size_t h = 0; h < head.size(); ++h)
        if (head[h].pred == a.pred) c.push_back(h);
      candidates.push_back(std::move(c));
    }
    choice.assign(q.size(), -1);
  }

  // Every class: at most one constant; a class with an existential holds
  // nothing else but query variables that do not occur in skipped atoms.
  bool classes_ok(const Classes& cls) const {
    std::map<int, std::tuple<int, int, int>> stats;  // consts, existentials, blockers
    for (Term t : cls.terms()) {
      auto& [c, e, b] = stats[cls.root_of(t)];
      if (t.is_constant()) {
        ++c;
      } else if (exist.count(t)) {
        ++e;
      } else if (rule_vars.count(t) || skipped_vars.count(t)) {
        ++b;
      }
    }
    for (const auto& [root, s] : stats) {
      auto [c, e, b] = s;
      if (c > 1) return false;
      if (e > 0 && (e > 1 || c > 0 || b > 0)) return false;
    }
    return true;
  }

  void dfs(std::size_t k, const Classes& cls) {
    if (k == q.size()) {
      emit(cls);
      return;
    }
    const Atom& a = q[k];
    // Skip atom k.
    {
      std::vector<Term> added;
      for (Term t : a.args)
        if (t.is_variable() && skipped_vars.insert(t).second) added.push_back(t);
      choice[k] = -1;
      if (classes_ok(cls)) dfs(k + 1, cls);
      for (Term t : added) skipped_vars.erase(t);
    }
    // Pair atom k with a head atom.
    for (std::size_t h : candidates[k]) {
      Classes next = cls;
      for (std::size_t j = 0; j < a.args.size(); ++j) next.unite(a.args[j], head[h].args[j]);
      choice[k] = static_cast<int>(h);
      if (classes_ok(next)) dfs(k + 1, next);
    }
    choice[k] = -1;
  }

  bool single_piece(const AtomSet& q_sub, const TermPartition& p) const {
    if (q_sub.size() <= 1) return true;
    auto existential_class = [&](Term v) {
      for (Term t : p.class_of(v))
        if (exist.count(t)) return true;
      return false;
    };
    std::vector<bool> reached(q_sub.size(), false);
    std::vector<std::size_t> stack{0};
    reached[0] = true;
    while (!stack.empty()) {
      std::size_t i = stack.back();
      stack.pop_back();
      for (std::size_t j = 0; j < q_sub.size(); ++j) {
        if (reached[j]) continue;
        bool linked = false;
        for (Term t : q_sub[i].args)
          if (t.is_variable() && existential_class(t) &&
              std::find(q_sub[j].args.begin(), q_sub[j].args.end(), t) != q_sub[j].args.end())
            linked = true;
        if (linked) {
          reached[j] = true;
          stack.push_back(j);
        }
      }
    }
    return std::all_of(reached.begin(), reached.end(), [](bool b) { return b; });
  }

  void emit(const Classes& cls) {
    std::vector<Atom> qs, hs;
    for (std::size_t k = 0; k < q.size(); ++k)
      if (choice[k] >= 0) {
        qs.push_back(q[k]);
        hs.push_back(head[static_cast<std::size_t>(choice[k])]);
      }
    if (qs.empty()) return;
    std::map<int, std::vector<Term>> by_root;
    for (Term t : cls.terms()) by_root[cls.find(cls.root_of(t))].push_back(t);
    std::vector<std::vector<Term>> classes;
    for (auto& [r, c] : by_root) classes.push_back(std::move(c));
    PieceUnifier mu{q, AtomSet(std::move(qs)), disjunct, AtomSet(std::move(hs)),
                    TermPartition::from_classes(classes)};
    if (opts.single_piece && !single_piece(mu.q_sub, mu.partition)) return;

    std::vector<int> mask;
    for (const Atom& a : q) mask.push_back(mu.q_sub.contains(a) ? 1 : 0);
    for (const Atom& a : head) mask.push_back(mu.h_sub.contains(a) ? 1 : 0);
    if (!seen.emplace(mask, mu.partition.classes()).second) return;
    out.push_back(std::move(mu));
  }
};

bool is_rule_var(const std::set<Term>& rule_vars, Term t) { return rule_vars.count(t) > 0; }

}  // namespace

std::vector<PieceUnifier> enumerate_piece_unifiers(const CQ& q, const DisjunctiveRule& rule,
                                                   std::size_t disjunct, const UnifierOptions& opts) {
  UnifierSearch s(q, rule, disjunct, opts);
  s.dfs(0, Classes{});
  return std::move(s.out);
}

bool is_valid_piece_unifier(const PieceUnifier& mu, const DisjunctiveRule& rule) {
  if (mu.disjunct >= rule.disjunct_count() || mu.q_sub.empty()) return false;
  const AtomSet& h = rule.disjunct(mu.disjunct);
  if (!mu.query.includes(mu.q_sub) || !h.includes(mu.h_sub)) return false;
  if (!mu.partition.is_admissible()) return false;

  std::set<Term> universe = mu.q_sub.terms();
  auto ht = mu.h_sub.terms();
  universe.insert(ht.begin(), ht.end());
  auto pu = mu.partition.universe();
  if (std::set<Term>(pu.begin(), pu.end()) != universe) return false;

  Substitution u = mu.partition.associated_substitution();
  if (mu.q_sub.apply(u) != mu.h_sub.apply(u)) return false;

  const auto& exist = rule.existentials(mu.disjunct);
  const auto q_vars = mu.q_sub.vars();
  const auto rest_vars = mu.query.minus(mu.q_sub).vars();
  for (const auto& c : mu.partition.classes()) {
    bool has_exist = std::any_of(c.begin(), c.end(), [&](Term t) { return exist.count(t) > 0; });
    if (!has_exist) continue;
    std::size_t n_exist = 0;
    for (Term t : c) {
      if (exist.count(t)) {
        ++n_exist;
        continue;
      }
      if (!t.is_variable() || !q_vars.count(t) || rest_vars.count(t)) return false;
    }
    if (n_exist > 1) return false;
  }
  return true;
}

void enumerate_disjunctive_piece_unifiers(
    const UCQ& q, const DisjunctiveRule& rule, const std::optional<std::set<std::size_t>>& new_filter,
    const std::function<bool(const DisjunctivePieceUnifier&)>& visit, const UnifierOptions& opts,
    VarSource& vars) {
  const std::size_t n = rule.disjunct_count();
  struct Entry {
    std::size_t source;
    PieceUnifier mu;
  };
  // all[i]: candidate parts for disjunct i; fresh[i]: those from filtered CQs.
  std::vector<std::vector<const Entry*>> all(n), fresh(n), stale(n);
  std::vector<std::vector<Entry>> storage(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < q.size(); ++c) {
      SafeCopy copy = safe_copy(q[c], vars);
      for (auto& mu : enumerate_piece_unifiers(copy.atoms, rule, i, opts))
        if (!opts.part_filter || opts.part_filter(mu)) storage[i].push_back(Entry{c, std::move(mu)});
    }
    for (const Entry& e : storage[i]) {
      all[i].push_back(&e);
      bool is_new = !new_filter || new_filter->count(e.source);
      (is_new ? fresh[i] : stale[i]).push_back(&e);
    }
  }

  std::vector<const Entry*> chosen(n);
  bool stop = false;

  // Parts before `first_new` come from stale CQs, part `first_new` from a
  // fresh one, later parts from any CQ: each combination is produced once.
  std::function<void(std::size_t, std::size_t, const TermPartition&)> rec =
      [&](std::size_t i, std::size_t first_new, const TermPartition& acc) {
        if (stop) return;
        if (i == n) {
          DisjunctivePieceUnifier d;
          for (const Entry* e : chosen) {
            d.parts.push_back(e->mu);
            d.sources.push_back(e->source);
          }
          d.joined = acc;
          if (!visit(d)) stop = true;
          return;
        }
        const auto& pool = !new_filter ? all[i] : i < first_new ? stale[i] : i == first_new ? fresh[i] : all[i];
        for (const Entry* e : pool) {
          const TermPartition pair[2] = {acc, e->mu.partition};
          TermPartition next = join_partitions(pair);
          if (!next.is_admissible()) continue;
          chosen[i] = e;
          rec(i + 1, first_new, next);
          if (stop) return;
        }
      };

  if (!new_filter) {
    rec(0, 0, TermPartition{});
  } else {
    for (std::size_t k = 0; k < n && !stop; ++k) rec(0, k, TermPartition{});
  }
}

CQ apply_beta(const DisjunctivePieceUnifier& mu, const DisjunctiveRule& rule) {
  const auto rule_vars = rule.vars();
  Substitution u = mu.joined.associated_substitution([&](Term t) { return is_rule_var(rule_vars, t); });
  CQ out = rule.body().apply(u);
  for (const PieceUnifier& p : mu.parts) out.insert_all(p.query.minus(p.q_sub).apply(u));
  return out;
}

namespace {

struct Generator {
  const RuleSet& rules;
  UnifierOptions opts;
  VarSource& vars;
  std::size_t max_atoms = SIZE_MAX;
  std::size_t max_generated = SIZE_MAX;
  std::function<CQ(const CQ&)> transform;

  std::size_t generated = 0;
  bool dropped = false;
  bool exhausted = false;

  UCQ run(const UCQ& q, const std::optional<std::set<std::size_t>>& filter,
          std::unordered_set<std::string>& seen) {
    UCQ out;
    for (const auto& rule : rules) {
      enumerate_disjunctive_piece_unifiers(
          q, rule, filter,
          [&](const DisjunctivePieceUnifier& mu) {
            CQ beta = apply_beta(mu, rule);
            if (transform) beta = transform(beta);
            ++generated;
            if (beta.size() > max_atoms) {
              dropped = true;
            } else {
              CQ renamed = canonical_rename(beta, vars);
              if (seen.insert(canonical_string(renamed)).second) out.insert(renamed);
            }
            if (generated >= max_generated) {
              exhausted = true;
              return false;
            }
            return true;
          },
          opts, vars);
      if (exhausted) break;
    }
    return out;
  }
};

}  // namespace

UCQ w_step(const UCQ& q, const RuleSet& rules, const UnifierOptions& opts, VarSource& vars) {
  std::unordered_set<std::string> seen;
  for (const CQ& c : q) seen.insert(canonical_string(c));
  Generator g{rules, opts, vars};
  UCQ out = q;
  out.insert_all(g.run(q, std::nullopt, seen));
  return out;
}

const char* to_string(RewritingOutcome::Status s) {
  return s == RewritingOutcome::Status::Complete ? "complete" : "budget_exhausted";
}

RewritingOutcome rewrite(const UCQ& q, const RuleSet& rules, const RewriteBudget& budget,
                         const RewriteOptions& opts, VarSource& vars) {
  using clock = std::chrono::steady_clock;
  const auto start = clock::now();
  RewritingOutcome out;
  Generator gen{rules, opts.unifiers, vars, budget.max_cq_atoms, budget.max_generated, opts.transform};

  UCQ q_new = cover(q);
  UCQ q_star = q_new;
  bool out_of_budget = false;
  bool filtered = false;

  while (!q_new.empty()) {
    if (out.iterations >= budget.max_iterations || clock::now() - start > budget.time_limit) {
      out_of_budget = true;
      break;
    }
    ++out.iterations;
    if (opts.final_part_filter && out.iterations == budget.max_iterations)
      gen.opts.part_filter = [&](const PieceUnifier& mu) {
        const bool keep = opts.final_part_filter(mu);
        if (!keep) filtered = true;
        return keep;
      };
    const UCQ q_prev = q_new;
    std::set<std::size_t> prev_index;
    for (std::size_t i = 0; i < q_star.size(); ++i)
      if (q_prev.contains(q_star[i])) prev_index.insert(i);

    std::unordered_set<std::string> seen;
    q_new = gen.run(q_star, prev_index, seen);
    q_new = cover(q_new);
    q_new = remove_more_specific(q_new, q_star);
    q_star = remove_more_specific(q_star, q_new);
    q_star.insert_all(q_new);

    if (opts.trace) out.trace.push_back(IterationTrace{q_new, q_star});
    if (gen.exhausted) {
      out_of_budget = true;
      break;
    }
  }

  out.result = std::move(q_star);
  out.generated_count = gen.generated;
  out.truncated = gen.dropped || gen.exhausted || filtered;
  out.status = out_of_budget || gen.dropped || filtered ? RewritingOutcome::Status::BudgetExhausted
                                            : RewritingOutcome::Status::Complete;
  out.elapsed = clock::now() - start;
  return out;
}

RewritingOutcome s_rewrite(const UCQ& q, const Mapping& m, const RewriteBudget& budget,
                           const RewriteOptions& opts, VarSource& vars) {
  for (const CQ& c : q)
    for (const Atom& a : c)
      if (m.source().count(a.pred))
        throw InvalidQuery("query uses source predicate " + a.pred.name_str());
  RewriteOptions concrete = opts;
  concrete.final_part_filter = [&m](const PieceUnifier& mu) { return m.on_source(mu.query.minus(mu.q_sub)); };
  RewritingOutcome out = rewrite(q, m.rules(), budget, concrete, vars);
  UCQ projected;
  for (const CQ& c : out.result)
    if (m.on_source(c)) projected.insert(c);
  out.result = std::move(projected);
  if (out.status == RewritingOutcome::Status::Complete || !out.result.empty()) return out;

  // Target parts evolve independently of source atoms, and dropping source
  // atoms only removes separating variables, so every concrete step has an
  // abstract counterpart. The empty CQ stands for any source CQ.
  RewriteOptions abstract = opts;
  abstract.trace = false;
  abstract.transform = [&m](const CQ& c) {
    std::vector<Atom> keep;
    for (const Atom& a : c)
      if (!m.source().count(a.pred)) keep.push_back(a);
    return CQ(std::move(keep));
  };
  const RewritingOutcome proof = rewrite(q, m.rules(), budget, abstract, vars);
  if (proof.status == RewritingOutcome::Status::Complete && !proof.result.contains(CQ{})) {
    out.status = RewritingOutcome::Status::Complete;
    out.truncated = false;
  }
  out.elapsed += proof.elapsed;
  return out;
}

}  // namespace disjrw
