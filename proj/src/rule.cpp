#include "disjrw/rule.hpp"

#include <algorithm>

namespace disjrw {

DisjunctiveRule::DisjunctiveRule(std::optional<std::string> name, AtomSet body,
                                 std::vector<AtomSet> head)
    : name_(std::move(name)), body_(std::move(body)), head_(std::move(head)) {
  if (body_.empty()) throw ModelError("rule with an empty body");
  if (head_.empty()) throw ModelError("rule with an empty head");
  for (const AtomSet& h : head_)
    if (h.empty()) throw ModelError("rule with an empty head disjunct");

  const std::set<Term> body_vars = body_.vars();
  for (const AtomSet& h : head_) {
    std::set<Term> fr, ex;
    for (Term v : h.vars()) (body_vars.count(v) ? fr : ex).insert(v);
    frontier_.insert(fr.begin(), fr.end());
    disjunct_frontier_.push_back(std::move(fr));
    existentials_.push_back(std::move(ex));
  }
}

std::set<Term> DisjunctiveRule::existentials() const {
  std::set<Term> out;
  for (const auto& e : existentials_) out.insert(e.begin(), e.end());
  return out;
}

std::set<Term> DisjunctiveRule::vars() const {
  std::set<Term> out = body_.vars();
  for (const AtomSet& h : head_) {
    auto hv = h.vars();
    out.insert(hv.begin(), hv.end());
  }
  return out;
}

bool DisjunctiveRule::is_datalog() const {
  return std::all_of(existentials_.begin(), existentials_.end(),
                     [](const auto& e) { return e.empty(); });
}

DisjunctiveRule DisjunctiveRule::renamed(VarSource& vars) const {
  Substitution s;
  for (Term v : this->vars()) s.bind(v, vars.fresh());
  return apply(s);
}

DisjunctiveRule DisjunctiveRule::apply(const Substitution& s) const {
  std::vector<AtomSet> head;
  head.reserve(head_.size());
  for (const AtomSet& h : head_) head.push_back(h.apply(s));
  return DisjunctiveRule(name_, body_.apply(s), std::move(head));
}

std::string DisjunctiveRule::label(std::size_t index) const {
  return name_ ? *name_ : "#" + std::to_string(index);
}

std::string to_string(const DisjunctiveRule& r) {
  auto list = [](const AtomSet& s) {
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (i) out += ", ";
      out += to_string(s[i]);
    }
    return out;
  };
  std::string out = r.name() ? *r.name() + ": " : "";
  out += list(r.body()) + " -> ";
  for (std::size_t i = 0; i < r.disjunct_count(); ++i) {
    if (i) out += " | ";
    out += list(r.disjunct(i));
  }
  return out;
}

RuleSet::RuleSet(std::vector<DisjunctiveRule> rules, VarSource& vars) {
  rules_.reserve(rules.size());
  for (auto& r : rules) add(std::move(r), vars);
}

void RuleSet::add(DisjunctiveRule r, VarSource& vars) {
  auto rv = r.vars();
  bool clash = std::any_of(rv.begin(), rv.end(), [&](Term v) { return used_vars_.count(v); });
  if (clash) {
    r = r.renamed(vars);
    rv = r.vars();
  }
  used_vars_.insert(rv.begin(), rv.end());
  rules_.push_back(std::move(r));
}

bool RuleSet::is_datalog() const {
  return std::all_of(rules_.begin(), rules_.end(), [](const auto& r) { return r.is_datalog(); });
}

bool RuleSet::is_conjunctive() const {
  return std::all_of(rules_.begin(), rules_.end(),
                     [](const auto& r) { return r.is_conjunctive(); });
}

const DisjunctiveRule* RuleSet::find(const std::string& name) const {
  for (const auto& r : rules_)
    if (r.name() && *r.name() == name) return &r;
  return nullptr;
}

Mapping::Mapping(RuleSet rules, std::set<Predicate> source, std::set<Predicate> target)
    : rules_(std::move(rules)), source_(std::move(source)), target_(std::move(target)) {
  for (const Predicate& p : source_)
    if (target_.count(p)) throw ModelError("predicate " + p.name_str() + " is both source and target");
  for (const auto& r : rules_) {
    for (const Atom& a : r.body())
      if (!source_.count(a.pred))
        throw ModelError("mapping rule body uses non-source predicate " + a.pred.name_str());
    for (const AtomSet& h : r.head())
      for (const Atom& a : h)
        if (!target_.count(a.pred))
          throw ModelError("mapping rule head uses non-target predicate " + a.pred.name_str());
  }
}

bool Mapping::on_source(const CQ& q) const {
  return std::all_of(q.begin(), q.end(), [&](const Atom& a) { return source_.count(a.pred) > 0; });
}

}  // namespace disjrw
