#include "disjrw/atom_set.hpp"

#include <algorithm>
#include <tuple>
#include <unordered_map>

namespace disjrw {

void Substitution::bind(Term var, Term image) { map_[var] = image; }

std::optional<Term> Substitution::lookup(Term var) const {
  auto it = map_.find(var);
  if (it == map_.end()) return std::nullopt;
  return it->second;
}

Term Substitution::apply(Term t) const {
  if (t.is_constant()) return t;
  auto it = map_.find(t);
  return it == map_.end() ? t : it->second;
}

Atom Substitution::apply(const Atom& a) const {
  Atom out = a;
  for (Term& t : out.args) t = apply(t);
  return out;
}

Substitution Substitution::after(const Substitution& inner) const {
  Substitution out;
  for (const auto& [v, t] : inner.map_) out.map_[v] = apply(t);
  for (const auto& [v, t] : map_) out.map_.try_emplace(v, t);
  return out;
}

std::string to_string(const Substitution& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& [v, t] : s.bindings()) {
    if (!first) out += ", ";
    first = false;
    out += v.debug_string() + "->" + t.debug_string();
  }
  return out + "}";
}

AtomSet::AtomSet(std::initializer_list<Atom> atoms) : AtomSet(std::vector<Atom>(atoms)) {}

AtomSet::AtomSet(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
  std::sort(atoms_.begin(), atoms_.end());
  atoms_.erase(std::unique(atoms_.begin(), atoms_.end()), atoms_.end());
}

bool AtomSet::contains(const Atom& a) const {
  return std::binary_search(atoms_.begin(), atoms_.end(), a);
}

bool AtomSet::includes(const AtomSet& other) const {
  return std::includes(atoms_.begin(), atoms_.end(), other.atoms_.begin(), other.atoms_.end());
}

bool AtomSet::insert(const Atom& a) {
  auto it = std::lower_bound(atoms_.begin(), atoms_.end(), a);
  if (it != atoms_.end() && *it == a) return false;
  atoms_.insert(it, a);
  return true;
}

void AtomSet::insert_all(const AtomSet& other) { *this = united(other); }

AtomSet AtomSet::apply(const Substitution& s) const {
  std::vector<Atom> out;
  out.reserve(atoms_.size());
  for (const Atom& a : atoms_) out.push_back(s.apply(a));
  return AtomSet(std::move(out));
}

AtomSet AtomSet::minus(const AtomSet& other) const {
  AtomSet out;
  std::set_difference(atoms_.begin(), atoms_.end(), other.atoms_.begin(), other.atoms_.end(),
                      std::back_inserter(out.atoms_));
  return out;
}

AtomSet AtomSet::united(const AtomSet& other) const {
  AtomSet out;
  std::set_union(atoms_.begin(), atoms_.end(), other.atoms_.begin(), other.atoms_.end(),
                 std::back_inserter(out.atoms_));
  return out;
}

std::set<Term> AtomSet::vars() const {
  std::set<Term> out;
  for (const Atom& a : atoms_)
    for (Term t : a.args)
      if (t.is_variable()) out.insert(t);
  return out;
}

std::set<Term> AtomSet::constants() const {
  std::set<Term> out;
  for (const Atom& a : atoms_)
    for (Term t : a.args)
      if (t.is_constant()) out.insert(t);
  return out;
}

std::set<Term> AtomSet::terms() const {
  std::set<Term> out;
  for (const Atom& a : atoms_) out.insert(a.args.begin(), a.args.end());
  return out;
}

std::set<Predicate> AtomSet::predicates() const {
  std::set<Predicate> out;
  for (const Atom& a : atoms_) out.insert(a.pred);
  return out;
}

bool AtomSet::is_ground() const {
  return std::all_of(atoms_.begin(), atoms_.end(), [](const Atom& a) { return a.is_ground(); });
}

std::string to_string(const AtomSet& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ", ";
    out += to_string(s[i]);
  }
  return out + "}";
}

SafeCopy safe_copy(const AtomSet& s, VarSource& vars) {
  SafeCopy out;
  for (Term v : s.vars()) out.renaming.bind(v, vars.fresh());
  out.atoms = s.apply(out.renaming);
  return out;
}

namespace {

// Renaming-invariant sort key: predicate name, then per argument either the
// constant name or the position of the variable's first occurrence inside
// the atom.
struct AtomKey {
  std::string pred;
  std::vector<std::string> pattern;
  const Atom* atom;

  bool operator<(const AtomKey& o) const {
    return std::tie(pred, pattern) < std::tie(o.pred, o.pattern);
  }
};

std::vector<const Atom*> canonical_atom_order(const AtomSet& s) {
  std::vector<AtomKey> keys;
  keys.reserve(s.size());
  for (const Atom& a : s) {
    AtomKey k{a.pred.name_str(), {}, &a};
    for (std::size_t i = 0; i < a.args.size(); ++i) {
      Term t = a.args[i];
      if (t.is_constant()) {
        k.pattern.push_back("c" + symbol_name(t.symbol()));
      } else {
        std::size_t first = i;
        for (std::size_t j = 0; j < i; ++j)
          if (a.args[j] == t) {
            first = j;
            break;
          }
        k.pattern.push_back("v" + std::to_string(first));
      }
    }
    keys.push_back(std::move(k));
  }
  std::stable_sort(keys.begin(), keys.end());
  std::vector<const Atom*> out;
  out.reserve(keys.size());
  for (const auto& k : keys) out.push_back(k.atom);
  return out;
}

template <class Fn>
Substitution first_occurrence_renaming(const AtomSet& s, Fn&& next) {
  Substitution ren;
  for (const Atom* a : canonical_atom_order(s))
    for (Term t : a->args)
      if (t.is_variable() && !ren.lookup(t)) ren.bind(t, next());
  return ren;
}

}  // namespace

AtomSet canonical_rename(const AtomSet& s, VarSource& vars) {
  return s.apply(first_occurrence_renaming(s, [&] { return vars.fresh(); }));
}

std::string canonical_string(const CQ& q) {
  std::unordered_map<Term, std::size_t> index;
  for (const Atom* a : canonical_atom_order(q))
    for (Term t : a->args)
      if (t.is_variable()) index.try_emplace(t, index.size());

  std::vector<std::string> parts;
  parts.reserve(q.size());
  for (const Atom& a : q) {
    std::string s = a.pred.name_str();
    s += '(';
    for (std::size_t i = 0; i < a.args.size(); ++i) {
      if (i) s += ',';
      Term t = a.args[i];
      s += t.is_constant() ? symbol_name(t.symbol()) : "V" + std::to_string(index.at(t));
    }
    s += ')';
    parts.push_back(std::move(s));
  }
  std::sort(parts.begin(), parts.end());
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ", ";
    out += parts[i];
  }
  return out;
}

UCQ::UCQ(std::initializer_list<CQ> cqs) : UCQ(std::vector<CQ>(cqs)) {}

UCQ::UCQ(std::vector<CQ> cqs) : cqs_(std::move(cqs)) {
  std::sort(cqs_.begin(), cqs_.end());
  cqs_.erase(std::unique(cqs_.begin(), cqs_.end()), cqs_.end());
}

bool UCQ::contains(const CQ& q) const { return std::binary_search(cqs_.begin(), cqs_.end(), q); }

bool UCQ::insert(const CQ& q) {
  auto it = std::lower_bound(cqs_.begin(), cqs_.end(), q);
  if (it != cqs_.end() && *it == q) return false;
  cqs_.insert(it, q);
  return true;
}

void UCQ::insert_all(const UCQ& other) {
  for (const CQ& q : other) insert(q);
}

std::vector<CQ> UCQ::canonical_order() const {
  std::vector<std::pair<std::string, const CQ*>> keyed;
  keyed.reserve(cqs_.size());
  for (const CQ& q : cqs_) keyed.emplace_back(canonical_string(q), &q);
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return *a.second < *b.second;
  });
  std::vector<CQ> out;
  out.reserve(keyed.size());
  for (const auto& [k, q] : keyed) out.push_back(*q);
  return out;
}

}  // namespace disjrw
