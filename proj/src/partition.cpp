#include "disjrw/partition.hpp"

#include <algorithm>
#include <numeric>

namespace disjrw {

TermPartition::TermPartition(const std::set<Term>& universe)
    : terms_(universe.begin(), universe.end()), parent_(terms_.size()) {
  std::iota(parent_.begin(), parent_.end(), std::size_t{0});
}

TermPartition TermPartition::from_classes(const std::vector<std::vector<Term>>& classes) {
  std::set<Term> universe;
  for (const auto& c : classes) universe.insert(c.begin(), c.end());
  TermPartition p(universe);
  for (const auto& c : classes)
    for (std::size_t i = 1; i < c.size(); ++i) p.merge(c[0], c[i]);
  return p;
}

std::size_t TermPartition::index_of(Term t) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), t);
  if (it == terms_.end() || *it != t) throw std::out_of_range("term not in partition universe");
  return static_cast<std::size_t>(it - terms_.begin());
}

std::size_t TermPartition::find(std::size_t i) const {
  // No path compression: const queries stay free of writes.
  while (parent_[i] != i) i = parent_[i];
  return i;
}

void TermPartition::add(Term t) {
  if (contains(t)) return;
  // Inserting shifts indices; rebuild through explicit classes.
  auto cls = classes();
  cls.push_back({t});
  *this = from_classes(cls);
}

void TermPartition::merge(Term a, Term b) {
  add(a);
  add(b);
  std::size_t ra = find(index_of(a)), rb = find(index_of(b));
  if (ra == rb) return;
  if (rb < ra) std::swap(ra, rb);
  parent_[rb] = ra;
}

bool TermPartition::same_class(Term a, Term b) const {
  if (!contains(a) || !contains(b)) return a == b;
  return find(index_of(a)) == find(index_of(b));
}

bool TermPartition::contains(Term t) const {
  return std::binary_search(terms_.begin(), terms_.end(), t);
}

std::vector<std::vector<Term>> TermPartition::classes() const {
  std::vector<std::vector<Term>> by_root(terms_.size());
  for (std::size_t i = 0; i < terms_.size(); ++i) by_root[find(i)].push_back(terms_[i]);
  std::vector<std::vector<Term>> out;
  for (auto& c : by_root)
    if (!c.empty()) out.push_back(std::move(c));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Term> TermPartition::class_of(Term t) const {
  if (!contains(t)) return {t};
  std::size_t r = find(index_of(t));
  std::vector<Term> out;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (find(i) == r) out.push_back(terms_[i]);
  return out;
}

bool TermPartition::is_admissible() const {
  for (const auto& c : classes())
    if (std::count_if(c.begin(), c.end(), [](Term t) { return t.is_constant(); }) > 1) return false;
  return true;
}

Substitution TermPartition::associated_substitution(const std::function<bool(Term)>& prefer) const {
  Substitution s;
  for (const auto& c : classes()) {
    std::vector<Term> consts;
    for (Term t : c)
      if (t.is_constant()) consts.push_back(t);
    if (consts.size() > 1) throw NonAdmissible("partition class holds two constants");
    Term rep;
    if (!consts.empty()) {
      rep = consts.front();
    } else {
      // Classes are sorted, so the first match is the smallest id.
      auto it = prefer ? std::find_if(c.begin(), c.end(), prefer) : c.end();
      rep = it != c.end() ? *it : c.front();
    }
    for (Term t : c)
      if (t.is_variable() && t != rep) s.bind(t, rep);
  }
  return s;
}

TermPartition join_partitions(std::span<const TermPartition> parts) {
  std::vector<std::vector<Term>> all;
  for (const auto& p : parts) {
    auto cls = p.classes();
    all.insert(all.end(), cls.begin(), cls.end());
  }
  return TermPartition::from_classes(all);
}

bool is_admissible(const TermPartition& p) { return p.is_admissible(); }

Substitution associated_substitution(const TermPartition& p,
                                     const std::function<bool(Term)>& prefer) {
  return p.associated_substitution(prefer);
}

std::string to_string(const TermPartition& p) {
  std::string out = "{";
  bool first_class = true;
  for (const auto& c : p.classes()) {
    if (!first_class) out += ", ";
    first_class = false;
    out += "{";
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i) out += ",";
      out += c[i].debug_string();
    }
    out += "}";
  }
  return out + "}";
}

}  // namespace disjrw
