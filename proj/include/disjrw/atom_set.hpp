#pragma once

#include <initializer_list>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "disjrw/term.hpp"

namespace disjrw {

/// Finite map from variables to terms.
///
/// Built in solved form: no variable in the domain occurs in an image, so
/// applying it twice is the same as applying it once. `compose` keeps that
/// property.
class Substitution {
 public:
  Substitution() = default;

  /// Binds `var` to `image`. Overwrites any previous binding.
  void bind(Term var, Term image);

  std::optional<Term> lookup(Term var) const;
  Term apply(Term t) const;
  Atom apply(const Atom& a) const;

  bool empty() const { return map_.empty(); }
  std::size_t size() const { return map_.size(); }
  const std::map<Term, Term>& bindings() const { return map_; }

  /// this ∘ inner: apply `inner` first, then this.
  Substitution after(const Substitution& inner) const;

  bool operator==(const Substitution&) const = default;

 private:
  std::map<Term, Term> map_;
};

std::string to_string(const Substitution& s);

/// Deduplicated, sorted set of atoms. Used both for fact bases and for
/// conjunctive queries, which share the same logical form.
class AtomSet {
 public:
  AtomSet() = default;
  AtomSet(std::initializer_list<Atom> atoms);
  explicit AtomSet(std::vector<Atom> atoms);

  using const_iterator = std::vector<Atom>::const_iterator;
  const_iterator begin() const { return atoms_.begin(); }
  const_iterator end() const { return atoms_.end(); }
  std::size_t size() const { return atoms_.size(); }
  bool empty() const { return atoms_.empty(); }
  const Atom& operator[](std::size_t i) const { return atoms_[i]; }
  const std::vector<Atom>& atoms() const { return atoms_; }

  bool contains(const Atom& a) const;
  bool includes(const AtomSet& other) const;

  /// Returns true when the atom was not yet present.
  bool insert(const Atom& a);
  void insert_all(const AtomSet& other);

  AtomSet apply(const Substitution& s) const;
  AtomSet minus(const AtomSet& other) const;
  AtomSet united(const AtomSet& other) const;

  std::set<Term> vars() const;
  std::set<Term> constants() const;
  std::set<Term> terms() const;
  std::set<Predicate> predicates() const;
  bool is_ground() const;

  auto operator<=>(const AtomSet&) const = default;
  bool operator==(const AtomSet&) const = default;

 private:
  std::vector<Atom> atoms_;
};

std::string to_string(const AtomSet& s);

/// A Boolean conjunctive query: every variable is existentially quantified.
using CQ = AtomSet;
using FactBase = AtomSet;

/// Bijective renaming of the variables of `s` with fresh ones.
struct SafeCopy {
  AtomSet atoms;
  Substitution renaming;
};

SafeCopy safe_copy(const AtomSet& s, VarSource& vars = default_vars());

/// Renames variables by first occurrence in canonical order, using fresh ids.
AtomSet canonical_rename(const AtomSet& s, VarSource& vars = default_vars());

/// Stable text for ordering and hashing. Isomorphic queries coming out of the
/// library's own pipelines get the same text; equal text always implies
/// isomorphism. Not a decision procedure for isomorphism.
std::string canonical_string(const CQ& q);

/// Union of conjunctive queries with set semantics over exact atom-set
/// equality. Elements are kept sorted.
class UCQ {
 public:
  UCQ() = default;
  UCQ(std::initializer_list<CQ> cqs);
  explicit UCQ(std::vector<CQ> cqs);

  using const_iterator = std::vector<CQ>::const_iterator;
  const_iterator begin() const { return cqs_.begin(); }
  const_iterator end() const { return cqs_.end(); }
  std::size_t size() const { return cqs_.size(); }
  bool empty() const { return cqs_.empty(); }
  const CQ& operator[](std::size_t i) const { return cqs_[i]; }
  const std::vector<CQ>& cqs() const { return cqs_; }

  bool contains(const CQ& q) const;
  bool insert(const CQ& q);
  void insert_all(const UCQ& other);

  /// Elements sorted by canonical_string (ties by atom order).
  std::vector<CQ> canonical_order() const;

  bool operator==(const UCQ&) const = default;

 private:
  std::vector<CQ> cqs_;
};

}  // namespace disjrw
