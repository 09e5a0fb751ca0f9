#pragma once

#include <functional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "disjrw/atom_set.hpp"

namespace disjrw {

struct NonAdmissible : std::logic_error {
  using std::logic_error::logic_error;
};

/// Partition of a finite set of terms, kept as a union-find over the
/// universe. Classes are reported in a canonical order (each class sorted,
/// classes sorted by their smallest term).
class TermPartition {
 public:
  TermPartition() = default;
  /// Each term in its own class.
  explicit TermPartition(const std::set<Term>& universe);
  /// Builds a partition from explicit classes. Terms repeated across classes
  /// end up merged.
  static TermPartition from_classes(const std::vector<std::vector<Term>>& classes);

  void add(Term t);
  void merge(Term a, Term b);
  bool same_class(Term a, Term b) const;
  bool contains(Term t) const;

  std::vector<std::vector<Term>> classes() const;
  std::vector<Term> universe() const { return terms_; }
  std::vector<Term> class_of(Term t) const;

  /// No class holds two distinct constants.
  bool is_admissible() const;

  /// Maps every term to its class representative: the constant of the class
  /// if there is one, otherwise a preferred variable (see `prefer`), then the
  /// smallest id. Throws NonAdmissible.
  Substitution associated_substitution(const std::function<bool(Term)>& prefer = {}) const;

  bool operator==(const TermPartition& o) const { return classes() == o.classes(); }

 private:
  std::size_t index_of(Term t) const;
  std::size_t find(std::size_t i) const;

  std::vector<Term> terms_;             // sorted universe
  std::vector<std::size_t> parent_;
};

/// Union of the partitions, merging overlapping classes until fixpoint.
TermPartition join_partitions(std::span<const TermPartition> parts);

bool is_admissible(const TermPartition& p);
Substitution associated_substitution(const TermPartition& p,
                                     const std::function<bool(Term)>& prefer = {});

std::string to_string(const TermPartition& p);

}  // namespace disjrw
