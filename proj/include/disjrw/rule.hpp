#pragma once

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "disjrw/atom_set.hpp"

namespace disjrw {

struct ModelError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// B -> H_1 | ... | H_n with n >= 1. Variables of a head disjunct that do not
/// occur in the body are existentially quantified in that disjunct.
class DisjunctiveRule {
 public:
  /// Throws ModelError on an empty body, an empty head or an empty disjunct.
  DisjunctiveRule(std::optional<std::string> name, AtomSet body, std::vector<AtomSet> head);

  const std::optional<std::string>& name() const { return name_; }
  const AtomSet& body() const { return body_; }
  const std::vector<AtomSet>& head() const { return head_; }
  const AtomSet& disjunct(std::size_t i) const { return head_[i]; }
  std::size_t disjunct_count() const { return head_.size(); }

  /// vars(body) ∩ vars(head).
  const std::set<Term>& frontier() const { return frontier_; }
  /// vars(H_i) ∩ vars(body).
  const std::set<Term>& frontier_of(std::size_t i) const { return disjunct_frontier_[i]; }
  /// vars(H_i) \ vars(body).
  const std::set<Term>& existentials(std::size_t i) const { return existentials_[i]; }
  std::set<Term> existentials() const;
  std::set<Term> vars() const;

  bool is_conjunctive() const { return head_.size() == 1; }
  bool is_datalog() const;

  /// Same rule with every variable renamed fresh.
  DisjunctiveRule renamed(VarSource& vars = default_vars()) const;
  DisjunctiveRule apply(const Substitution& s) const;

  /// Name if present, otherwise `#<index>` supplied by the caller.
  std::string label(std::size_t index) const;

  bool operator==(const DisjunctiveRule& o) const {
    return name_ == o.name_ && body_ == o.body_ && head_ == o.head_;
  }

 private:
  std::optional<std::string> name_;
  AtomSet body_;
  std::vector<AtomSet> head_;
  std::set<Term> frontier_;
  std::vector<std::set<Term>> disjunct_frontier_;
  std::vector<std::set<Term>> existentials_;
};

std::string to_string(const DisjunctiveRule& r);

/// Rules with pairwise disjoint variables. The constructor renames any rule
/// whose variables clash with an earlier one.
class RuleSet {
 public:
  RuleSet() = default;
  explicit RuleSet(std::vector<DisjunctiveRule> rules, VarSource& vars = default_vars());

  using const_iterator = std::vector<DisjunctiveRule>::const_iterator;
  const_iterator begin() const { return rules_.begin(); }
  const_iterator end() const { return rules_.end(); }
  std::size_t size() const { return rules_.size(); }
  bool empty() const { return rules_.empty(); }
  const DisjunctiveRule& operator[](std::size_t i) const { return rules_[i]; }
  const std::vector<DisjunctiveRule>& rules() const { return rules_; }

  void add(DisjunctiveRule r, VarSource& vars = default_vars());

  /// No rule has an existential variable.
  bool is_datalog() const;
  /// Every head has a single disjunct.
  bool is_conjunctive() const;

  const DisjunctiveRule* find(const std::string& name) const;

 private:
  std::vector<DisjunctiveRule> rules_;
  std::set<Term> used_vars_;
};

/// Source-to-target rule set over disjoint predicate sets.
class Mapping {
 public:
  /// Throws ModelError if the predicate sets overlap, a body uses a
  /// non-source predicate or a head uses a non-target predicate.
  Mapping(RuleSet rules, std::set<Predicate> source, std::set<Predicate> target);

  const RuleSet& rules() const { return rules_; }
  const std::set<Predicate>& source() const { return source_; }
  const std::set<Predicate>& target() const { return target_; }

  bool on_source(const CQ& q) const;

 private:
  RuleSet rules_;
  std::set<Predicate> source_;
  std::set<Predicate> target_;
};

}  // namespace disjrw
