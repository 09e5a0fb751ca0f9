#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "disjrw/atom_set.hpp"
#include "disjrw/rule.hpp"

namespace disjrw {

struct ConstructionError : std::invalid_argument {
  enum class Kind {
    Disconnected,
    ConjunctiveEquivalent,
    NotSourceToTarget,
    NotTwoDisjuncts,
    InvalidInput,
    TooManySpecialAtoms,
    UnknownSpecialPredicate,
  };
  ConstructionError(Kind k, const std::string& msg) : std::invalid_argument(msg), kind(k) {}
  Kind kind;
};

/// Name of the fresh linking predicate used for a rule.
std::string link_predicate_name(const DisjunctiveRule& rule);

/// True when body ∪ head is not connected through shared variables, or some
/// disjunct has no frontier variable.
bool is_disconnected(const DisjunctiveRule& rule);

/// Index j such that the rule is equivalent to B -> H_j, if any. Decided by
/// chasing the frozen body with the rule.
std::optional<std::size_t> conjunctive_equivalent(const DisjunctiveRule& rule);

/// H1 copy, link atom, H2 copy. Frontier order: first occurrence in each
/// disjunct.
CQ build_nonfus_query(const DisjunctiveRule& rule, VarSource& vars = default_vars());

/// Q_0 .. Q_k, each Q_i obtained by one β step from a copy of Q_0 on H1 and
/// a copy of Q_{i-1} on H2.
std::vector<CQ> build_nonfus_family(const DisjunctiveRule& rule, std::size_t k,
                                    VarSource& vars = default_vars());

inline const std::string kReductionT = "tt_T";
std::string hat_name(const std::string& pred);
std::string special_name(const std::string& rule_name);

struct ReductionEntry {
  DisjunctiveRule rule;    // R_i
  Predicate special;       // p_{R_i}
  std::vector<Term> frontier;  // x_i in the argument order of p_{R_i}
  CQ query;                // Q_{R_i}
  DisjunctiveRule mapping_rule;  // m_{R_i}
};

struct ReductionOutput {
  CQ q_q;
  UCQ ucq;
  Mapping mapping;
  std::vector<ReductionEntry> entries;
  /// hat predicate -> original predicate on S.
  std::map<Predicate, Predicate> unhat;
};

ReductionOutput build_reduction(const CQ& q, const RuleSet& datalog_rules,
                                VarSource& vars = default_vars());

using Reversed = std::variant<CQ, DisjunctiveRule>;

Reversed reverse(const CQ& q, const ReductionOutput& red);

/// Bounded unfolding closure of conjunctive datalog rules.
RuleSet unfold_closure(const RuleSet& rules, std::size_t max_compositions,
                       VarSource& vars = default_vars());

/// Unfoldings of r2 by r1 on every body atom of r2 that unifies with the head of r1.
std::vector<DisjunctiveRule> unfold(const DisjunctiveRule& r2, const DisjunctiveRule& r1,
                                    VarSource& vars = default_vars());

/// Same rules up to variable renaming: mutual homomorphism of body plus a
/// marked copy of the head.
bool same_rule_modulo_renaming(const DisjunctiveRule& a, const DisjunctiveRule& b);

}  // namespace disjrw
