#pragma once

#include <functional>
#include <optional>

#include "disjrw/atom_set.hpp"

namespace disjrw {

/// Searches for h with h(source) ⊆ target, extending `fixed` (variables bound
/// in `fixed` keep their image). Backtracking with most-constrained-atom
/// selection and forward checking. Deterministic.
std::optional<Substitution> homomorphism(const AtomSet& source, const AtomSet& target,
                                         const Substitution& fixed = {});

/// Calls `visit` for every homomorphism from source to target extending
/// `fixed`, in a fixed order. Stops early when `visit` returns false.
void for_each_homomorphism(const AtomSet& source, const AtomSet& target,
                           const std::function<bool(const Substitution&)>& visit,
                           const Substitution& fixed = {});

/// q1 ⊨ q2, i.e. q2 maps to q1.
bool cq_entails(const CQ& q1, const CQ& q2);

/// Every CQ of q1 entails some CQ of q2.
bool ucq_entails(const UCQ& q1, const UCQ& q2);

/// Mutual entailment.
bool ucq_equivalent(const UCQ& a, const UCQ& b);

/// Fact base entails some CQ of the UCQ.
bool entails_some(const FactBase& f, const UCQ& q);

}  // namespace disjrw
