#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "disjrw/atom_set.hpp"
#include "disjrw/partition.hpp"
#include "disjrw/rule.hpp"

namespace disjrw {

struct InvalidQuery : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Conjunctive piece-unifier (Q', H', P) of `query` with B -> H_disjunct.
struct PieceUnifier {
  CQ query;     // the (safe copy of the) CQ being unified
  AtomSet q_sub;  // Q'
  std::size_t disjunct = 0;
  AtomSet h_sub;  // H'
  TermPartition partition;
};

struct UnifierOptions {
  /// Keep only unifiers whose Q' is a single piece. Incomplete for
  /// disjunctive rules; exists to demonstrate exactly that.
  bool single_piece = false;
  /// Parts rejected here never enter a disjunctive unifier.
  std::function<bool(const PieceUnifier&)> part_filter;
};

/// Every piece-unifier of q with B -> H_i whose partition is the finest one
/// induced by its atom pairing. Requires q variable-disjoint from the rule.
std::vector<PieceUnifier> enumerate_piece_unifiers(const CQ& q, const DisjunctiveRule& rule,
                                                   std::size_t disjunct,
                                                   const UnifierOptions& opts = {});

/// Re-checks admissibility, u(Q') = u(H') and the existential-class condition.
bool is_valid_piece_unifier(const PieceUnifier& mu, const DisjunctiveRule& rule);

/// One conjunctive part per head disjunct, each over its own safe copy.
struct DisjunctivePieceUnifier {
  std::vector<PieceUnifier> parts;
  std::vector<std::size_t> sources;  // index of each part's source CQ in the input UCQ
  TermPartition joined;
};

/// Streams all disjunctive piece-unifiers of q with the rule. With
/// `new_filter`, only combinations where some part's source CQ index is in
/// the filter. `visit` returns false to stop.
void enumerate_disjunctive_piece_unifiers(
    const UCQ& q, const DisjunctiveRule& rule, const std::optional<std::set<std::size_t>>& new_filter,
    const std::function<bool(const DisjunctivePieceUnifier&)>& visit, const UnifierOptions& opts = {},
    VarSource& vars = default_vars());

/// u(B) ∪ ⋃ u(Q_i \ Q_i') with u chosen from the joined partition, giving
/// priority to rule variables.
CQ apply_beta(const DisjunctivePieceUnifier& mu, const DisjunctiveRule& rule);

/// Input plus every one-step β result over all rules (no filtering, no
/// cover). Results are canonically renamed.
UCQ w_step(const UCQ& q, const RuleSet& rules, const UnifierOptions& opts = {},
           VarSource& vars = default_vars());

struct RewriteBudget {
  std::size_t max_iterations = 10;
  std::size_t max_cq_atoms = 24;
  std::size_t max_generated = 100000;
  std::chrono::duration<double> time_limit = std::chrono::seconds(600);
};

struct RewriteOptions {
  UnifierOptions unifiers;
  /// Record Q_new and Q* after every iteration.
  bool trace = false;
  /// Applied to every β result before deduplication, if set.
  std::function<CQ(const CQ&)> transform;
  /// Part filter for the last iteration the budget allows. If it rejects
  /// anything, the outcome is BudgetExhausted.
  std::function<bool(const PieceUnifier&)> final_part_filter;
};

struct IterationTrace {
  UCQ generated;  // Q_new after cover and pruning
  UCQ result;     // Q* at the end of the iteration
};

struct RewritingOutcome {
  enum class Status { Complete, BudgetExhausted };
  Status status = Status::Complete;
  UCQ result;
  std::size_t iterations = 0;
  std::size_t generated_count = 0;
  /// Some β result was dropped (atom cap or final part filter) or generation
  /// stopped early.
  bool truncated = false;
  std::chrono::duration<double> elapsed{0};
  std::vector<IterationTrace> trace;
};

const char* to_string(RewritingOutcome::Status s);

RewritingOutcome rewrite(const UCQ& q, const RuleSet& rules, const RewriteBudget& budget = {},
                         const RewriteOptions& opts = {}, VarSource& vars = default_vars());

/// Rewrites over the whole vocabulary, then keeps the CQs on source predicates.
/// When that run exhausts its budget, the same loop is run on target parts
/// only (source atoms dropped from every β result). If this abstract run
/// completes without producing the empty CQ, no source CQ is derivable and
/// the outcome is Complete with an empty result.
/// In the last permitted iteration only parts leaving source atoms behind are
/// used: other β results are mixed, and a mixed CQ never subsumes a source
/// CQ, so the projection is unchanged.
/// Throws InvalidQuery if q uses a source predicate.
RewritingOutcome s_rewrite(const UCQ& q, const Mapping& m, const RewriteBudget& budget = {},
                           const RewriteOptions& opts = {}, VarSource& vars = default_vars());

}  // namespace disjrw
