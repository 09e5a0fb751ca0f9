#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "disjrw/atom_set.hpp"
#include "disjrw/chase.hpp"
#include "disjrw/rewriting.hpp"
#include "disjrw/rule.hpp"

namespace disjrw {

struct GenConfig {
  std::uint64_t seed = 42;
  std::size_t max_predicates = 3;
  std::size_t max_arity = 2;          // <= 3
  std::size_t max_rule_disjuncts = 2; // <= 3
  std::size_t max_atoms_per_set = 3;  // <= 5
  std::size_t max_constants = 2;      // <= 4
  std::size_t max_rules = 2;
  std::size_t max_query_cqs = 2;
  double p_existential = 0.3;
  double p_constant = 0.1;

  /// Throws std::invalid_argument when a bound is zero or too large.
  void validate() const;
};

struct Instance {
  FactBase facts;  // ground
  RuleSet rules;
  UCQ query;
};

/// Deterministic per seed for a fresh `vars` source.
Instance gen_instance(const GenConfig& cfg, VarSource& vars = default_vars());

/// An enumeration went over the candidate cap.
struct CapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kEnumerationCap = 100000;

/// Every fact base of `fs` entails some CQ of q.
bool all_entail(const std::vector<FactBase>& fs, const UCQ& q);

/// Some trigger (R,h) on f has α(f,R,h) ⊨ q. Expects f ⊨ β(q,R,mu).
bool check_backward_forward(const FactBase& f, const UCQ& q, const DisjunctiveRule& rule,
                            const DisjunctivePieceUnifier& mu, VarSource& vars = default_vars());

/// f ⊨ q, or some disjunctive piece-unifier mu of q with the trigger's rule
/// has f ⊨ β(q,R,mu). Expects α(f,R,h) ⊨ q. Throws CapExceeded.
bool check_forward_backward(const FactBase& f, const UCQ& q, const Trigger& trigger,
                            VarSource& vars = default_vars());

/// f1 ⊨ f2 and (R,h2) on f2: some trigger on f1 has α(f1) ⊨ α(f2, R, h2).
bool check_alpha_preservation(const FactBase& f1, const FactBase& f2, const Trigger& t2,
                              VarSource& vars = default_vars());

/// q2 ⊨ q1 and mu2 on q2: β(q2) ⊨ q1, or some mu1 on q1 has β(q2) ⊨ β(q1).
bool check_beta_preservation(const UCQ& q1, const UCQ& q2, const DisjunctiveRule& rule,
                             const DisjunctivePieceUnifier& mu2, VarSource& vars = default_vars());

/// Some mu on α(f,R,h) has f ⊨ β(α(f,R,h), R, mu).
bool check_beta_after_alpha(const FactBase& f, const Trigger& t, VarSource& vars = default_vars());

/// Some trigger on β(q,R,mu) has α(β(q,R,mu)) ⊨ q.
bool check_alpha_after_beta(const UCQ& q, const DisjunctiveRule& rule, const DisjunctivePieceUnifier& mu,
                            VarSource& vars = default_vars());

/// Exhaustive bounded entailment: f ⊨ q, or some unsatisfied trigger on f
/// whose every branch is entailed within depth - 1. Throws CapExceeded.
bool bounded_entails(const FactBase& f, const RuleSet& rules, const UCQ& q, std::size_t depth,
                     VarSource& vars = default_vars());

struct CrossCheckLevel {
  std::size_t depth = 0;
  bool derivation = false;  // bounded_entails at this depth
  bool rewriting = false;   // f ⊨ Q* after `depth` iterations
};

struct CrossCheckReport {
  std::vector<CrossCheckLevel> levels;
  ChaseVerdict::Kind chase = ChaseVerdict::Kind::Unknown;
  std::size_t soundness_violations = 0;
  std::size_t completeness_violations = 0;
  /// Rewriting truncated or chase undecided; not a violation.
  bool inconclusive = false;
  std::string detail;
};

CrossCheckReport cross_check(const FactBase& f, const RuleSet& rules, const UCQ& q, std::size_t depth = 3,
                             VarSource& vars = default_vars());

/// Q* after iterations 1..k against the unpruned w_step iterates. False
/// when some pair is not mutually entailing.
bool check_algorithm_invariant(const UCQ& q, const RuleSet& rules, std::size_t k,
                               VarSource& vars = default_vars());

enum class Outcome { Pass, Fail, Skipped };
const char* to_string(Outcome o);

struct CheckCounts {
  std::size_t passed = 0, failed = 0, skipped = 0;
};

struct CheckFailure {
  std::string check;
  std::uint64_t seed = 0;
  std::string detail;
};

struct SuiteConfig {
  GenConfig gen;
  std::size_t count = 200;
  std::size_t depth = 3;
  /// Subset of suite_check_names(); empty runs the duality checks and
  /// cross_check (everything except algorithm_invariant).
  std::vector<std::string> checks;
  bool parallel = true;
};

struct SuiteReport {
  std::map<std::string, CheckCounts> counts;
  std::vector<CheckFailure> failures;
  std::size_t instances = 0;
  bool ok() const;
};

/// Names of the checks run per instance, in report order.
const std::vector<std::string>& suite_check_names();

struct CheckResult {
  Outcome outcome = Outcome::Skipped;
  std::string detail;
};

/// Runs one named check for the seed. Inputs that break a precondition or
/// exceed the enumeration cap are regenerated from a derived seed. Sequential.
CheckResult run_check(const std::string& name, const GenConfig& gen, std::size_t depth);

/// Instance i uses seed `gen.seed + i`. Instances may run in parallel.
SuiteReport run_suite(const SuiteConfig& cfg);

}  // namespace disjrw
