#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "disjrw/atom_set.hpp"
#include "disjrw/rule.hpp"

namespace disjrw {

/// A rule together with a homomorphism of its body into a fact base. The
/// rule is held by pointer; it must outlive the trigger.
struct Trigger {
  const DisjunctiveRule* rule = nullptr;
  std::size_t rule_index = 0;
  Substitution hom;

  /// Images of the body variables in increasing variable order.
  std::vector<Term> image() const;
  /// Identity used for duplicate suppression: (rule index, image tuple).
  std::pair<std::size_t, std::vector<Term>> key() const { return {rule_index, image()}; }
};

/// Throws std::invalid_argument unless hom(body) ⊆ f.
Trigger make_trigger(const DisjunctiveRule& rule, std::size_t rule_index, Substitution hom,
                     const FactBase& f);

/// All triggers of `rule` on f, ordered by image tuple.
std::vector<Trigger> find_triggers(const FactBase& f, const DisjunctiveRule& rule,
                                   std::size_t rule_index = 0);

/// Some disjunct can be mapped into f by an extension of the trigger.
bool is_satisfied(const Trigger& t, const FactBase& f);

/// One fact base per disjunct, existentials renamed fresh per disjunct.
std::vector<FactBase> apply_trigger(const FactBase& f, const Trigger& t,
                                    VarSource& vars = default_vars());

struct TreeNode {
  enum class State {
    Open,       // not expanded yet (budget)
    Inner,      // a trigger was applied here
    Saturated,  // no applicable trigger remains
    Closed,     // label entails the query (chase_entails only)
  };

  FactBase label;
  std::optional<std::size_t> parent;
  std::vector<std::size_t> children;
  std::optional<Trigger> trigger;
  std::size_t depth = 0;
  State state = State::Open;
};

class DerivationTree {
 public:
  DerivationTree() = default;
  explicit DerivationTree(FactBase root);

  const TreeNode& node(std::size_t i) const { return nodes_[i]; }
  TreeNode& node(std::size_t i) { return nodes_[i]; }
  std::size_t size() const { return nodes_.size(); }
  const std::vector<TreeNode>& nodes() const { return nodes_; }

  std::size_t add_child(std::size_t parent, FactBase label);

  std::vector<std::size_t> leaves() const;
  std::vector<std::size_t> open_leaves() const;
  std::size_t max_depth() const;
  /// Every leaf is Saturated or Closed.
  bool complete() const;

 private:
  std::vector<TreeNode> nodes_;
};

/// Re-checks the structural invariants of a stored tree: root label, label
/// growth, and child labels equal to a trigger application up to the choice
/// of fresh existential names.
bool verify_tree(const DerivationTree& tree, const FactBase& root);

struct ChaseBudget {
  std::size_t max_depth = 8;
  std::size_t max_nodes = 20000;
  bool restricted = true;
};

DerivationTree expand_chase(const FactBase& f, const RuleSet& rules, const ChaseBudget& budget = {},
                            VarSource& vars = default_vars());

struct ChaseVerdict {
  enum class Kind { Entailed, NotEntailed, Unknown };
  Kind kind = Kind::Unknown;
  DerivationTree tree;
  std::size_t nodes = 0;
  std::size_t depth = 0;
  std::chrono::duration<double> elapsed{0};
};

const char* to_string(ChaseVerdict::Kind k);

ChaseVerdict chase_entails(const FactBase& f, const RuleSet& rules, const UCQ& q,
                           const ChaseBudget& budget = {}, VarSource& vars = default_vars());

}  // namespace disjrw
