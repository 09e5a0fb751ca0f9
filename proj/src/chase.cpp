#include "disjrw/chase.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

#include "disjrw/homomorphism.hpp"

namespace disjrw {

std::vector<Term> Trigger::image() const {
  std::vector<Term> out;
  for (Term v : rule->body().vars()) out.push_back(hom.apply(v));
  return out;
}

Trigger make_trigger(const DisjunctiveRule& rule, std::size_t rule_index, Substitution hom,
                     const FactBase& f) {
  if (!f.includes(rule.body().apply(hom)))
    throw std::invalid_argument("trigger homomorphism does not map the body into the fact base");
  return Trigger{&rule, rule_index, std::move(hom)};
}

std::vector<Trigger> find_triggers(const FactBase& f, const DisjunctiveRule& rule,
                                   std::size_t rule_index) {
  std::vector<Trigger> out;
  for_each_homomorphism(rule.body(), f, [&](const Substitution& h) {
    out.push_back(Trigger{&rule, rule_index, h});
    return true;
  });
  std::sort(out.begin(), out.end(),
            [](const Trigger& a, const Trigger& b) { return a.image() < b.image(); });
  return out;
}

bool is_satisfied(const Trigger& t, const FactBase& f) {
  for (const AtomSet& h : t.rule->head())
    if (homomorphism(h, f, t.hom)) return true;
  return false;
}

std::vector<FactBase> apply_trigger(const FactBase& f, const Trigger& t, VarSource& vars) {
  std::vector<FactBase> out;
  for (std::size_t i = 0; i < t.rule->disjunct_count(); ++i) {
    Substitution s = t.hom;
    for (Term z : t.rule->existentials(i)) s.bind(z, vars.fresh());
    out.push_back(f.united(t.rule->disjunct(i).apply(s)));
  }
  return out;
}

const char* to_string(ChaseVerdict::Kind k) {
  switch (k) {
    case ChaseVerdict::Kind::Entailed: return "entailed";
    case ChaseVerdict::Kind::NotEntailed: return "not_entailed";
    case ChaseVerdict::Kind::Unknown: return "unknown";
  }
  return "unknown";
}

DerivationTree::DerivationTree(FactBase root) {
  nodes_.push_back(TreeNode{std::move(root), std::nullopt, {}, std::nullopt, 0, TreeNode::State::Open});
}

std::size_t DerivationTree::add_child(std::size_t parent, FactBase label) {
  TreeNode n;
  n.label = std::move(label);
  n.parent = parent;
  n.depth = nodes_[parent].depth + 1;
  nodes_.push_back(std::move(n));
  nodes_[parent].children.push_back(nodes_.size() - 1);
  return nodes_.size() - 1;
}

std::vector<std::size_t> DerivationTree::leaves() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    if (nodes_[i].children.empty()) out.push_back(i);
  return out;
}

std::vector<std::size_t> DerivationTree::open_leaves() const {
  std::vector<std::size_t> out;
  for (std::size_t i : leaves())
    if (nodes_[i].state == TreeNode::State::Open) out.push_back(i);
  return out;
}

std::size_t DerivationTree::max_depth() const {
  std::size_t d = 0;
  for (const auto& n : nodes_) d = std::max(d, n.depth);
  return d;
}

bool DerivationTree::complete() const { return open_leaves().empty(); }

namespace {

bool child_matches(const FactBase& parent, const FactBase& child, const Trigger& t, std::size_t i) {
  if (!child.includes(parent)) return false;
  const auto parent_terms = parent.terms();
  const auto& ex = t.rule->existentials(i);
  bool found = false;
  for_each_homomorphism(
      t.rule->disjunct(i), child,
      [&](const Substitution& h) {
        std::set<Term> images;
        for (Term z : ex) {
          Term img = h.apply(z);
          if (!img.is_variable() || parent_terms.count(img) || !images.insert(img).second) return true;
        }
        found = parent.united(t.rule->disjunct(i).apply(h)) == child;
        return !found;
      },
      t.hom);
  return found;
}

using TriggerKey = std::pair<std::size_t, std::vector<Term>>;

struct Branch {
  std::deque<Trigger> pending;
  std::set<TriggerKey> known;
};

class Engine {
 public:
  Engine(const FactBase& f, const RuleSet& rules, const ChaseBudget& budget, VarSource& vars,
         const UCQ* query)
      : rules_(rules), budget_(budget), vars_(vars), query_(query), tree_(f) {}

  ChaseVerdict::Kind run() {
    branches_.emplace_back();
    discover(0);
    if (closes(0)) return finish();
    queue_.push_back(0);

    while (!queue_.empty()) {
      std::size_t n = queue_.front();
      queue_.pop_front();
      TreeNode& node = tree_.node(n);
      if (node.depth >= budget_.max_depth) continue;

      Branch& br = branches_[n];
      std::optional<Trigger> chosen;
      while (!br.pending.empty()) {
        Trigger t = std::move(br.pending.front());
        br.pending.pop_front();
        if (budget_.restricted && is_satisfied(t, node.label)) continue;
        chosen = std::move(t);
        break;
      }
      if (!chosen) {
        node.state = TreeNode::State::Saturated;
        branches_[n] = Branch{};
        if (query_) return ChaseVerdict::Kind::NotEntailed;
        continue;
      }
      if (tree_.size() + chosen->rule->disjunct_count() > budget_.max_nodes) {
        br.pending.push_front(std::move(*chosen));
        break;
      }

      auto labels = apply_trigger(node.label, *chosen, vars_);
      tree_.node(n).trigger = std::move(*chosen);
      tree_.node(n).state = TreeNode::State::Inner;
      Branch inherited = std::move(branches_[n]);
      branches_[n] = Branch{};
      for (auto& label : labels) {
        std::size_t c = tree_.add_child(n, std::move(label));
        branches_.push_back(inherited);
        discover(c);
        if (!closes(c)) queue_.push_back(c);
      }
    }
    return finish();
  }

  DerivationTree take_tree() { return std::move(tree_); }

 private:
  void discover(std::size_t n) {
    Branch& br = branches_[n];
    const FactBase& label = tree_.node(n).label;
    for (std::size_t r = 0; r < rules_.size(); ++r)
      for (Trigger& t : find_triggers(label, rules_[r], r))
        if (br.known.insert(t.key()).second) br.pending.push_back(std::move(t));
  }

  bool closes(std::size_t n) {
    if (!query_ || !entails_some(tree_.node(n).label, *query_)) return false;
    tree_.node(n).state = TreeNode::State::Closed;
    branches_[n] = Branch{};
    return true;
  }

  ChaseVerdict::Kind finish() const {
    if (!query_) return ChaseVerdict::Kind::Unknown;
    for (std::size_t l : tree_.leaves())
      if (tree_.node(l).state != TreeNode::State::Closed) return ChaseVerdict::Kind::Unknown;
    return ChaseVerdict::Kind::Entailed;
  }

  const RuleSet& rules_;
  ChaseBudget budget_;
  VarSource& vars_;
  const UCQ* query_;
  DerivationTree tree_;
  std::vector<Branch> branches_;
  std::deque<std::size_t> queue_;
};

}  // namespace

bool verify_tree(const DerivationTree& tree, const FactBase& root) {
  if (tree.size() == 0 || tree.node(0).label != root) return false;
  for (std::size_t i = 0; i < tree.size(); ++i) {
    const TreeNode& n = tree.node(i);
    if (n.children.empty()) {
      if (n.trigger) return false;
      continue;
    }
    if (!n.trigger) return false;
    const Trigger& t = *n.trigger;
    if (!n.label.includes(t.rule->body().apply(t.hom))) return false;
    if (n.children.size() != t.rule->disjunct_count()) return false;
    for (std::size_t k = 0; k < n.children.size(); ++k) {
      const TreeNode& c = tree.node(n.children[k]);
      if (c.parent != i || c.depth != n.depth + 1) return false;
      if (!child_matches(n.label, c.label, t, k)) return false;
    }
  }
  return true;
}

DerivationTree expand_chase(const FactBase& f, const RuleSet& rules, const ChaseBudget& budget,
                            VarSource& vars) {
  Engine e(f, rules, budget, vars, nullptr);
  e.run();
  return e.take_tree();
}

ChaseVerdict chase_entails(const FactBase& f, const RuleSet& rules, const UCQ& q,
                           const ChaseBudget& budget, VarSource& vars) {
  const auto start = std::chrono::steady_clock::now();
  Engine e(f, rules, budget, vars, &q);
  ChaseVerdict v;
  v.kind = e.run();
  v.tree = e.take_tree();
  v.nodes = v.tree.size();
  v.depth = v.tree.max_depth();
  v.elapsed = std::chrono::steady_clock::now() - start;
  return v;
}

}  // namespace disjrw
