#include "disjrw/homomorphism.hpp"

#include <algorithm>
#include <limits>
#include <map>

namespace disjrw {

namespace {

class Search {
 public:
  Search(const AtomSet& source, const AtomSet& target, const Substitution& fixed)
      : fixed_(fixed) {
    for (const Atom& a : source)
      for (Term t : a.args)
        if (t.is_variable()) vars_.push_back(t);
    std::sort(vars_.begin(), vars_.end());
    vars_.erase(std::unique(vars_.begin(), vars_.end()), vars_.end());
    image_.assign(vars_.size(), Term());
    bound_.assign(vars_.size(), false);
    if (!fixed.empty())
      for (std::size_t i = 0; i < vars_.size(); ++i)
        if (auto t = fixed.lookup(vars_[i])) {
          image_[i] = *t;
          bound_[i] = true;
        }

    // Atoms are ordered by predicate first, so each predicate is a range.
    const auto& tgt = target.atoms();
    atoms_.reserve(source.size());
    for (const Atom& a : source) {
      SourceAtom sa;
      sa.slots.reserve(a.args.size());
      for (Term t : a.args) sa.slots.push_back(t.is_variable() ? slot_of(t) : kConst);
      sa.atom = &a;
      auto lo = std::lower_bound(tgt.begin(), tgt.end(), a.pred,
                                 [](const Atom& x, const Predicate& p) { return x.pred < p; });
      for (auto it = lo; it != tgt.end() && it->pred == a.pred; ++it)
        if (statically_compatible(a, *it)) sa.candidates.push_back(&*it);
      if (sa.candidates.empty()) {
        impossible_ = true;
        return;
      }
      atoms_.push_back(std::move(sa));
    }
    done_.assign(atoms_.size(), false);
  }

  void run(const std::function<bool(const Substitution&)>& visit) {
    if (impossible_) return;
    visit_ = &visit;
    recurse(0);
  }

  bool exists() {
    if (impossible_) return false;
    return !recurse(0);
  }

 private:
  static constexpr std::size_t kConst = std::numeric_limits<std::size_t>::max();

  struct SourceAtom {
    const Atom* atom = nullptr;
    std::vector<std::size_t> slots;
    std::vector<const Atom*> candidates;
  };

  std::size_t slot_of(Term v) const {
    return static_cast<std::size_t>(std::lower_bound(vars_.begin(), vars_.end(), v) - vars_.begin());
  }

  // Constants, repeated variables and fixed bindings.
  bool statically_compatible(const Atom& s, const Atom& t) const {
    for (std::size_t i = 0; i < s.args.size(); ++i) {
      Term a = s.args[i];
      if (a.is_constant()) {
        if (a != t.args[i]) return false;
        continue;
      }
      if (!fixed_.empty())
        if (auto f = fixed_.lookup(a); f && *f != t.args[i]) return false;
      for (std::size_t j = 0; j < i; ++j)
        if (s.args[j] == a && t.args[j] != t.args[i]) return false;
    }
    return true;
  }

  bool consistent(const SourceAtom& sa, const Atom& cand) const {
    for (std::size_t i = 0; i < sa.slots.size(); ++i) {
      std::size_t s = sa.slots[i];
      if (s != kConst && bound_[s] && image_[s] != cand.args[i]) return false;
    }
    return true;
  }

  bool recurse(std::size_t depth) {
    if (depth == atoms_.size()) return visit_ ? (*visit_)(current()) : false;

    // Most constrained atom first.
    std::size_t best = kConst, best_count = kConst;
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
      if (done_[i]) continue;
      std::size_t n = 0;
      for (const Atom* c : atoms_[i].candidates)
        if (consistent(atoms_[i], *c)) ++n;
      if (n < best_count) {
        best = i;
        best_count = n;
        if (n == 0) return true;
      }
    }

    SourceAtom& sa = atoms_[best];
    done_[best] = true;
    std::vector<std::size_t> newly;
    bool keep_going = true;
    for (const Atom* c : sa.candidates) {
      if (!consistent(sa, *c)) continue;
      newly.clear();
      for (std::size_t i = 0; i < sa.slots.size(); ++i) {
        std::size_t s = sa.slots[i];
        if (s != kConst && !bound_[s]) {
          bound_[s] = true;
          image_[s] = c->args[i];
          newly.push_back(s);
        }
      }
      keep_going = recurse(depth + 1);
      for (std::size_t s : newly) bound_[s] = false;
      if (!keep_going) break;
    }
    done_[best] = false;
    return keep_going;
  }

  Substitution current() const {
    Substitution s = fixed_;
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (bound_[i]) s.bind(vars_[i], image_[i]);
    return s;
  }

  const Substitution& fixed_;
  std::vector<Term> vars_;
  std::vector<Term> image_;
  std::vector<bool> bound_;
  std::vector<SourceAtom> atoms_;
  std::vector<bool> done_;
  bool impossible_ = false;
  const std::function<bool(const Substitution&)>* visit_ = nullptr;
};

}  // namespace

void for_each_homomorphism(const AtomSet& source, const AtomSet& target,
                           const std::function<bool(const Substitution&)>& visit,
                           const Substitution& fixed) {
  Search(source, target, fixed).run(visit);
}

std::optional<Substitution> homomorphism(const AtomSet& source, const AtomSet& target,
                                         const Substitution& fixed) {
  std::optional<Substitution> out;
  for_each_homomorphism(
      source, target,
      [&](const Substitution& h) {
        out = h;
        return false;
      },
      fixed);
  return out;
}

bool cq_entails(const CQ& q1, const CQ& q2) {
  static const Substitution kNone;
  return Search(q2, q1, kNone).exists();
}

bool ucq_entails(const UCQ& q1, const UCQ& q2) {
  return std::all_of(q1.begin(), q1.end(), [&](const CQ& a) {
    return std::any_of(q2.begin(), q2.end(), [&](const CQ& b) { return cq_entails(a, b); });
  });
}

bool ucq_equivalent(const UCQ& a, const UCQ& b) { return ucq_entails(a, b) && ucq_entails(b, a); }

bool entails_some(const FactBase& f, const UCQ& q) {
  return std::any_of(q.begin(), q.end(), [&](const CQ& c) { return cq_entails(f, c); });
}

}  // namespace disjrw
