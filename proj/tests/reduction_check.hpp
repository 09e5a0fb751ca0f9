#pragma once

#include <string>

#include "disjrw/constructions.hpp"
#include "disjrw/rewriting.hpp"
#include "support.hpp"

namespace support {

// q plus one T atom per term.
inline CQ with_t(const CQ& q) {
  CQ out = q;
  const Predicate t(kReductionT, 1);
  for (Term x : q.terms()) out.insert(Atom(t, {x}));
  return out;
}

// Hat predicates replaced by their originals; other atoms unchanged.
inline CQ unhat(const CQ& q, const ReductionOutput& red) {
  std::vector<Atom> out;
  for (const Atom& a : q) {
    auto it = red.unhat.find(a.pred);
    out.emplace_back(it == red.unhat.end() ? a.pred : it->second, a.args);
  }
  return CQ(std::move(out));
}

struct SpotCheck {
  std::size_t one_step = 0;
  std::size_t found = 0;
  std::string missing;
};

// Every one-step rewriting Q_w of q with the datalog rules: is (Q_w)^T
// isomorphic, hats removed, to a CQ of W^1 .. W^max_steps of the reduction?
inline SpotCheck forward_spot_check(const CQ& q, const RuleSet& rules, const ReductionOutput& red,
                                    std::size_t max_steps) {
  std::vector<CQ> targets;
  for (const auto& r : rules)
    enumerate_disjunctive_piece_unifiers(UCQ{q}, r, std::nullopt, [&](const DisjunctivePieceUnifier& mu) {
      targets.push_back(with_t(apply_beta(mu, r)));
      return true;
    });
  SpotCheck out;
  out.one_step = targets.size();
  std::vector<bool> hit(targets.size(), false);
  UCQ w = red.ucq;
  for (std::size_t step = 1; step <= max_steps && out.found < targets.size(); ++step) {
    w = w_step(w, red.mapping.rules());
    for (const CQ& c : w) {
      const CQ plain = unhat(c, red);
      for (std::size_t i = 0; i < targets.size(); ++i)
        if (!hit[i] && brute_iso(plain, targets[i])) {
          hit[i] = true;
          ++out.found;
        }
    }
  }
  for (std::size_t i = 0; i < targets.size(); ++i)
    if (!hit[i]) out.missing += to_string(targets[i]) + " ";
  return out;
}

}  // namespace support
