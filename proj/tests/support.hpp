#pragma once

#include <functional>
#include <map>
#include <set>
#include <utility>
#include <string>
#include <vector>

#include "disjrw/atom_set.hpp"
#include "disjrw/rule.hpp"
#include "disjrw/textio.hpp"

namespace support {

using namespace disjrw;

inline std::string data_path(const std::string& name) { return std::string(DISJRW_TEST_DATA) + "/" + name; }

inline Document load(const std::string& name) { return parse_file(data_path(name)); }

inline CQ cq(const std::string& atoms) { return parse("@queries\n? :- " + atoms + ".\n").queries.at(0).cq; }

inline FactBase facts(const std::string& text) { return parse("@facts\n" + text + "\n").facts; }

inline DisjunctiveRule rule(const std::string& text) { return parse("@rules\n" + text + ".\n").rules[0]; }

// Plain backtracking over source atoms in their stored order, trying every
// target atom. Independent of the library's matcher.
inline bool brute_hom_from(const std::vector<Atom>& src, std::size_t i, const AtomSet& tgt,
                           std::map<Term, Term>& m) {
  if (i == src.size()) return true;
  const Atom& a = src[i];
  for (const Atom& b : tgt) {
    if (!(a.pred == b.pred)) continue;
    std::map<Term, Term> saved = m;
    bool ok = true;
    for (std::size_t k = 0; k < a.args.size() && ok; ++k) {
      Term s = a.args[k];
      if (s.is_constant()) {
        ok = s == b.args[k];
      } else if (auto it = m.find(s); it != m.end()) {
        ok = it->second == b.args[k];
      } else {
        m[s] = b.args[k];
      }
    }
    if (ok && brute_hom_from(src, i + 1, tgt, m)) return true;
    m = std::move(saved);
  }
  return false;
}

inline bool brute_hom(const AtomSet& src, const AtomSet& tgt) {
  std::map<Term, Term> m;
  return brute_hom_from(src.atoms(), 0, tgt, m);
}

// Bijective variable renaming with iso(a) == b.
inline bool brute_iso(const AtomSet& a, const AtomSet& b) {
  if (a.size() != b.size() || a.vars().size() != b.vars().size()) return false;
  std::map<Term, Term> m;
  std::set<Term> used;
  std::function<bool(std::size_t)> rec = [&](std::size_t i) {
    if (i == a.size()) return true;
    const Atom& x = a[i];
    for (const Atom& y : b) {
      if (!(x.pred == y.pred)) continue;
      auto saved_m = m;
      auto saved_used = used;
      bool ok = true;
      for (std::size_t k = 0; k < x.args.size() && ok; ++k) {
        Term s = x.args[k], t = y.args[k];
        if (s.is_constant() || t.is_constant()) {
          ok = s == t;
        } else if (auto it = m.find(s); it != m.end()) {
          ok = it->second == t;
        } else if (used.count(t)) {
          ok = false;
        } else {
          m[s] = t;
          used.insert(t);
        }
      }
      if (ok && rec(i + 1)) return true;
      m = std::move(saved_m);
      used = std::move(saved_used);
    }
    return false;
  };
  return rec(0);
}

inline bool brute_equiv(const CQ& a, const CQ& b) { return brute_hom(a, b) && brute_hom(b, a); }

// Some CQ of u is hom-equivalent to q.
inline bool has_equivalent(const UCQ& u, const CQ& q) {
  for (const CQ& c : u)
    if (brute_equiv(c, q)) return true;
  return false;
}

}  // namespace support
