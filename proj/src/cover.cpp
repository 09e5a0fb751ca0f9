#include "disjrw/cover.hpp"

#include "disjrw/homomorphism.hpp"

#include <algorithm>
#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace disjrw {

namespace {

// Necessary condition for a homomorphism q -> f: every feature q needs is
// one f has. Features are a predicate, or a predicate with the equality
// pattern of an atom's arguments (arity <= 4). An atom of f offers every
// pattern finer than its own, since distinct variables may share an image.
struct Signature {
  std::uint64_t need = 0;
  std::uint64_t have = 0;
};

std::uint64_t feature_bit(const Predicate& p, std::uint64_t pattern) {
  std::uint64_t h = (std::uint64_t{p.name} << 8 | p.arity) * 0x9E3779B97F4A7C15ULL;
  h ^= (pattern + 1) * 0xC2B2AE3D27D4EB4FULL;
  h ^= h >> 29;
  return std::uint64_t{1} << (h % 64);
}

// Restricted growth string of the argument equality pattern, packed.
std::uint64_t pack(const std::vector<std::uint8_t>& rgs) {
  std::uint64_t v = 0;
  for (auto x : rgs) v = v * 8 + x + 1;
  return v;
}

std::vector<std::uint8_t> pattern_of(const Atom& a) {
  std::vector<std::uint8_t> out;
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    std::uint8_t id = 0;
    for (std::size_t j = 0; j < i; ++j)
      if (a.args[j] == a.args[i]) {
        id = out[j];
        break;
      } else {
        id = std::max<std::uint8_t>(id, static_cast<std::uint8_t>(out[j] + 1));
      }
    out.push_back(id);
  }
  return out;
}

// Every restricted growth string of length n.
void all_patterns(std::size_t n, std::vector<std::uint8_t>& cur, std::vector<std::vector<std::uint8_t>>& out) {
  if (cur.size() == n) {
    out.push_back(cur);
    return;
  }
  std::uint8_t limit = 0;
  for (auto x : cur) limit = std::max<std::uint8_t>(limit, static_cast<std::uint8_t>(x + 1));
  for (std::uint8_t v = 0; v <= limit; ++v) {
    cur.push_back(v);
    all_patterns(n, cur, out);
    cur.pop_back();
  }
}

bool finer(const std::vector<std::uint8_t>& q, const std::vector<std::uint8_t>& p) {
  for (std::size_t i = 0; i < q.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (q[i] == q[j] && p[i] != p[j]) return false;
  return true;
}

constexpr std::size_t kPatternArity = 4;

Signature signature_of(const CQ& q) {
  Signature s;
  for (const Atom& a : q) {
    s.need |= feature_bit(a.pred, 0);
    s.have |= feature_bit(a.pred, 0);
    if (a.args.size() > kPatternArity) continue;
    const auto p = pattern_of(a);
    if (std::none_of(a.args.begin(), a.args.end(), [](Term t) { return t.is_constant(); }))
      s.need |= feature_bit(a.pred, pack(p));
    std::vector<std::vector<std::uint8_t>> all;
    std::vector<std::uint8_t> cur;
    all_patterns(a.args.size(), cur, all);
    for (const auto& cand : all)
      if (finer(cand, p)) s.have |= feature_bit(a.pred, pack(cand));
  }
  return s;
}

std::vector<Signature> signatures(std::span<const CQ> cqs) {
  std::vector<Signature> out(cqs.size());
  for (std::size_t i = 0; i < cqs.size(); ++i) out[i] = signature_of(cqs[i]);
  return out;
}

// a ⊨ b is possible only if b's needs are among a's offers.
bool may_entail(const Signature& a, const Signature& b) { return (b.need & ~a.have) == 0; }

}  // namespace

namespace kernels {

EntailmentMatrix entailment_matrix_serial(std::span<const CQ> cqs) {
  const std::size_t n = cqs.size();
  EntailmentMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m.set(i, j, i == j || cq_entails(cqs[i], cqs[j]));
  return m;
}

EntailmentMatrix entailment_matrix_parallel(std::span<const CQ> cqs) {
  const std::size_t n = cqs.size();
  EntailmentMatrix m(n);
  const auto sig = signatures(cqs);
  const auto cells = static_cast<std::int64_t>(n * n);
  // Every cell is written by exactly one iteration.
#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t k = 0; k < cells; ++k) {
    auto i = static_cast<std::size_t>(k) / n, j = static_cast<std::size_t>(k) % n;
    m.set(i, j, i == j || (may_entail(sig[i], sig[j]) && cq_entails(cqs[i], cqs[j])));
  }
  return m;
}

std::vector<bool> more_specific_serial(std::span<const CQ> a, std::span<const CQ> b) {
  std::vector<bool> out(a.size(), false);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (const CQ& q : b)
      if (cq_entails(a[i], q)) {
        out[i] = true;
        break;
      }
  return out;
}

std::vector<bool> more_specific_parallel(std::span<const CQ> a, std::span<const CQ> b) {
  std::vector<std::uint8_t> flags(a.size(), 0);
  const auto sa = signatures(a), sb = signatures(b);
  const auto n = static_cast<std::int64_t>(a.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto ii = static_cast<std::size_t>(i);
    for (std::size_t j = 0; j < b.size(); ++j)
      if (may_entail(sa[ii], sb[j]) && cq_entails(a[ii], b[j])) {
        flags[ii] = 1;
        break;
      }
  }
  return std::vector<bool>(flags.begin(), flags.end());
}

bool parallel_enabled() {
#ifdef _OPENMP
  return true;
#else
  return false;
#endif
}

}  // namespace kernels

namespace {

UCQ cover_from(const std::vector<CQ>& order, const EntailmentMatrix& e) {
  UCQ out;
  const std::size_t n = order.size();
  for (std::size_t i = 0; i < n; ++i) {
    bool drop = false;
    for (std::size_t j = 0; j < n && !drop; ++j)
      drop = j != i && e.at(i, j) && (!e.at(j, i) || j < i);
    if (!drop) out.insert(order[i]);
  }
  return out;
}

}  // namespace

UCQ cover(const UCQ& q) {
  auto order = q.canonical_order();
  return cover_from(order, kernels::entailment_matrix_parallel(order));
}

UCQ cover_serial(const UCQ& q) {
  auto order = q.canonical_order();
  return cover_from(order, kernels::entailment_matrix_serial(order));
}

UCQ remove_more_specific(const UCQ& a, const UCQ& b) {
  auto flags = kernels::more_specific_parallel(a.cqs(), b.cqs());
  UCQ out;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!flags[i]) out.insert(a[i]);
  return out;
}

}  // namespace disjrw
