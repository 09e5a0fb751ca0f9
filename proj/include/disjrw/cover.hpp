#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "disjrw/atom_set.hpp"

namespace disjrw {

/// Dense square matrix of pairwise CQ entailment: at(i, j) == (q_i ⊨ q_j).
class EntailmentMatrix {
 public:
  explicit EntailmentMatrix(std::size_t n = 0) : n_(n), cells_(n * n, 0) {}

  std::size_t size() const { return n_; }
  bool at(std::size_t i, std::size_t j) const { return cells_[i * n_ + j] != 0; }
  void set(std::size_t i, std::size_t j, bool v) { cells_[i * n_ + j] = v ? 1 : 0; }

  bool operator==(const EntailmentMatrix&) const = default;

 private:
  std::size_t n_;
  std::vector<std::uint8_t> cells_;
};

namespace kernels {

/// Reference implementation, one homomorphism test after the other.
EntailmentMatrix entailment_matrix_serial(std::span<const CQ> cqs);

/// Same matrix with the pair loop spread over OpenMP threads. Pairs that a
/// predicate/equality-pattern signature rules out skip the search. Each cell
/// is an independent pure test, so the result equals the serial one.
EntailmentMatrix entailment_matrix_parallel(std::span<const CQ> cqs);

/// Rows a[i] with some b[j] such that a[i] ⊨ b[j].
std::vector<bool> more_specific_serial(std::span<const CQ> a, std::span<const CQ> b);
std::vector<bool> more_specific_parallel(std::span<const CQ> a, std::span<const CQ> b);

/// True when compiled with OpenMP.
bool parallel_enabled();

}  // namespace kernels

/// Minimal equivalent subset. Elements are visited in canonical order; an
/// element is dropped iff it entails another one that is strictly more
/// general, or an equivalent one that comes first.
UCQ cover(const UCQ& q);
UCQ cover_serial(const UCQ& q);

/// Elements of `a` not more specific than (nor equivalent to) any element of `b`.
UCQ remove_more_specific(const UCQ& a, const UCQ& b);

}  // namespace disjrw
