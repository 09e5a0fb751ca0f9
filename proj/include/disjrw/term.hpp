#pragma once

#include <atomic>
#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace disjrw {

/// Interned name of a predicate or constant. Symbols are process-wide and
/// never released; comparing two symbols compares their interning order.
using Symbol = std::uint32_t;

Symbol intern(std::string_view name);
const std::string& symbol_name(Symbol s);

using VarId = std::uint64_t;

/// A variable (identified by an opaque id) or a constant (identified by its
/// name). Packed into one word: the top bit marks constants.
class Term {
 public:
  constexpr Term() = default;

  static constexpr Term variable(VarId id) { return Term(id & kPayload); }
  static constexpr Term constant(Symbol s) { return Term(kConstantBit | s); }
  static Term constant(std::string_view name) { return constant(intern(name)); }

  constexpr bool is_variable() const { return (bits_ & kConstantBit) == 0; }
  constexpr bool is_constant() const { return (bits_ & kConstantBit) != 0; }

  constexpr VarId var_id() const { return bits_ & kPayload; }
  constexpr Symbol symbol() const { return static_cast<Symbol>(bits_ & kPayload); }
  constexpr std::uint64_t bits() const { return bits_; }

  constexpr auto operator<=>(const Term&) const = default;

  /// Name of a constant; `_<id>` for a variable.
  std::string debug_string() const;

 private:
  static constexpr std::uint64_t kConstantBit = std::uint64_t{1} << 63;
  static constexpr std::uint64_t kPayload = ~kConstantBit;

  constexpr explicit Term(std::uint64_t bits) : bits_(bits) {}

  std::uint64_t bits_ = 0;
};

/// Monotone source of fresh variable ids. Ids handed out by one source never
/// repeat, so safe copies are plain id arithmetic.
class VarSource {
 public:
  explicit VarSource(VarId first = 1) : next_(first) {}

  Term fresh() { return Term::variable(next_.fetch_add(1, std::memory_order_relaxed)); }
  VarId peek() const { return next_.load(std::memory_order_relaxed); }

  /// Makes sure future ids are strictly greater than `id`.
  void reserve_past(VarId id);

 private:
  std::atomic<VarId> next_;
};

/// Process-wide default source used by the parser and all engines.
VarSource& default_vars();

struct Predicate {
  Symbol name = 0;
  std::uint32_t arity = 0;

  Predicate() = default;
  Predicate(Symbol n, std::uint32_t a) : name(n), arity(a) {}
  Predicate(std::string_view n, std::uint32_t a) : name(intern(n)), arity(a) {}

  const std::string& name_str() const { return symbol_name(name); }

  auto operator<=>(const Predicate&) const = default;
};

struct Atom {
  Predicate pred;
  std::vector<Term> args;

  Atom() = default;
  /// Throws std::invalid_argument when the argument count differs from the arity.
  Atom(Predicate p, std::vector<Term> a);

  bool is_ground() const;

  auto operator<=>(const Atom&) const = default;
  bool operator==(const Atom&) const = default;
};

std::string to_string(const Atom& a);

}  // namespace disjrw

template <>
struct std::hash<disjrw::Term> {
  std::size_t operator()(const disjrw::Term& t) const noexcept {
    return std::hash<std::uint64_t>{}(t.bits());
  }
};
