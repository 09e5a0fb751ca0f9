#include "disjrw/term.hpp"

#include <deque>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <unordered_map>

namespace disjrw {

namespace {

struct SymbolTable {
  std::shared_mutex mutex;
  std::deque<std::string> names;
  std::unordered_map<std::string_view, Symbol> index;
};

SymbolTable& table() {
  static SymbolTable t;
  return t;
}

}  // namespace

Symbol intern(std::string_view name) {
  auto& t = table();
  {
    std::shared_lock lock(t.mutex);
    if (auto it = t.index.find(name); it != t.index.end()) return it->second;
  }
  std::unique_lock lock(t.mutex);
  if (auto it = t.index.find(name); it != t.index.end()) return it->second;
  auto id = static_cast<Symbol>(t.names.size());
  t.names.emplace_back(name);
  t.index.emplace(t.names.back(), id);
  return id;
}

const std::string& symbol_name(Symbol s) {
  auto& t = table();
  std::shared_lock lock(t.mutex);
  return t.names.at(s);
}

std::string Term::debug_string() const {
  if (is_constant()) return symbol_name(symbol());
  return "_" + std::to_string(var_id());
}

void VarSource::reserve_past(VarId id) {
  VarId cur = next_.load();
  while (cur <= id && !next_.compare_exchange_weak(cur, id + 1)) {
  }
}

VarSource& default_vars() {
  static VarSource source;
  return source;
}

Atom::Atom(Predicate p, std::vector<Term> a) : pred(p), args(std::move(a)) {
  if (args.size() != pred.arity) {
    throw std::invalid_argument("atom " + pred.name_str() + " expects " +
                                std::to_string(pred.arity) + " arguments, got " +
                                std::to_string(args.size()));
  }
}

bool Atom::is_ground() const {
  for (Term t : args)
    if (t.is_variable()) return false;
  return true;
}

std::string to_string(const Atom& a) {
  std::string out = a.pred.name_str();
  out += '(';
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (i) out += ',';
    out += a.args[i].debug_string();
  }
  out += ')';
  return out;
}

}  // namespace disjrw
