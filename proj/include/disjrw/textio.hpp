#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "disjrw/atom_set.hpp"
#include "disjrw/chase.hpp"
#include "disjrw/rewriting.hpp"
#include "disjrw/rule.hpp"

namespace disjrw {

struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, std::size_t line, std::size_t column);
  std::size_t line;
  std::size_t column;
};

struct NamedQuery {
  std::optional<std::string> name;
  CQ cq;
};

/// Parsed rule/fact/query file.
struct Document {
  FactBase facts;
  RuleSet rules;
  std::vector<NamedQuery> queries;
  /// Names listed under @source, if the section is present.
  std::optional<std::set<std::string>> source;
  /// Display names of variables, kept for printing.
  std::map<Term, std::string> var_names;

  UCQ ucq() const;
  const NamedQuery* find_query(const std::string& name) const;

  /// Every predicate used anywhere in the document.
  std::set<Predicate> predicates() const;
  /// Source predicates resolved against the document's vocabulary.
  std::set<Predicate> source_predicates() const;
  /// Throws ModelError when there is no @source section or it is violated.
  Mapping mapping() const;
};

/// Parses the text format. Every rejection (syntax, arity clash, non-ground
/// fact, empty body or disjunct, mapping violation) is a ParseError.
Document parse(std::string_view input, VarSource& vars = default_vars());
Document parse_file(const std::string& path, VarSource& vars = default_vars());

std::string serialize(const Document& doc);
/// One `? :- ...` line per CQ in canonical order; a comment line when empty.
std::string serialize(const UCQ& q);
std::string serialize(const DerivationTree& tree);
std::string serialize_rule(const DisjunctiveRule& r, const std::map<Term, std::string>& names = {});

struct JsonOptions {
  /// When false, elapsed_ms is written as 0 so output is reproducible.
  bool timing = true;
};

std::string export_json(const RewritingOutcome& outcome, const JsonOptions& opts = {});
std::string export_json(const ChaseVerdict& verdict, const JsonOptions& opts = {});

}  // namespace disjrw
