#include "disjrw/textio.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

namespace disjrw {

ParseError::ParseError(const std::string& msg, std::size_t l, std::size_t c)
    : std::runtime_error(std::to_string(l) + ":" + std::to_string(c) + ": " + msg), line(l), column(c) {}

UCQ Document::ucq() const {
  UCQ out;
  for (const auto& q : queries) out.insert(q.cq);
  return out;
}

const NamedQuery* Document::find_query(const std::string& name) const {
  for (const auto& q : queries)
    if (q.name && *q.name == name) return &q;
  return nullptr;
}

std::set<Predicate> Document::predicates() const {
  std::set<Predicate> out = facts.predicates();
  for (const auto& r : rules) {
    auto b = r.body().predicates();
    out.insert(b.begin(), b.end());
    for (const auto& h : r.head()) {
      auto hp = h.predicates();
      out.insert(hp.begin(), hp.end());
    }
  }
  for (const auto& q : queries) {
    auto qp = q.cq.predicates();
    out.insert(qp.begin(), qp.end());
  }
  return out;
}

std::set<Predicate> Document::source_predicates() const {
  std::set<Predicate> out;
  if (!source) return out;
  for (const Predicate& p : predicates())
    if (source->count(p.name_str())) out.insert(p);
  return out;
}

Mapping Document::mapping() const {
  if (!source) throw ModelError("document has no @source section");
  auto src = source_predicates();
  std::set<Predicate> tgt;
  for (const Predicate& p : predicates())
    if (!src.count(p)) tgt.insert(p);
  return Mapping(rules, src, tgt);
}

namespace {

enum class Tok { Ident, Var, LParen, RParen, Comma, Dot, Colon, ColonDash, Arrow, Bar, Query, Section, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t col;
};

const char* describe(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Var: return "variable";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Comma: return "','";
    case Tok::Dot: return "'.'";
    case Tok::Colon: return "':'";
    case Tok::ColonDash: return "':-'";
    case Tok::Arrow: return "'->'";
    case Tok::Bar: return "'|'";
    case Tok::Query: return "'?'";
    case Tok::Section: return "section";
    case Tok::End: return "end of input";
  }
  return "token";
}

std::vector<Token> lex(std::string_view in) {
  std::vector<Token> out;
  std::size_t i = 0, line = 1, col = 1;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (in[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  auto word_char = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };

  while (i < in.size()) {
    char c = in[i];
    if (c == '%') {
      while (i < in.size() && in[i] != '\n') advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    std::size_t l = line, k = col;
    auto push = [&](Tok t, std::size_t n) {
      out.push_back(Token{t, std::string(in.substr(i, n)), l, k});
      advance(n);
    };
    if (c == '@') {
      std::size_t j = i + 1;
      while (j < in.size() && word_char(in[j])) ++j;
      push(Tok::Section, j - i);
    } else if (std::isalnum(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < in.size() && word_char(in[j])) ++j;
      push(std::isupper(static_cast<unsigned char>(c)) ? Tok::Var : Tok::Ident, j - i);
    } else if (c == '(') {
      push(Tok::LParen, 1);
    } else if (c == ')') {
      push(Tok::RParen, 1);
    } else if (c == ',') {
      push(Tok::Comma, 1);
    } else if (c == '.') {
      push(Tok::Dot, 1);
    } else if (c == '|') {
      push(Tok::Bar, 1);
    } else if (c == '?') {
      push(Tok::Query, 1);
    } else if (c == ':') {
      push(i + 1 < in.size() && in[i + 1] == '-' ? Tok::ColonDash : Tok::Colon,
           i + 1 < in.size() && in[i + 1] == '-' ? 2 : 1);
    } else if (c == '-' && i + 1 < in.size() && in[i + 1] == '>') {
      push(Tok::Arrow, 2);
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", l, k);
    }
  }
  out.push_back(Token{Tok::End, "", line, col});
  return out;
}

class Parser {
 public:
  Parser(std::string_view in, VarSource& vars) : toks_(lex(in)), vars_(vars) {}

  Document run() {
    enum class Section { None, Facts, Rules, Queries } section = Section::None;
    std::vector<std::pair<DisjunctiveRule, Token>> rules;
    while (peek().kind != Tok::End) {
      const Token& t = peek();
      if (t.kind == Tok::Section) {
        next();
        if (t.text == "@facts") {
          section = Section::Facts;
        } else if (t.text == "@rules") {
          section = Section::Rules;
        } else if (t.text == "@queries") {
          section = Section::Queries;
        } else if (t.text == "@source") {
          parse_source();
        } else {
          throw error("unknown section " + t.text, t);
        }
        continue;
      }
      switch (section) {
        case Section::None: throw error("statement outside of a section", t);
        case Section::Facts: parse_facts(); break;
        case Section::Rules: rules.push_back(parse_rule()); break;
        case Section::Queries: parse_query(); break;
      }
    }

    if (doc_.source) {
      for (const auto& [r, at] : rules) {
        for (const Atom& a : r.body())
          if (!doc_.source->count(a.pred.name_str()))
            throw error("mapping rule body uses non-source predicate " + a.pred.name_str(), at);
        for (const AtomSet& h : r.head())
          for (const Atom& a : h)
            if (doc_.source->count(a.pred.name_str()))
              throw error("mapping rule head uses source predicate " + a.pred.name_str(), at);
      }
    }
    std::vector<DisjunctiveRule> plain;
    for (auto& [r, at] : rules) plain.push_back(std::move(r));
    doc_.rules = RuleSet(std::move(plain), vars_);
    return std::move(doc_);
  }

 private:
  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  const Token& next() { return toks_[std::min(pos_++, toks_.size() - 1)]; }

  ParseError error(const std::string& msg, const Token& t) const { return ParseError(msg, t.line, t.col); }

  const Token& expect(Tok kind, const char* context) {
    const Token& t = next();
    if (t.kind != kind)
      throw error(std::string("expected ") + describe(kind) + " " + context + ", found " +
                      (t.kind == Tok::End ? describe(t.kind) : "'" + t.text + "'"),
                  t);
    return t;
  }

  Term term(const Token& t) {
    if (t.kind == Tok::Var) {
      auto it = scope_.find(t.text);
      if (it != scope_.end()) return it->second;
      Term v = vars_.fresh();
      scope_.emplace(t.text, v);
      doc_.var_names.emplace(v, t.text);
      return v;
    }
    if (t.kind == Tok::Ident) return Term::constant(t.text);
    throw error("expected a term", t);
  }

  Atom atom() {
    const Token& name = next();
    if (name.kind != Tok::Ident) {
      if (name.kind == Tok::Var) throw error("predicate names must start with a lowercase letter or digit", name);
      throw error(std::string("expected an atom, found ") + describe(name.kind), name);
    }
    expect(Tok::LParen, "after predicate name");
    std::vector<Term> args;
    if (peek().kind != Tok::RParen) {
      args.push_back(term(next()));
      while (peek().kind == Tok::Comma) {
        next();
        args.push_back(term(next()));
      }
    }
    expect(Tok::RParen, "to close the argument list");
    auto [it, inserted] = arity_.emplace(name.text, args.size());
    if (!inserted && it->second != args.size())
      throw error("predicate " + name.text + " used with arity " + std::to_string(args.size()) +
                      " but earlier with arity " + std::to_string(it->second),
                  name);
    const Predicate pred(name.text, static_cast<std::uint32_t>(args.size()));
    return Atom(pred, std::move(args));
  }

  AtomSet atom_list(const char* what) {
    if (peek().kind != Tok::Ident && peek().kind != Tok::Var) throw error(std::string("empty ") + what, peek());
    std::vector<Atom> atoms{atom()};
    while (peek().kind == Tok::Comma) {
      next();
      atoms.push_back(atom());
    }
    return AtomSet(std::move(atoms));
  }

  std::optional<std::string> label() {
    if ((peek().kind == Tok::Ident || peek().kind == Tok::Var) && peek(1).kind == Tok::Colon) {
      std::string name = next().text;
      next();
      return name;
    }
    return std::nullopt;
  }

  void parse_source() {
    std::set<std::string> names;
    if (peek().kind != Tok::Dot) {
      names.insert(expect(Tok::Ident, "in @source").text);
      while (peek().kind == Tok::Comma) {
        next();
        names.insert(expect(Tok::Ident, "in @source").text);
      }
    }
    expect(Tok::Dot, "to end @source");
    if (!doc_.source) doc_.source.emplace();
    doc_.source->insert(names.begin(), names.end());
  }

  void parse_facts() {
    scope_.clear();
    const Token start = peek();
    AtomSet atoms = atom_list("fact");
    if (!scope_.empty()) throw error("facts must be ground", start);
    expect(Tok::Dot, "to end the fact");
    doc_.facts.insert_all(atoms);
  }

  std::pair<DisjunctiveRule, Token> parse_rule() {
    scope_.clear();
    const Token start = peek();
    auto name = label();
    AtomSet body = atom_list("rule body");
    expect(Tok::Arrow, "after rule body");
    std::vector<AtomSet> head{atom_list("head disjunct")};
    while (peek().kind == Tok::Bar) {
      next();
      head.push_back(atom_list("head disjunct"));
    }
    expect(Tok::Dot, "to end the rule");
    return {DisjunctiveRule(std::move(name), std::move(body), std::move(head)), start};
  }

  void parse_query() {
    scope_.clear();
    auto name = label();
    expect(Tok::Query, "to start a query");
    expect(Tok::ColonDash, "after '?'");
    AtomSet atoms = atom_list("query");
    expect(Tok::Dot, "to end the query");
    doc_.queries.push_back(NamedQuery{std::move(name), std::move(atoms)});
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  VarSource& vars_;
  Document doc_;
  std::unordered_map<std::string, Term> scope_;
  std::unordered_map<std::string, std::size_t> arity_;
};

// Constants by name, so the order does not depend on interning history.
// Variables by their names when given (shorter first, so V2 < V10), else by id.
std::vector<const Atom*> readable_order(const AtomSet& s, const std::map<Term, std::string>& names = {}) {
  std::vector<const Atom*> out;
  for (const Atom& a : s) out.push_back(&a);
  auto arg_less = [&](Term x, Term y) {
    if (x.is_constant() != y.is_constant()) return x.is_constant();
    if (x.is_constant()) return symbol_name(x.symbol()) < symbol_name(y.symbol());
    const auto nx = names.find(x), ny = names.find(y);
    if (nx == names.end() || ny == names.end()) return x < y;
    const std::string &a = nx->second, &b = ny->second;
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  };
  std::stable_sort(out.begin(), out.end(), [&](const Atom* a, const Atom* b) {
    if (a->pred.name_str() != b->pred.name_str()) return a->pred.name_str() < b->pred.name_str();
    return std::lexicographical_compare(a->args.begin(), a->args.end(), b->args.begin(), b->args.end(), arg_less);
  });
  return out;
}

// Variable names for one clause: the display names when they are distinct,
// otherwise V0, V1, ... by first occurrence.
std::map<Term, std::string> clause_names(const std::vector<const AtomSet*>& parts,
                                         const std::map<Term, std::string>& display) {
  std::vector<Term> order;
  for (const AtomSet* s : parts)
    for (const Atom* a : readable_order(*s))
      for (Term t : a->args)
        if (t.is_variable() && std::find(order.begin(), order.end(), t) == order.end()) order.push_back(t);
  std::map<Term, std::string> out;
  std::set<std::string> used;
  bool ok = true;
  for (Term v : order) {
    auto it = display.find(v);
    if (it == display.end() || !used.insert(it->second).second) {
      ok = false;
      break;
    }
    out[v] = it->second;
  }
  if (ok) return out;
  out.clear();
  for (std::size_t i = 0; i < order.size(); ++i) out[order[i]] = "V" + std::to_string(i);
  return out;
}

std::string atom_text(const Atom& a, const std::map<Term, std::string>& names) {
  std::string out = a.pred.name_str() + "(";
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (i) out += ",";
    Term t = a.args[i];
    if (t.is_constant()) {
      out += symbol_name(t.symbol());
    } else {
      auto it = names.find(t);
      out += it != names.end() ? it->second : "V_" + std::to_string(t.var_id());
    }
  }
  return out + ")";
}

std::string list_text(const AtomSet& s, const std::map<Term, std::string>& names) {
  std::string out;
  bool first = true;
  for (const Atom* a : readable_order(s, names)) {
    if (!first) out += ", ";
    first = false;
    out += atom_text(*a, names);
  }
  return out;
}

}  // namespace

Document parse(std::string_view input, VarSource& vars) { return Parser(input, vars).run(); }

Document parse_file(const std::string& path, VarSource& vars) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), vars);
}

std::string serialize_rule(const DisjunctiveRule& r, const std::map<Term, std::string>& display) {
  std::vector<const AtomSet*> parts{&r.body()};
  for (const auto& h : r.head()) parts.push_back(&h);
  auto names = clause_names(parts, display);
  std::string out = r.name() ? *r.name() + ": " : "";
  out += list_text(r.body(), names) + " -> ";
  for (std::size_t i = 0; i < r.disjunct_count(); ++i) {
    if (i) out += " | ";
    out += list_text(r.disjunct(i), names);
  }
  return out + ".";
}

std::string serialize(const Document& doc) {
  std::string out;
  if (doc.source) {
    out += "@source";
    bool first = true;
    for (const auto& n : *doc.source) {
      out += first ? " " : ", ";
      first = false;
      out += n;
    }
    out += ".\n";
  }
  if (!doc.facts.empty()) {
    out += "@facts\n";
    for (const Atom* a : readable_order(doc.facts)) out += atom_text(*a, {}) + ".\n";
  }
  if (!doc.rules.empty()) {
    out += "@rules\n";
    for (const auto& r : doc.rules) out += serialize_rule(r, doc.var_names) + "\n";
  }
  if (!doc.queries.empty()) {
    out += "@queries\n";
    for (const auto& q : doc.queries) {
      auto names = clause_names({&q.cq}, doc.var_names);
      out += (q.name ? *q.name + ": " : "") + "? :- " + list_text(q.cq, names) + ".\n";
    }
  }
  return out;
}

std::string serialize(const UCQ& q) {
  if (q.empty()) return "% empty UCQ\n";
  std::vector<std::string> lines;
  for (const CQ& c : q) lines.push_back("? :- " + canonical_string(c) + ".");
  std::sort(lines.begin(), lines.end());
  std::string out;
  for (const auto& l : lines) out += l + "\n";
  return out;
}

std::string serialize(const DerivationTree& tree) {
  if (tree.size() == 0) return "";
  // Nulls and rule variables are numbered by first appearance in the tree.
  std::map<Term, std::string> names;
  auto name_all = [&](const AtomSet& s) {
    for (const Atom& a : s)
      for (Term t : a.args)
        if (t.is_variable() && !names.count(t)) names[t] = "N" + std::to_string(names.size());
  };
  auto state_text = [](TreeNode::State s) {
    switch (s) {
      case TreeNode::State::Open: return "open";
      case TreeNode::State::Inner: return "inner";
      case TreeNode::State::Saturated: return "saturated";
      case TreeNode::State::Closed: return "closed";
    }
    return "open";
  };

  std::string out;
  std::vector<std::pair<std::size_t, std::size_t>> stack{{0, 0}};
  while (!stack.empty()) {
    auto [id, indent] = stack.back();
    stack.pop_back();
    const TreeNode& n = tree.node(id);
    AtomSet added = n.parent ? n.label.minus(tree.node(*n.parent).label) : n.label;
    name_all(added);
    std::string pad(indent * 2, ' ');
    out += pad + "[" + std::to_string(id) + "] " + state_text(n.state) + (n.parent ? " +{" : " {") +
           list_text(added, names) + "}\n";
    if (n.trigger) {
      std::string img;
      for (Term t : n.trigger->image()) {
        if (!img.empty()) img += ",";
        img += t.is_constant() ? symbol_name(t.symbol()) : names.count(t) ? names[t] : t.debug_string();
      }
      out += pad + "  via " + n.trigger->rule->label(n.trigger->rule_index) + "(" + img + ")\n";
    }
    for (auto it = n.children.rbegin(); it != n.children.rend(); ++it) stack.emplace_back(*it, indent + 1);
  }
  return out;
}

std::string export_json(const RewritingOutcome& outcome, const JsonOptions& opts) {
  nlohmann::ordered_json j;
  j["status"] = to_string(outcome.status);
  j["iterations"] = outcome.iterations;
  j["generated_count"] = outcome.generated_count;
  j["cover_size"] = outcome.result.size();
  std::vector<std::string> cqs;
  for (const CQ& c : outcome.result) cqs.push_back(canonical_string(c));
  std::sort(cqs.begin(), cqs.end());
  j["cqs"] = cqs;
  j["elapsed_ms"] = opts.timing ? std::chrono::duration<double, std::milli>(outcome.elapsed).count() : 0.0;
  return j.dump(2) + "\n";
}

std::string export_json(const ChaseVerdict& verdict, const JsonOptions& opts) {
  nlohmann::ordered_json j;
  j["status"] = to_string(verdict.kind);
  j["iterations"] = verdict.depth;
  j["generated_count"] = verdict.nodes;
  j["cover_size"] = 0;
  j["cqs"] = nlohmann::json::array();
  j["elapsed_ms"] = opts.timing ? std::chrono::duration<double, std::milli>(verdict.elapsed).count() : 0.0;
  return j.dump(2) + "\n";
}

}  // namespace disjrw
