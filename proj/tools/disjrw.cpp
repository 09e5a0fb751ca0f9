#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "disjrw/chase.hpp"
#include "disjrw/constructions.hpp"
#include "disjrw/harness.hpp"
#include "disjrw/rewriting.hpp"
#include "disjrw/textio.hpp"

using namespace disjrw;

namespace {

constexpr int kOk = 0;
constexpr int kError = 1;
constexpr int kNotEntailed = 2;
constexpr int kGaveUp = 3;
// CLI11's PositiveNumber error message names a floating-point range.
// kPositive reports a floating-point range; budgets read better with this.
const CLI::Validator kPositive(
    [](std::string& v) -> std::string {
      try {
        if (std::stod(v) > 0) return {};
      } catch (const std::exception&) {
      }
      return "must be a positive number, got " + v;
    },
    "POSITIVE");

struct IoFlags {
  std::string input;
  std::string output;
  bool json = false;
  bool no_timing = false;
};

struct RewriteFlags {
  std::size_t max_iter = RewriteBudget{}.max_iterations;
  std::size_t max_atoms = RewriteBudget{}.max_cq_atoms;
  std::size_t max_generated = RewriteBudget{}.max_generated;
  double time_limit = RewriteBudget{}.time_limit.count();
  bool single_piece = false;
};

void add_io(CLI::App* app, IoFlags& io, bool needs_input = true) {
  auto* in = app->add_option("-i,--input", io.input, "Input document");
  if (needs_input) in->required()->check(CLI::ExistingFile);
  app->add_option("-o,--output", io.output, "Output file (default: stdout)");
  app->add_flag("--json", io.json, "JSON output");
  app->add_flag("--no-timing", io.no_timing, "Write elapsed times as 0");
}

void add_rewrite_flags(CLI::App* app, RewriteFlags& f) {
  app->add_option("--max-iter", f.max_iter, "Iteration budget")->check(kPositive);
  app->add_option("--max-atoms", f.max_atoms, "Largest CQ kept")->check(kPositive);
  app->add_option("--max-generated", f.max_generated, "Cap on generated CQs")->check(kPositive);
  app->add_option("--time-limit", f.time_limit, "Wall-clock limit in seconds, checked between iterations")
      ->check(kPositive);
  app->add_flag("--single-piece", f.single_piece, "Single-piece unifiers only (incomplete)");
}

void emit(const IoFlags& io, const std::string& text) {
  if (io.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(io.output, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + io.output);
  out << text;
}

RewriteBudget budget_of(const RewriteFlags& f) {
  RewriteBudget b;
  b.max_iterations = f.max_iter;
  b.max_cq_atoms = f.max_atoms;
  b.max_generated = f.max_generated;
  b.time_limit = std::chrono::duration<double>(f.time_limit);
  return b;
}

RewriteOptions options_of(const RewriteFlags& f) {
  RewriteOptions o;
  o.unifiers.single_piece = f.single_piece;
  if (f.single_piece)
    std::cerr << "warning: --single-piece restricts unifiers to single pieces; the result may be incomplete\n";
  return o;
}

int report_rewriting(const IoFlags& io, const RewritingOutcome& out) {
  if (io.json) {
    emit(io, export_json(out, JsonOptions{!io.no_timing}) + "\n");
  } else {
    std::ostringstream s;
    s << "% status: " << to_string(out.status) << "\n"
      << "% iterations: " << out.iterations << "\n"
      << "% cqs: " << out.result.size() << "\n"
      << serialize(out.result);
    emit(io, s.str());
  }
  return out.status == RewritingOutcome::Status::Complete ? kOk : kGaveUp;
}

ChaseBudget chase_budget(std::size_t depth, std::size_t nodes, bool oblivious) {
  ChaseBudget b;
  b.max_depth = depth;
  b.max_nodes = nodes;
  b.restricted = !oblivious;
  return b;
}

std::string check_report_json(const SuiteConfig& cfg, const SuiteReport& rep) {
  nlohmann::ordered_json j;
  j["seed"] = cfg.gen.seed;
  j["count"] = cfg.count;
  j["depth"] = cfg.depth;
  j["ok"] = rep.ok();
  auto& counts = j["counts"];
  counts = nlohmann::ordered_json::object();
  for (const auto& [name, c] : rep.counts)
    counts[name] = {{"passed", c.passed}, {"failed", c.failed}, {"skipped", c.skipped}};
  j["failures"] = nlohmann::ordered_json::array();
  for (const auto& f : rep.failures) j["failures"].push_back({{"check", f.check}, {"seed", f.seed}, {"detail", f.detail}});
  return j.dump(2) + "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Query rewriting with disjunctive existential rules"};
  app.require_subcommand(1);

  IoFlags io;
  RewriteFlags rw;
  std::size_t depth = ChaseBudget{}.max_depth;
  std::size_t max_nodes = ChaseBudget{}.max_nodes;
  bool oblivious = false;

  auto* rewrite_cmd = app.add_subcommand("rewrite", "Rewrite the document's UCQ with its rules");
  add_io(rewrite_cmd, io);
  add_rewrite_flags(rewrite_cmd, rw);

  auto* s_rewrite_cmd = app.add_subcommand("s-rewrite", "Rewrite through a mapping and keep source CQs");
  add_io(s_rewrite_cmd, io);
  add_rewrite_flags(s_rewrite_cmd, rw);

  auto* chase_cmd = app.add_subcommand("chase", "Expand the disjunctive chase tree");
  add_io(chase_cmd, io);
  chase_cmd->add_option("--depth", depth, "Depth budget")->check(kPositive);
  chase_cmd->add_option("--max-nodes", max_nodes, "Node budget")->check(kPositive);
  chase_cmd->add_flag("--oblivious", oblivious, "Apply satisfied triggers too");

  auto* entail_cmd = app.add_subcommand("entail", "Decide entailment of the UCQ by the chase");
  add_io(entail_cmd, io);
  entail_cmd->add_option("--depth", depth, "Depth budget")->check(kPositive);
  entail_cmd->add_option("--max-nodes", max_nodes, "Node budget")->check(kPositive);
  entail_cmd->add_flag("--oblivious", oblivious, "Apply satisfied triggers too");

  SuiteConfig suite;
  auto* check_cmd = app.add_subcommand("check", "Run the property suites on generated instances");
  add_io(check_cmd, io, false);
  check_cmd->add_option("--seed", suite.gen.seed, "First seed");
  check_cmd->add_option("--count", suite.count, "Number of instances")->check(kPositive);
  check_cmd->add_option("--depth", suite.depth, "Depth for cross-checks")->check(kPositive);
  check_cmd->add_option("--checks", suite.checks, "Subset of checks to run");

  std::string rule_name;
  std::size_t family = 0;
  auto* nonfus_cmd = app.add_subcommand("gen-nonfus", "Build the query family showing a rule is not UCQ-rewritable");
  add_io(nonfus_cmd, io);
  nonfus_cmd->add_option("--rule", rule_name, "Rule label")->required();
  nonfus_cmd->add_option("--family", family, "Build Q_0 .. Q_K");

  std::string query_name;
  auto* reduction_cmd = app.add_subcommand("gen-reduction", "Encode a datalog instance as a mapping");
  add_io(reduction_cmd, io);
  reduction_cmd->add_option("--query", query_name, "Query label")->required();

  std::size_t max_comp = 2;
  auto* unfold_cmd = app.add_subcommand("unfold", "Bounded unfolding closure of datalog rules");
  add_io(unfold_cmd, io);
  unfold_cmd->add_option("--max-comp", max_comp, "Composition depth")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kError;
  }

  try {
    if (check_cmd->parsed()) {
      for (const auto& c : suite.checks) {
        const auto& names = suite_check_names();
        if (std::find(names.begin(), names.end(), c) == names.end())
          throw std::invalid_argument("unknown check " + c);
      }
      const SuiteReport rep = run_suite(suite);
      emit(io, check_report_json(suite, rep));
      return rep.ok() ? kOk : kError;
    }

    Document doc = parse_file(io.input);

    if (rewrite_cmd->parsed())
      return report_rewriting(io, rewrite(doc.ucq(), doc.rules, budget_of(rw), options_of(rw)));

    if (s_rewrite_cmd->parsed())
      return report_rewriting(io, s_rewrite(doc.ucq(), doc.mapping(), budget_of(rw), options_of(rw)));

    if (chase_cmd->parsed()) {
      DerivationTree tree = expand_chase(doc.facts, doc.rules, chase_budget(depth, max_nodes, oblivious));
      emit(io, serialize(tree));
      return tree.complete() ? kOk : kGaveUp;
    }

    if (entail_cmd->parsed()) {
      ChaseVerdict v = chase_entails(doc.facts, doc.rules, doc.ucq(), chase_budget(depth, max_nodes, oblivious));
      emit(io, io.json ? export_json(v, JsonOptions{!io.no_timing}) + "\n" : std::string(to_string(v.kind)) + "\n");
      switch (v.kind) {
        case ChaseVerdict::Kind::Entailed: return kOk;
        case ChaseVerdict::Kind::NotEntailed: return kNotEntailed;
        case ChaseVerdict::Kind::Unknown: return kGaveUp;
      }
    }

    if (nonfus_cmd->parsed()) {
      const DisjunctiveRule* r = doc.rules.find(rule_name);
      if (!r) throw std::invalid_argument("no rule labelled " + rule_name);
      Document out;
      std::size_t i = 0;
      for (CQ& q : build_nonfus_family(*r, family)) out.queries.push_back({"q" + std::to_string(i++), std::move(q)});
      emit(io, serialize(out));
      return kOk;
    }

    if (reduction_cmd->parsed()) {
      const NamedQuery* q = doc.find_query(query_name);
      if (!q) throw std::invalid_argument("no query labelled " + query_name);
      ReductionOutput red = build_reduction(q->cq, doc.rules);
      Document out;
      out.source.emplace();
      for (const Predicate& p : red.mapping.source()) out.source->insert(p.name_str());
      out.rules = red.mapping.rules();
      out.queries.push_back({"query", red.q_q});
      for (const auto& e : red.entries) out.queries.push_back({"q_" + e.special.name_str().substr(3), e.query});
      emit(io, serialize(out));
      return kOk;
    }

    if (unfold_cmd->parsed()) {
      Document out;
      out.rules = unfold_closure(doc.rules, max_comp);
      emit(io, serialize(out));
      return kOk;
    }
  } catch (const ParseError& e) {
    std::cerr << io.input << ":" << e.what() << "\n";
    return kError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}
