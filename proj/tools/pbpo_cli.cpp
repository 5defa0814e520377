// pbpo: command-line front end for the rewriting library.
//
// Object references are "file.json#name"; the "#name" part may be dropped
// when the file holds exactly one object of the requested kind.

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "pbpo/bdd.hpp"
#include "pbpo/dot.hpp"
#include "pbpo/error.hpp"
#include "pbpo/io.hpp"
#include "pbpo/limits.hpp"
#include "pbpo/matching.hpp"
#include "pbpo/rewrite.hpp"

namespace {

using namespace pbpo;

constexpr int exit_ok = 0;
constexpr int exit_invalid = 1;
constexpr int exit_usage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Ref {
  std::string path;
  std::string name;
};

Ref split_ref(const std::string& text) {
  auto hash = text.find('#');
  if (hash == std::string::npos) return {text, ""};
  return {text.substr(0, hash), text.substr(hash + 1)};
}

template <class Map>
const typename Map::mapped_type& pick(const Map& map, const Ref& ref, const char* kind) {
  if (ref.name.empty()) {
    if (map.size() != 1)
      throw UsageError(ref.path + " holds " + std::to_string(map.size()) + " " + kind + "s; name one with #name");
    return map.begin()->second;
  }
  auto it = map.find(ref.name);
  if (it == map.end()) throw Error(ErrorKind::dangling_reference, ref.path + ": no " + kind + " named '" + ref.name + "'");
  return it->second;
}

Workspace load(const Ref& ref) { return parse_workspace(std::filesystem::path(ref.path)); }

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  if (s.empty()) return out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(item);
  return out;
}

// Result graph plus its lattice, as a loadable file.
std::string graph_file(const GraphPtr& g, const std::string& name) {
  Workspace ws;
  ws.lattices["lattice"] = g->lattice_ptr();
  ws.graphs[name] = g;
  return serialize(ws);
}

// ---------------------------------------------------------------------------

struct Options {
  std::string rule, graph, rules, square, lattice, bdd_graph;
  std::string table, vars, format = "summary";
  std::size_t match_index = 0;
  std::size_t max_steps = 10000;
  bool emit_trace = false;
  bool exhaustive = false;
};

int cmd_match(const Options& o) {
  auto rule_ref = split_ref(o.rule), graph_ref = split_ref(o.graph);
  const auto rule = pick(load(rule_ref).rules, rule_ref, "rule");
  const auto graph = pick(load(graph_ref).graphs, graph_ref, "graph");
  auto matches = find_matches(rule, graph, o.exhaustive ? MatchSearch::exhaustive : MatchSearch::pruned);
  Workspace out;
  out.lattices["lattice"] = graph->lattice_ptr();
  out.graphs["L"] = rule.L();
  out.graphs["Lp"] = rule.Lp();
  out.graphs["G"] = graph;
  for (std::size_t i = 0; i < matches.size(); ++i) {
    out.morphisms.emplace("match" + std::to_string(i) + ".m", matches[i].m);
    out.morphisms.emplace("match" + std::to_string(i) + ".alpha", matches[i].alpha);
  }
  std::cout << serialize(out);
  std::cerr << matches.size() << (matches.size() == 1 ? " match\n" : " matches\n");
  return exit_ok;
}

int cmd_apply(const Options& o) {
  auto rule_ref = split_ref(o.rule), graph_ref = split_ref(o.graph);
  const auto rule = pick(load(rule_ref).rules, rule_ref, "rule");
  const auto graph = pick(load(graph_ref).graphs, graph_ref, "graph");
  auto matches = find_matches(rule, graph);
  if (o.match_index >= matches.size())
    throw UsageError("match index " + std::to_string(o.match_index) + " out of range (" +
                     std::to_string(matches.size()) + " matches)");
  auto step = pbpo_step(rule, matches[o.match_index]);
  if (o.format == "dot") {
    std::cout << (o.emit_trace ? emit_dot(step.trace) : emit_dot(*step.result, "result"));
  } else {
    std::cout << (o.emit_trace ? serialize_trace(step.trace) : graph_file(step.result, "result"));
  }
  return exit_ok;
}

int cmd_normalize(const Options& o) {
  auto graph_ref = split_ref(o.graph);
  const auto graph = pick(load(graph_ref).graphs, graph_ref, "graph");
  std::vector<PbpoRule> rules;
  for (const auto& r : split_list(o.rules)) {
    auto ref = split_ref(r);
    auto ws = load(ref);
    if (ref.name.empty()) {
      for (const auto& [name, rule] : ws.rules) rules.push_back(rule);
    } else {
      rules.push_back(pick(ws.rules, ref, "rule"));
    }
  }
  if (rules.empty()) throw UsageError("no rules given");
  auto run = normalize(graph, rules, Strategy::first_rule_first_match, o.max_steps);
  if (o.format == "dot")
    std::cout << emit_dot(*run.graph, "result");
  else
    std::cout << graph_file(run.graph, "result");
  std::cerr << run.steps.size() << " steps" << (run.fixpoint ? ", normal form\n" : ", step limit reached\n");
  return exit_ok;
}

int print_bdd(const Bdd& bdd, const std::string& format) {
  if (format == "dot")
    std::cout << emit_dot(*bdd.graph, "bdd");
  else
    std::cout << serialize(bdd_workspace(bdd.graph));
  return exit_ok;
}

int cmd_bdd(const std::string& mode, const Options& o) {
  if (mode == "rules") {
    Workspace ws;
    auto vars = split_list(o.vars);
    ws.lattices["bdd"] = bdd_lattice_for(vars);
    for (auto& rule : bdd_reduction_rules(ws.lattices["bdd"])) ws.rules.emplace(rule.name, rule);
    std::cout << serialize(ws);
    return exit_ok;
  }
  auto table = TruthTable::parse(o.table, split_list(o.vars));
  if (mode == "build") return print_bdd(build_decision_tree(table), o.format);
  if (mode == "oracle") return print_bdd(oracle_reduce(table), o.format);
  auto tree = build_decision_tree(table);
  auto run = reduce_bdd(tree);
  if (o.format == "summary") {
    std::cout << tree.graph->node_count() << " -> " << run.bdd.graph->node_count() << " nodes in "
              << run.steps.size() << " steps\n";
    return exit_ok;
  }
  return print_bdd(run.bdd, o.format);
}

int cmd_check(const Options& o) {
  auto ref = split_ref(o.square);
  auto ws = load(ref);
  const auto& spec = pick(ws.squares, ref, "square");
  const auto mode = o.exhaustive ? Verification::exhaustive : Verification::canonical;
  const bool pullback = spec.kind == SquareSpec::Kind::pullback;
  std::string name = ref.name;
  if (name.empty()) name = ws.squares.begin()->first;
  bool holds = false;
  try {
    holds = pullback ? is_pullback_square(ws.pullback_square(name), mode)
                     : is_pushout_square(ws.pushout_square(name), mode);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::non_commuting_square) throw;
    std::cout << name << ": does not commute\n";
    return exit_invalid;
  }
  std::cout << name << ": " << (holds ? "is" : "is not") << " a " << (pullback ? "pullback" : "pushout") << "\n";
  return holds ? exit_ok : exit_invalid;
}

int cmd_validate(const Options& o) {
  const int given = !o.rule.empty() + !o.graph.empty() + !o.lattice.empty() + !o.bdd_graph.empty();
  if (given != 1) throw UsageError("validate takes exactly one of --rule, --graph, --lattice, --bdd");
  ValidationReport report;
  if (!o.rule.empty()) {
    auto ref = split_ref(o.rule);
    report = validate_rule(pick(load(ref).rules, ref, "rule"));
  } else if (!o.graph.empty()) {
    auto ref = split_ref(o.graph);
    report = validate_graph(pick(load(ref).graphs, ref, "graph")->to_record(),
                            pick(load(ref).graphs, ref, "graph")->lattice());
  } else if (!o.lattice.empty()) {
    auto ref = split_ref(o.lattice);
    report = validate_lattice(*pick(load(ref).lattices, ref, "lattice"));
  } else {
    auto ref = split_ref(o.bdd_graph);
    report = validate_bdd(*pick(load(ref).graphs, ref, "graph"));
  }
  std::cout << report;
  return report.ok() ? exit_ok : exit_invalid;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"PBPO+ graph rewriting and BDD reduction"};
  app.require_subcommand(1);
  Options o;

  auto* match = app.add_subcommand("match", "list the strong matches of a rule in a graph");
  match->add_option("--rule", o.rule, "rule reference")->required();
  match->add_option("--graph", o.graph, "host graph reference")->required();
  match->add_flag("--exhaustive", o.exhaustive, "enumerate every adherence instead of pruning");

  auto* apply = app.add_subcommand("apply", "perform one rewrite step");
  apply->add_option("--rule", o.rule, "rule reference")->required();
  apply->add_option("--graph", o.graph, "host graph reference")->required();
  apply->add_option("--match-index", o.match_index, "index into the sorted match list")->default_val(0);
  apply->add_flag("--emit-trace", o.emit_trace, "print the whole step diagram instead of the result");
  apply->add_option("--format", o.format, "json or dot")->check(CLI::IsMember({"json", "dot"}))->default_val("json");

  auto* norm = app.add_subcommand("normalize", "rewrite until no rule applies");
  norm->add_option("--rules", o.rules, "comma-separated rule references (a bare file means all its rules)")
      ->required();
  norm->add_option("--graph", o.graph, "host graph reference")->required();
  norm->add_option("--max-steps", o.max_steps, "step limit")->default_val(10000);
  norm->add_option("--format", o.format, "json or dot")->check(CLI::IsMember({"json", "dot"}))->default_val("json");

  auto* bdd = app.add_subcommand("bdd", "BDDs from truth tables");
  bdd->require_subcommand(1);
  std::string bdd_mode;
  std::map<std::string, std::string> bdd_format;
  for (auto [name, help] : {std::pair{"build", "full decision tree"}, std::pair{"reduce", "reduce the tree by rewriting"},
                            std::pair{"oracle", "reduced BDD from a unique table"}}) {
    auto* sub = bdd->add_subcommand(name, help);
    sub->add_option("--table", o.table, "output bits, first variable most significant")->required();
    sub->add_option("--vars", o.vars, "comma-separated variable order")->required();
    const bool summary = std::string_view(name) == "reduce";
    sub->add_option("--format", bdd_format[name], summary ? "summary, json or dot" : "json or dot")
        ->check(CLI::IsMember(summary ? std::vector<std::string>{"summary", "json", "dot"}
                                      : std::vector<std::string>{"json", "dot"}))
        ->default_val(summary ? "summary" : "json");
    sub->callback([&bdd_mode, name] { bdd_mode = name; });
  }

  auto* rules = bdd->add_subcommand("rules", "the reduction rules as a rule file");
  rules->add_option("--vars", o.vars, "comma-separated variable order")->required();
  rules->callback([&bdd_mode] { bdd_mode = "rules"; });

  auto* check = app.add_subcommand("check", "decide whether a square is a pullback or pushout");
  check->add_option("--square", o.square, "square reference")->required();
  check->add_flag("--exhaustive", o.exhaustive, "also enumerate mediators against probe objects");

  auto* validate = app.add_subcommand("validate", "run a validator and print its report");
  validate->add_option("--rule", o.rule, "rule reference");
  validate->add_option("--graph", o.graph, "graph reference");
  validate->add_option("--lattice", o.lattice, "lattice reference");
  validate->add_option("--bdd", o.bdd_graph, "graph reference, checked as a BDD");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_usage;
  }

  try {
    if (match->parsed()) return cmd_match(o);
    if (apply->parsed()) return cmd_apply(o);
    if (norm->parsed()) return cmd_normalize(o);
    if (bdd->parsed()) {
      o.format = bdd_format[bdd_mode];
      return cmd_bdd(bdd_mode, o);
    }
    if (check->parsed()) return cmd_check(o);
    if (validate->parsed()) return cmd_validate(o);
  } catch (const UsageError& e) {
    std::cerr << "pbpo: " << e.what() << "\n";
    return exit_usage;
  } catch (const Error& e) {
    std::cerr << "pbpo: " << e.what() << "\n";
    return exit_invalid;
  }
  return exit_usage;
}
