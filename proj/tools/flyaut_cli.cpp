// Command-line front end: generate terms, evaluate them, and run compiled
// MSO automata and oracles on them.
//
// Exit codes: 0 true/success, 1 false, 2 usage or parse error, 3 guard.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "flyaut/error.hpp"
#include "flyaut/mso.hpp"
#include "flyaut/oracle.hpp"
#include "flyaut/solve.hpp"
#include "flyaut/term.hpp"

using namespace flyaut;

namespace {

constexpr int kTrue = 0;
constexpr int kFalse = 1;
constexpr int kUsage = 2;
constexpr int kGuard = 3;

struct Options {
  std::string term;
  std::string formula;
  std::string graph;
  std::string vars;
  std::string format = "text";
  std::string out;
  std::string view = "count";
  std::uint64_t guard = kDefaultGuard;
  std::uint32_t colorings = 0;
  bool quiet = false;
  bool expand = false;
  std::vector<std::string> args;
};

/// Contents of `source` if it names a readable file, else `source` itself.
std::string slurp(const std::string& source) {
  std::ifstream in(source);
  if (!in) return source;
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::vector<std::string> split_vars(const std::string& text) {
  std::vector<std::string> out;
  std::string current;
  for (char c : text) {
    if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
      if (!current.empty()) out.push_back(std::move(current));
      current.clear();
    } else {
      current += c;
    }
  }
  if (!current.empty()) out.push_back(std::move(current));
  return out;
}

struct FormulaInput {
  Formula formula;
  std::vector<std::string> context;
};

/// A formula file may pin the variable order on its first line: `vars: X Y`.
FormulaInput load_formula(const Options& opt) {
  if (opt.formula.empty()) throw InvalidArgument("--formula is required");
  std::string text = slurp(opt.formula);
  std::optional<std::vector<std::string>> context;
  std::size_t start = text.find_first_not_of(" \t\r\n");
  if (start != std::string::npos && text.compare(start, 5, "vars:") == 0) {
    const std::size_t eol = text.find('\n', start);
    context = split_vars(text.substr(start + 5, eol == std::string::npos ? std::string::npos : eol - start - 5));
    // Keep line numbers of diagnostics aligned with the file.
    text = std::string(eol == std::string::npos ? 0 : 1, '\n') + (eol == std::string::npos ? "" : text.substr(eol + 1));
  }
  if (!opt.vars.empty()) context = split_vars(opt.vars);
  Formula phi = parse_formula(text, context);
  return {phi, context ? *context : free_variables(phi)};
}

Term load_term(const Options& opt) {
  if (opt.term.empty()) throw InvalidArgument("--term is required");
  return parse_term(slurp(opt.term));
}

CompiledAutomaton compile_input(const FormulaInput& in, const Options& opt) {
  return compile(in.formula, in.context, CompileOptions{opt.expand});
}

void emit(const Options& opt, const std::string& text) {
  if (!opt.quiet) std::cout << text << '\n';
}

/// Graph of a term with vertices renamed to their infix position numbers.
PGraph numbered_graph(const Term& t) {
  std::map<VertexId, VertexId> rename;
  for (const auto& [pos, number] : infix_numbers(t)) rename.emplace(pos, Position(static_cast<std::uint32_t>(number)));
  return rename_vertices(eval_term(t), rename);
}

std::string graph_json(const PGraph& g) {
  nlohmann::json out;
  out["vertices"] = nlohmann::json::array();
  for (const auto& [v, port] : g.ports()) out["vertices"].push_back({{"id", v.str()}, {"port", port.value()}});
  out["edges"] = nlohmann::json::array();
  for (const auto& [u, v] : g.edges()) out["edges"].push_back({u.str(), v.str()});
  return out.dump();
}

// ----------------------------------------------------------------- commands

int cmd_gen(const Options& opt) {
  if (opt.args.empty()) throw InvalidArgument("gen needs a family: path, cycle, clique, grid, star, petersen");
  const std::string family = opt.args[0];
  std::vector<int> params;
  for (std::size_t i = 1; i < opt.args.size(); ++i) {
    try {
      params.push_back(std::stoi(opt.args[i]));
    } catch (const std::exception&) {
      throw InvalidArgument("parameter '" + opt.args[i] + "' is not an integer");
    }
  }
  Term t = family == "star" || family == "petersen" ? term_from_graph(builtin_graph(family, params)).term
                                                     : gen_term(family, params).term;
  const std::string text = print_term(t);
  if (!opt.out.empty()) {
    std::ofstream file(opt.out);
    if (!file) throw InvalidArgument("cannot write " + opt.out);
    file << text << '\n';
  } else {
    emit(opt, text);
  }
  return kTrue;
}

int cmd_eval(const Options& opt) {
  const PGraph g = numbered_graph(load_term(opt));
  if (opt.format == "dot")
    emit(opt, to_dot(g));
  else if (opt.format == "json")
    emit(opt, graph_json(g));
  else {
    std::string text = write_graph(g);
    if (!text.empty() && text.back() == '\n') text.pop_back();
    emit(opt, text);
  }
  return kTrue;
}

int cmd_check(const Options& opt) {
  const auto in = load_formula(opt);
  const Term t = load_term(opt);
  const auto a = compile_input(in, opt);
  bool verdict;
  if (in.context.empty() || t.vars() == in.context.size())
    verdict = a.dfa.accepts(in.context.empty() ? strip(t) : t);
  else if (t.vars() == 0)
    verdict = check_sat(a, t);
  else
    throw SignatureError("term annotated with " + std::to_string(t.vars()) + " bits, formula has " +
                         std::to_string(in.context.size()) + " free variables");
  emit(opt, verdict ? "true" : "false");
  return verdict ? kTrue : kFalse;
}

int cmd_aggregate(const Options& opt, const std::string& what) {
  const auto in = load_formula(opt);
  const Term t = strip(load_term(opt));
  const auto a = compile_input(in, opt);
  if (what == "count")
    emit(opt, render(count_assignments(a, t)));
  else if (what == "spectrum")
    emit(opt, render(spectrum(a, t)));
  else if (what == "multispectrum")
    emit(opt, render(multispectrum(a, t)));
  else
    emit(opt, min_card(a, t).str());
  return kTrue;
}

int cmd_oracle(const Options& opt) {
  PGraph g;
  if (!opt.graph.empty())
    g = read_graph(slurp(opt.graph));
  else if (!opt.term.empty())
    g = numbered_graph(load_term(opt));
  else
    throw InvalidArgument("oracle needs --graph or --term");
  if (opt.colorings > 0) {
    emit(opt, render(oracle_count_colorings(g, opt.colorings, opt.guard)));
    return kTrue;
  }
  const auto in = load_formula(opt);
  const TupleMultiset ms = oracle_multispectrum(g, in.formula, in.context, opt.guard);
  if (opt.view == "check") {
    const bool verdict = !ms.empty();
    emit(opt, verdict ? "true" : "false");
    return verdict ? kTrue : kFalse;
  }
  if (opt.view == "count")
    emit(opt, render(multiset_size(ms)));
  else if (opt.view == "spectrum")
    emit(opt, render(multiset_support(ms)));
  else if (opt.view == "multispectrum")
    emit(opt, render(ms));
  else if (opt.view == "mincard")
    emit(opt, multiset_min_first(ms).str());
  else
    throw InvalidArgument("unknown view '" + opt.view + "'");
  return kTrue;
}

int cmd_bench(const Options& opt) {
  const std::string suite = opt.args.empty() ? "" : opt.args[0];
  if (suite.empty()) {
    emit(opt, "grid3col\t3-colourability of n x n grids, n = 4..8");
    return kTrue;
  }
  if (suite != "grid3col") throw InvalidArgument("unknown bench suite '" + suite + "'");
  const auto a = compile(parse_formula("(3colorable)"));
  emit(opt, "grid\tpositions\ttransitions\tseconds\tresult");
  bool fly = true;
  for (int n = 4; n <= 8; ++n) {
    const int params[] = {n, n};
    const Term t = gen_term("grid", params).term;
    RunStats stats;
    const auto start = std::chrono::steady_clock::now();
    const bool verdict = a.dfa.accepts(t, &stats);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    fly = fly && stats.transitions == t.size();
    char line[128];
    std::snprintf(line, sizeof line, "%dx%d\t%zu\t%llu\t%.3f\t%s", n, n, t.size(),
                  static_cast<unsigned long long>(stats.transitions), seconds, verdict ? "true" : "false");
    emit(opt, line);
  }
  return fly ? kTrue : kFalse;
}

int cmd_irredundant(const Options& opt) {
  const auto report = check_irredundant(load_term(opt));
  emit(opt, report.irredundant ? "irredundant" : "redundant add at " + report.offending->str());
  return report.irredundant ? kTrue : kFalse;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fly-automata over clique-width terms"};
  app.require_subcommand(1);
  Options opt;

  auto add_term = [&](CLI::App* sub) { sub->add_option("--term", opt.term, "term file or inline term"); };
  auto add_formula = [&](CLI::App* sub) {
    sub->add_option("--formula", opt.formula, "formula file or inline formula");
    sub->add_option("--vars", opt.vars, "free-variable order, e.g. \"X,Y\"");
    sub->add_flag("--expand-col", opt.expand, "compile col through its MSO expansion");
  };
  app.add_option("--format", opt.format, "output format")->check(CLI::IsMember({"text", "dot", "json"}));
  app.add_option("--guard", opt.guard, "oracle enumeration budget");
  app.add_flag("--quiet", opt.quiet, "print nothing; report through the exit code");

  auto* gen = app.add_subcommand("gen", "write a term for a graph family");
  gen->add_option("family", opt.args, "family and parameters")->required();
  gen->add_option("--out", opt.out, "output file");

  auto* eval = app.add_subcommand("eval", "evaluate a term into a graph");
  add_term(eval);
  eval->add_option("--format", opt.format, "output format")->check(CLI::IsMember({"text", "dot", "json"}));

  auto* check = app.add_subcommand("check", "decide a formula on a term");
  add_term(check);
  add_formula(check);

  std::map<std::string, CLI::App*> aggregates;
  for (const char* name : {"count", "spectrum", "multispectrum", "mincard"}) {
    auto* sub = app.add_subcommand(name, std::string("compute the ") + name + " of a formula on a term");
    add_term(sub);
    add_formula(sub);
    aggregates[name] = sub;
  }

  auto* oracle = app.add_subcommand("oracle", "brute-force evaluation on a graph");
  oracle->add_option("--graph", opt.graph, "graph file or inline graph");
  add_term(oracle);
  add_formula(oracle);
  oracle->add_option("--colorings", opt.colorings, "count proper k-colourings instead");
  oracle->add_option("--view", opt.view, "count, spectrum, multispectrum, mincard or check")
      ->check(CLI::IsMember({"count", "spectrum", "multispectrum", "mincard", "check"}));
  oracle->add_option("--guard", opt.guard, "enumeration budget");

  auto* bench = app.add_subcommand("bench", "run a timing suite; no id lists the suites");
  bench->add_option("suite", opt.args, "suite id");

  auto* irredundant = app.add_subcommand("irredundant", "check that no add re-creates an edge");
  add_term(irredundant);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kTrue : kUsage;
  }

  try {
    if (gen->parsed()) return cmd_gen(opt);
    if (eval->parsed()) return cmd_eval(opt);
    if (check->parsed()) return cmd_check(opt);
    for (const auto& [name, sub] : aggregates)
      if (sub->parsed()) return cmd_aggregate(opt, name);
    if (oracle->parsed()) return cmd_oracle(opt);
    if (bench->parsed()) return cmd_bench(opt);
    if (irredundant->parsed()) return cmd_irredundant(opt);
  } catch (const GuardExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kGuard;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
