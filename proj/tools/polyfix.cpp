// polyfix command line: parse, print, flatten, equiv, check, eval,
// brackets, lemma, repl.
//
// Exit codes: 0 success (parsed / proved / equivalent), 1 semantic
// failure (distinct / failed proof / evaluation error), 2 syntax or
// configuration error.

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "polyfix/models.hpp"
#include "polyfix/proof.hpp"
#include "polyfix/rewrite.hpp"
#include "polyfix/syntax.hpp"
#include "polyfix/term.hpp"

namespace {

using nlohmann::json;
using namespace polyfix;

constexpr unsigned long kDefaultSeed = 20150618;

struct GlobalOpts {
  std::string table_path;
  bool json_mode = false;
  unsigned long seed = kDefaultSeed;
};

OperatorTable resolve_table(const GlobalOpts& g) {
  if (g.table_path.empty()) return OperatorTable::arithmetic();
  return load_table(g.table_path);
}

std::string show(const Term& t) {
  try {
    return print(t);
  } catch (const std::invalid_argument&) {
    return "<arity-" + std::to_string(t.arity()) + " " + t.symbol() + " form>";
  }
}

void emit(const GlobalOpts& g, json j) {
  j["seed"] = g.seed;
  std::cout << j.dump(2) << "\n";
}

int diagnostic_exit(const GlobalOpts& g, const std::string& command,
                    const ParseDiagnostic& d) {
  if (g.json_mode) {
    emit(g, json{{"command", command},
                 {"ok", false},
                 {"error",
                  {{"kind", to_string(d.kind)},
                   {"offset", d.pos.offset},
                   {"line", d.pos.line},
                   {"column", d.pos.column},
                   {"message", d.message}}}});
  } else {
    std::cerr << "error: " << d.to_string() << "\n";
  }
  return 2;
}

int config_exit(const GlobalOpts& g, const std::string& command, const std::string& message) {
  if (g.json_mode) {
    emit(g, json{{"command", command}, {"ok", false}, {"error", {{"message", message}}}});
  } else {
    std::cerr << "error: " << message << "\n";
  }
  return 2;
}

json value_to_json(const Value& v) {
  struct Conv {
    json operator()(const Int& i) const { return json{{"type", "int"}, {"value", i.str()}}; }
    json operator()(const SeqValue& s) const {
      return json{{"type", "seq"}, {"atoms", s.atoms}};
    }
    json operator()(const BagValue& b) const {
      json counts = json::object();
      for (const auto& [atom, count] : b.counts) counts[atom] = count;
      return json{{"type", "bag"}, {"counts", counts}};
    }
    json operator()(const GraphValue& g) const {
      json edges = json::array();
      for (const auto& e : g.edges) edges.push_back({e[0], e[1], e[2]});
      return json{{"type", "graph"}, {"nodes", g.nodes}, {"edges", edges}};
    }
    json operator()(const MatrixValue& m) const {
      json rows = json::array();
      for (std::size_t r = 0; r < m.dim; ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.dim; ++c) row.push_back(m.at(r, c).str());
        rows.push_back(std::move(row));
      }
      return json{{"type", "matrix"}, {"dim", m.dim}, {"rows", rows}};
    }
  };
  return std::visit(Conv{}, v);
}

// --- environment value literals --------------------------------------------

std::string trim_copy(const std::string& s) {
  auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t comma = s.find(',', start);
    parts.push_back(
        trim_copy(s.substr(start, comma == std::string::npos ? comma : comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (parts.size() == 1 && parts[0].empty()) parts.clear();
  return parts;
}

Int parse_int_literal(const std::string& text) {
  std::string t = trim_copy(text);
  std::string digits = t;
  if (!digits.empty() && digits.front() == '-') digits = digits.substr(1);
  if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) {
        return std::isdigit(static_cast<unsigned char>(c));
      })) {
    throw std::invalid_argument("'" + text + "' is not an integer literal");
  }
  return Int(t);
}

MatrixValue parse_matrix_literal(const std::string& text, std::size_t dim) {
  std::string t = trim_copy(text);
  if (t.size() < 4 || t.front() != '[' || t.back() != ']') {
    throw std::invalid_argument("matrix literal must look like [[1,2],[3,4]]");
  }
  MatrixValue m{dim, {}};
  std::size_t pos = 1;
  for (std::size_t row = 0; row < dim; ++row) {
    pos = t.find('[', pos);
    std::size_t end = t.find(']', pos);
    if (pos == std::string::npos || end == std::string::npos) {
      throw std::invalid_argument("matrix literal needs " + std::to_string(dim) + " rows");
    }
    std::vector<std::string> cells = split_csv(t.substr(pos + 1, end - pos - 1));
    if (cells.size() != dim) {
      throw std::invalid_argument("matrix row needs " + std::to_string(dim) + " entries");
    }
    for (const std::string& c : cells) m.cells.push_back(parse_int_literal(c));
    pos = end + 1;
  }
  return m;
}

GraphValue parse_graph_literal(const std::string& text) {
  std::string t = trim_copy(text);
  GraphValue g;
  if (t.empty()) throw std::invalid_argument("empty graph literal");
  if (t.front() != '{') {  // bare atom: a single named node
    g.nodes.insert(t);
    return g;
  }
  if (t.back() != '}') throw std::invalid_argument("graph literal must end with '}'");
  std::string body = t.substr(1, t.size() - 2);
  std::size_t bar = body.find('|');
  for (const std::string& n : split_csv(body.substr(0, bar))) {
    if (!n.empty()) g.nodes.insert(n);
  }
  if (bar != std::string::npos) {
    for (const std::string& e : split_csv(body.substr(bar + 1))) {
      if (e.empty()) continue;
      std::size_t dash = e.find('-');
      std::size_t arrow = e.find("->", dash == std::string::npos ? 0 : dash + 1);
      if (dash == std::string::npos || arrow == std::string::npos || dash == 0) {
        throw std::invalid_argument("edge '" + e + "' must look like from-label->to");
      }
      std::string from = trim_copy(e.substr(0, dash));
      std::string label = trim_copy(e.substr(dash + 1, arrow - dash - 1));
      std::string to = trim_copy(e.substr(arrow + 2));
      if (from.empty() || label.empty() || to.empty()) {
        throw std::invalid_argument("edge '" + e + "' must look like from-label->to");
      }
      g.nodes.insert(from);
      g.nodes.insert(to);
      g.edges.insert({from, label, to});
    }
  }
  return g;
}

Value parse_value_literal(const std::string& text, const Model& m) {
  std::string t = trim_copy(text);
  if (m.name == "add" || m.name == "mul" || m.name == "sub") {
    return Value(parse_int_literal(t));
  }
  if (m.name == "matmul") {
    std::size_t dim = std::get<MatrixValue>(*m.unit).dim;
    return Value(parse_matrix_literal(t, dim));
  }
  if (m.name == "seq") {
    if (!t.empty() && t.front() == '[') {
      if (t.back() != ']') throw std::invalid_argument("sequence literal must end with ']'");
      SeqValue s;
      for (const std::string& a : split_csv(t.substr(1, t.size() - 2))) {
        if (!a.empty()) s.atoms.push_back(a);
      }
      return Value(std::move(s));
    }
    return Value(SeqValue{{t}});
  }
  if (m.name == "merge") {
    BagValue b;
    if (!t.empty() && t.front() == '[') {
      if (t.back() != ']') throw std::invalid_argument("bag literal must end with ']'");
      for (const std::string& a : split_csv(t.substr(1, t.size() - 2))) {
        if (!a.empty()) ++b.counts[a];
      }
    } else {
      ++b.counts[t];
    }
    return Value(std::move(b));
  }
  if (m.name == "frame") {
    return Value(parse_graph_literal(t));
  }
  throw std::invalid_argument("no value literal syntax for model '" + m.name + "'");
}

Environment parse_env(const std::vector<std::string>& bindings, const Model& m) {
  Environment env;
  for (const std::string& b : bindings) {
    std::size_t eq = b.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw std::invalid_argument("environment binding '" + b + "' must look like name=value");
    }
    env[trim_copy(b.substr(0, eq))] = parse_value_literal(b.substr(eq + 1), m);
  }
  return env;
}

// --- subcommands ------------------------------------------------------------

int cmd_parse(const GlobalOpts& g, const std::string& text) {
  OperatorTable table = resolve_table(g);
  ParseResult r = parse(text, table);
  if (!r.ok()) return diagnostic_exit(g, "parse", r.diagnostic());
  const Term& t = r.term();
  if (g.json_mode) {
    json j{{"command", "parse"}, {"ok", true}, {"term", print(t)}};
    switch (t.kind()) {
      case Term::Kind::PolyApp:
        j["kind"] = "poly";
        j["kernel"] = t.symbol();
        j["length"] = t.arity();
        break;
      case Term::Kind::FixedApp:
        j["kind"] = "fixed";
        j["kernel"] = t.symbol();
        j["length"] = 1;
        break;
      case Term::Kind::Var:
        j["kind"] = "variable";
        j["length"] = 1;
        break;
      case Term::Kind::Const:
        j["kind"] = "constant";
        j["length"] = 1;
        break;
    }
    emit(g, std::move(j));
  } else {
    std::cout << print(t) << "\n";
    if (t.is_poly()) {
      std::cout << "PolyApp " << t.symbol() << ", length " << t.arity() << "\n";
    } else if (t.kind() == Term::Kind::FixedApp) {
      std::cout << "FixedApp " << t.symbol() << ", length 1\n";
    } else {
      std::cout << "atom, length 1\n";
    }
  }
  return 0;
}

int cmd_transform(const GlobalOpts& g, const std::string& command, const std::string& text) {
  OperatorTable table = resolve_table(g);
  ParseResult r = parse(text, table);
  if (!r.ok()) return diagnostic_exit(g, command, r.diagnostic());
  Term out = command == "flatten" ? flatten(r.term()) : r.term();
  if (g.json_mode) {
    emit(g, json{{"command", command}, {"ok", true}, {"term", print(out)}});
  } else {
    std::cout << print(out) << "\n";
  }
  return 0;
}

int cmd_equiv(const GlobalOpts& g, const std::string& a, const std::string& b) {
  OperatorTable table = resolve_table(g);
  ParseResult ra = parse(a, table);
  if (!ra.ok()) return diagnostic_exit(g, "equiv", ra.diagnostic());
  ParseResult rb = parse(b, table);
  if (!rb.ok()) return diagnostic_exit(g, "equiv", rb.diagnostic());
  bool eq = equiv_pure(ra.term(), rb.term());
  if (g.json_mode) {
    emit(g, json{{"command", "equiv"},
                 {"ok", true},
                 {"equivalent", eq},
                 {"lhs", print(ra.term())},
                 {"rhs", print(rb.term())},
                 {"lhs_normal", print(flatten(ra.term()))},
                 {"rhs_normal", print(flatten(rb.term()))}});
  } else {
    std::cout << (eq ? "EQUIV" : "DISTINCT") << "\n";
  }
  return eq ? 0 : 1;
}

json report_to_json(const CheckReport& report, const ProofScript& sc) {
  json steps = json::array();
  for (std::size_t i = 0; i < report.trace.size(); ++i) {
    const StepRecord& rec = report.trace[i];
    json s{{"index", i}, {"step", format_step(rec.step)}, {"before", show(rec.before)}};
    if (rec.after) s["after"] = show(*rec.after);
    if (rec.error_kind) {
      s["error"] = {{"kind", *rec.error_kind}, {"message", *rec.error_message}};
    }
    steps.push_back(std::move(s));
  }
  json j{{"command", "check"},
         {"ok", true},
         {"theory", sc.theory},
         {"verdict", report.proved() ? "Proved" : "Failed"},
         {"goal", {{"lhs", show(sc.goal_lhs)}, {"rhs", show(sc.goal_rhs)}}},
         {"steps", std::move(steps)}};
  if (report.failing_step) j["failing_step"] = *report.failing_step;
  if (report.failure_reason) j["failure_reason"] = *report.failure_reason;
  return j;
}

int cmd_check(const GlobalOpts& g, const std::string& path) {
  ProofScript sc = load_script(path);
  CheckReport report = check_script(sc);
  if (g.json_mode) {
    emit(g, report_to_json(report, sc));
    return report.proved() ? 0 : 1;
  }
  if (report.proved()) {
    for (const StepRecord& rec : report.trace) {
      std::cout << "  " << show(rec.before) << "  ->  " << show(*rec.after) << "    ["
                << format_step(rec.step) << "]\n";
    }
    std::cout << "Proved: " << show(sc.goal_lhs) << " = " << show(sc.goal_rhs) << "\n";
    return 0;
  }
  for (const StepRecord& rec : report.trace) {
    if (rec.error_kind) {
      std::cerr << "  " << show(rec.before) << "  -/->  error: " << *rec.error_message
                << "    [" << format_step(rec.step) << "]\n";
    } else {
      std::cerr << "  " << show(rec.before) << "  ->  " << show(*rec.after) << "    ["
                << format_step(rec.step) << "]\n";
    }
  }
  std::cerr << "Failed: " << *report.failure_reason << "\n";
  std::cout << "Failed\n";
  return 1;
}

int cmd_eval(const GlobalOpts& g, const std::string& text, const std::string& model_name,
             const std::vector<std::string>& env_bindings, std::size_t dim,
             const std::string& fold) {
  std::optional<Model> custom;
  if (model_name == "matmul" && dim != 2) custom = matmul_model(dim);
  const Model& m = custom ? *custom : builtin_model(model_name);
  OperatorTable table = g.table_path.empty() ? m.table : load_table(g.table_path);
  ParseResult r = parse(text, table);
  if (!r.ok()) return diagnostic_exit(g, "eval", r.diagnostic());
  Environment env = parse_env(env_bindings, m);
  try {
    Value v = fold.empty()
                  ? eval(r.term(), m, env)
                  : eval_fold(r.term(), m, fold == "left" ? Side::Left : Side::Right, env);
    if (g.json_mode) {
      emit(g, json{{"command", "eval"},
                   {"ok", true},
                   {"model", m.name},
                   {"term", print(r.term())},
                   {"value", value_to_json(v)}});
    } else {
      std::cout << to_string(v) << "\n";
    }
    return 0;
  } catch (const EvalError& e) {
    if (g.json_mode) {
      emit(g, json{{"command", "eval"},
                   {"ok", false},
                   {"error", {{"kind", to_string(e.kind())}, {"message", e.what()}}}});
    } else {
      std::cerr << "error: " << e.what() << "\n";
    }
    return 1;
  }
}

int cmd_brackets(const GlobalOpts& g, const std::string& text) {
  OperatorTable table = resolve_table(g);
  ParseResult r = parse(text, table);
  if (!r.ok()) return diagnostic_exit(g, "brackets", r.diagnostic());
  try {
    std::vector<Term> all = enumerate_bracketings(r.term());
    if (g.json_mode) {
      json list = json::array();
      for (const Term& t : all) list.push_back(print(t));
      emit(g, json{{"command", "brackets"},
                   {"ok", true},
                   {"count", all.size()},
                   {"bracketings", std::move(list)}});
    } else {
      for (const Term& t : all) std::cout << print(t) << "\n";
      std::cout << "count " << all.size() << "\n";
    }
    return 0;
  } catch (const RewriteError& e) {
    if (g.json_mode) {
      emit(g, json{{"command", "brackets"},
                   {"ok", false},
                   {"error", {{"kind", to_string(e.kind())}, {"message", e.what()}}}});
    } else {
      std::cerr << "error: " << e.what() << "\n";
    }
    return 1;
  }
}

int cmd_lemma(const GlobalOpts& g, std::size_t n, bool mirror, const std::string& kernel) {
  ProofScript sc = derive_induction_lemma(n, kernel, mirror ? Side::Right : Side::Left);
  if (g.json_mode) {
    emit(g, json{{"command", "lemma"},
                 {"ok", true},
                 {"n", n},
                 {"side", mirror ? "right" : "left"},
                 {"kernel", kernel},
                 {"goal", {{"lhs", print(sc.goal_lhs)}, {"rhs", print(sc.goal_rhs)}}},
                 {"script", format_script(sc)}});
  } else {
    std::cout << format_script(sc);
  }
  return 0;
}

// --- repl -------------------------------------------------------------------

void repl_help() {
  std::cout << "commands:\n"
               "  load <term>              set the current term\n"
               "  hyp <id> : <lhs> = <rhs> declare a ground hypothesis\n"
               "  hyp <id> [rev] at <path> [span <lo> <hi>]\n"
               "                           rewrite with a hypothesis\n"
               "  flatten at <path>        splice all same-kernel nesting\n"
               "  group <lo> <hi> at <path>   bracket an argument range\n"
               "  ungroup <k> at <path>    splice a bracketed argument\n"
               "  attl|attr at <path>      associate the first/last pair\n"
               "  unattl|unattr at <path>  inverse association step\n"
               "  undo                     revert the last step\n"
               "  history | hyps | show | help | quit\n";
}

int cmd_repl(const GlobalOpts& g) {
  OperatorTable table = resolve_table(g);
  std::optional<Term> current;
  std::vector<Hypothesis> hypotheses;
  std::vector<std::pair<std::string, Term>> history;  // (step text, term before)

  std::cout << "polyfix repl; 'help' lists commands, 'quit' leaves\n";
  std::string line;
  while (std::cout << "> " << std::flush, std::getline(std::cin, line)) {
    std::string cmd = trim_copy(line);
    if (cmd.empty() || cmd.front() == '#') continue;
    std::istringstream words(cmd);
    std::string head;
    words >> head;
    try {
      if (head == "quit" || head == "exit") break;
      if (head == "help") {
        repl_help();
        continue;
      }
      if (head == "show") {
        std::cout << (current ? print(*current) : std::string("no term loaded")) << "\n";
        continue;
      }
      if (head == "hyps") {
        for (const Hypothesis& h : hypotheses) {
          std::cout << "  " << h.name << " : " << print(h.lhs) << " = " << print(h.rhs)
                    << "\n";
        }
        continue;
      }
      if (head == "history") {
        for (const auto& [step, before] : history) std::cout << "  " << step << "\n";
        continue;
      }
      if (head == "undo") {
        if (history.empty()) {
          std::cout << "nothing to undo\n";
        } else {
          current = history.back().second;
          history.pop_back();
          std::cout << print(*current) << "\n";
        }
        continue;
      }
      if (head == "load") {
        ParseResult r = parse(trim_copy(cmd.substr(4)), table);
        if (!r.ok()) {
          std::cout << "parse error: " << r.diagnostic().to_string() << "\n";
          continue;
        }
        current = r.term();
        history.clear();
        std::cout << print(*current) << "\n";
        continue;
      }
      if (head == "hyp" && cmd.find(':') != std::string::npos) {
        std::size_t colon = cmd.find(':');
        std::istringstream lead(cmd.substr(0, colon));
        std::string kw, name;
        lead >> kw >> name;
        std::string body = cmd.substr(colon + 1);
        std::size_t eq = body.find('=');
        if (name.empty() || eq == std::string::npos) {
          std::cout << "usage: hyp <id> : <lhs> = <rhs>\n";
          continue;
        }
        ParseResult lhs = parse(body.substr(0, eq), table);
        ParseResult rhs = parse(body.substr(eq + 1), table);
        if (!lhs.ok() || !rhs.ok()) {
          std::cout << "parse error: "
                    << (!lhs.ok() ? lhs.diagnostic() : rhs.diagnostic()).to_string() << "\n";
          continue;
        }
        hypotheses.emplace_back(name, lhs.term(), rhs.term());
        std::cout << "hypothesis " << name << " recorded\n";
        continue;
      }
      // Anything else is a proof step applied to the current term.
      if (!current) {
        std::cout << "no term loaded; use 'load <term>' first\n";
        continue;
      }
      ProofStep step = parse_proof_step(cmd);
      Term next = apply_proof_step(*current, step, hypotheses);
      history.emplace_back(cmd, *current);
      current = next;
      std::cout << print(*current) << "\n";
    } catch (const ScriptError& e) {
      std::cout << "bad step: " << e.what() << "\n";
    } catch (const RewriteError& e) {
      std::cout << "step failed (" << to_string(e.kind()) << "): " << e.what() << "\n";
    } catch (const ProofError& e) {
      std::cout << "step failed (" << to_string(e.kind()) << "): " << e.what() << "\n";
    } catch (const std::invalid_argument& e) {
      std::cout << "error: " << e.what() << "\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"poly-infix operator toolkit: n-ary operator chains as first-class syntax"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOpts g;
  app.add_option("--table", g.table_path, "operator table file (JSON)");
  app.add_flag("--json", g.json_mode, "emit JSON instead of plain text");
  app.add_option("--seed", g.seed, "seed recorded in JSON output; reserved for randomized use");

  std::string text, text_b, model_name = "add", fold, kernel = "+", script_path;
  std::vector<std::string> env_bindings;
  std::size_t dim = 2, lemma_n = 2;
  bool mirror = false;

  CLI::App* parse_cmd = app.add_subcommand("parse", "parse a term and report its length");
  parse_cmd->add_option("text", text, "term text")->required();

  CLI::App* print_cmd =
      app.add_subcommand("print", "parse a term and print its canonical form");
  print_cmd->add_option("text", text, "term text")->required();

  CLI::App* flatten_cmd =
      app.add_subcommand("flatten", "print the bracket-free normal form of a term");
  flatten_cmd->add_option("text", text, "term text")->required();

  CLI::App* equiv_cmd =
      app.add_subcommand("equiv", "decide equivalence modulo the association schemes");
  equiv_cmd->add_option("lhs", text, "first term")->required();
  equiv_cmd->add_option("rhs", text_b, "second term")->required();

  CLI::App* check_cmd = app.add_subcommand("check", "check a proof script");
  check_cmd->add_option("script", script_path, "proof script file")->required();

  CLI::App* eval_cmd = app.add_subcommand("eval", "evaluate a term in a model");
  eval_cmd->add_option("text", text, "term text")->required();
  eval_cmd->add_option("--model", model_name,
                       "model: merge, seq, frame, add, mul, matmul, sub (default add)");
  eval_cmd->add_option("--env", env_bindings,
                       "variable binding name=value; repeatable; literals: integer 5, "
                       "sequence/bag [a,b,a], graph {a,b | a-x->b}, matrix [[1,2],[3,4]]");
  eval_cmd->add_option("--dim", dim, "matrix dimension for matmul (default 2)");
  eval_cmd->add_option("--fold", fold, "directional fold: left or right (required for sub)")
      ->check(CLI::IsMember({"left", "right"}));

  CLI::App* brackets_cmd =
      app.add_subcommand("brackets", "enumerate every bracketing of a flat term");
  brackets_cmd->add_option("text", text, "term text")->required();

  CLI::App* lemma_cmd = app.add_subcommand(
      "lemma", "emit a proof script for the peeled-argument association identity");
  lemma_cmd->add_option("n", lemma_n, "inner arity, 2..10")->required();
  lemma_cmd->add_flag("--mirror", mirror, "peel the first argument instead of the last");
  lemma_cmd->add_option("--kernel", kernel, "kernel symbol (default +)");

  CLI::App* repl_cmd = app.add_subcommand("repl", "interactive stepwise derivations");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  std::string cmd_name = app.get_subcommands().front()->get_name();
  try {
    if (parse_cmd->parsed()) return cmd_parse(g, text);
    if (print_cmd->parsed()) return cmd_transform(g, "print", text);
    if (flatten_cmd->parsed()) return cmd_transform(g, "flatten", text);
    if (equiv_cmd->parsed()) return cmd_equiv(g, text, text_b);
    if (check_cmd->parsed()) return cmd_check(g, script_path);
    if (eval_cmd->parsed()) return cmd_eval(g, text, model_name, env_bindings, dim, fold);
    if (brackets_cmd->parsed()) return cmd_brackets(g, text);
    if (lemma_cmd->parsed()) return cmd_lemma(g, lemma_n, mirror, kernel);
    if (repl_cmd->parsed()) return cmd_repl(g);
  } catch (const ScriptError& e) {
    return config_exit(g, cmd_name, e.what());
  } catch (const ValidationError& e) {
    return config_exit(g, cmd_name, e.what());
  } catch (const std::invalid_argument& e) {
    return config_exit(g, cmd_name, e.what());
  }
  return 2;
}
