#include "polyfix/proof.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "polyfix/syntax.hpp"

namespace polyfix {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

std::string show(const Term& t) {
  try {
    return print(t);
  } catch (const std::invalid_argument&) {
    return "<arity-" + std::to_string(t.arity()) + " " + t.symbol() + " form>";
  }
}

}  // namespace

const char* to_string(ProofErrorKind kind) {
  switch (kind) {
    case ProofErrorKind::NoMatch: return "NoMatch";
    case ProofErrorKind::UnknownHypothesis: return "UnknownHypothesis";
  }
  return "Unknown";
}

Hypothesis::Hypothesis(std::string name_, Term lhs_, Term rhs_)
    : name(std::move(name_)), lhs(std::move(lhs_)), rhs(std::move(rhs_)) {
  if (has_variables(lhs) || has_variables(rhs)) {
    throw std::invalid_argument("hypothesis '" + name + "' must be a ground equation");
  }
}

Term apply_hyp(const Term& t, const Hypothesis& h, Direction dir, const Path& p,
               std::optional<Span> s) {
  const Term& source = dir == Direction::LeftToRight ? h.lhs : h.rhs;
  const Term& target = dir == Direction::LeftToRight ? h.rhs : h.lhs;
  const Term& sub = subterm_at(t, p);

  if (!s) {
    if (sub != source) {
      throw ProofError(ProofErrorKind::NoMatch, "subterm '" + show(sub) + "' does not match '" +
                                                    show(source) + "' of hypothesis " + h.name);
    }
    return replace_at(t, p, target);
  }

  if (!sub.is_poly()) {
    throw RewriteError(RewriteErrorKind::NotPoly,
                       "a span needs a poly-infix application at " + format_path(p));
  }
  if (s->lo > s->hi || s->hi >= sub.arity()) {
    throw RewriteError(RewriteErrorKind::BadSpan,
                       "span " + std::to_string(s->lo) + ".." + std::to_string(s->hi) +
                           " is out of range for arity " + std::to_string(sub.arity()));
  }
  auto args = sub.args();
  Term segment = s->size() == 1
                     ? args[s->lo]
                     : Term::poly_app(sub.symbol(),
                                      std::vector<Term>(args.begin() + s->lo,
                                                        args.begin() + s->hi + 1));
  if (segment != source) {
    throw ProofError(ProofErrorKind::NoMatch, "segment '" + show(segment) +
                                                  "' does not match '" + show(source) +
                                                  "' of hypothesis " + h.name);
  }
  std::vector<Term> out(args.begin(), args.begin() + s->lo);
  if (target.is_poly(sub.symbol())) {
    out.insert(out.end(), target.args().begin(), target.args().end());
  } else {
    out.push_back(target);
  }
  out.insert(out.end(), args.begin() + s->hi + 1, args.end());
  if (out.size() == 1) return replace_at(t, p, out.front());
  return replace_at(t, p, Term::poly_app_short(sub.symbol(), std::move(out)));
}

namespace {

const Hypothesis& find_hypothesis(std::span<const Hypothesis> hyps, const std::string& name) {
  for (const Hypothesis& h : hyps) {
    if (h.name == name) return h;
  }
  throw ProofError(ProofErrorKind::UnknownHypothesis, "no hypothesis named '" + name + "'");
}

}  // namespace

Term apply_proof_step(const Term& cur, const ProofStep& step,
                      std::span<const Hypothesis> hypotheses) {
  return std::visit(
      overloaded{
          [&](const ProofStep::ApplyHyp& s) {
            return apply_hyp(cur, find_hypothesis(hypotheses, s.name), s.dir, s.path, s.span);
          },
          [&](const ProofStep::Flatten& s) {
            return replace_at(cur, s.path, flatten(subterm_at(cur, s.path)));
          },
          [&](const ProofStep::Group& s) { return group(cur, s.path, s.span); },
          [&](const ProofStep::Ungroup& s) { return ungroup(cur, s.path, s.index); },
          [&](const ProofStep::AttContract& s) { return att_contract(cur, s.path, s.side); },
          [&](const ProofStep::AttExpand& s) { return att_expand(cur, s.path, s.side); },
      },
      step.op);
}

CheckReport check_script(const ProofScript& script) {
  CheckReport report;
  Term cur = script.goal_lhs;
  for (std::size_t i = 0; i < script.steps.size(); ++i) {
    StepRecord rec{script.steps[i], cur, std::nullopt, std::nullopt, std::nullopt};
    try {
      Term next = apply_proof_step(cur, script.steps[i], script.hypotheses);
      rec.after = next;
      report.trace.push_back(std::move(rec));
      cur = std::move(next);
    } catch (const RewriteError& e) {
      rec.error_kind = to_string(e.kind());
      rec.error_message = e.what();
    } catch (const ProofError& e) {
      rec.error_kind = to_string(e.kind());
      rec.error_message = e.what();
    }
    if (rec.error_kind) {
      report.trace.push_back(std::move(rec));
      report.verdict = CheckReport::Verdict::Failed;
      report.failing_step = i;
      report.failure_reason = *report.trace.back().error_kind + " at step " +
                              std::to_string(i + 1) + ": " +
                              *report.trace.back().error_message;
      return report;
    }
  }
  if (cur == script.goal_rhs) {
    report.verdict = CheckReport::Verdict::Proved;
  } else {
    report.verdict = CheckReport::Verdict::Failed;
    report.failure_reason =
        "all steps succeeded but the final term '" + show(cur) +
        "' differs from the goal right-hand side '" + show(script.goal_rhs) + "'";
  }
  return report;
}

ProofScript derive_induction_lemma(std::size_t n, const std::string& kernel, Side side) {
  if (n < 2 || n > 10) {
    throw std::invalid_argument("lemma index must be between 2 and 10, got " +
                                std::to_string(n));
  }
  std::vector<Term> vars;
  vars.reserve(n + 1);
  for (std::size_t i = 1; i <= n + 1; ++i) vars.push_back(Term::var("x" + std::to_string(i)));

  Term lhs = Term::poly_app(kernel, vars);
  Term rhs = side == Side::Left
                 ? Term::poly_app(kernel, {Term::poly_app(kernel, std::vector<Term>(
                                               vars.begin(), vars.end() - 1)),
                                           vars.back()})
                 : Term::poly_app(kernel, {vars.front(),
                                           Term::poly_app(kernel, std::vector<Term>(
                                               vars.begin() + 1, vars.end()))});

  ProofScript sc{
      .theory = std::string(side == Side::Left ? "assoc_left_n" : "assoc_right_n") +
                std::to_string(n),
      .table = OperatorTable("lemma", {KernelSpec{kernel, std::nullopt, std::nullopt}}),
      .table_path = std::nullopt,
      .hypotheses = {},
      .goal_lhs = lhs,
      .goal_rhs = rhs,
      .steps = {},
  };
  // Peel pairs off one end, then splice the nested binaries back into a
  // single inner application: contract n-1 times at the root, expand
  // n-2 times inside the first (or last) argument.
  for (std::size_t i = 0; i + 1 < n; ++i) {
    sc.steps.push_back(ProofStep{ProofStep::AttContract{{}, side}});
  }
  Path inner{side == Side::Left ? std::size_t{0} : std::size_t{1}};
  for (std::size_t i = 0; i + 2 < n; ++i) {
    sc.steps.push_back(ProofStep{ProofStep::AttExpand{inner, side}});
  }
  return sc;
}

// --- Script text format -----------------------------------------------------

std::string format_path(const Path& p) {
  std::string s = "root";
  for (std::size_t i : p) s += "." + std::to_string(i);
  return s;
}

Path parse_path(const std::string& text) {
  if (text == "root") return {};
  if (!text.starts_with("root.")) {
    throw std::invalid_argument("path must be 'root' or 'root.i.j...', got '" + text + "'");
  }
  Path p;
  std::size_t pos = 5;
  while (pos <= text.size()) {
    std::size_t dot = text.find('.', pos);
    std::string part = text.substr(pos, dot == std::string::npos ? dot : dot - pos);
    if (part.empty() || !std::all_of(part.begin(), part.end(), [](char c) {
          return std::isdigit(static_cast<unsigned char>(c));
        })) {
      throw std::invalid_argument("bad path component '" + part + "' in '" + text + "'");
    }
    p.push_back(std::stoul(part));
    if (dot == std::string::npos) break;
    pos = dot + 1;
  }
  return p;
}

std::string format_step(const ProofStep& step) {
  return std::visit(
      overloaded{
          [](const ProofStep::ApplyHyp& s) {
            std::string line = "hyp " + s.name;
            if (s.dir == Direction::RightToLeft) line += " rev";
            line += " at " + format_path(s.path);
            if (s.span) {
              line += " span " + std::to_string(s.span->lo) + " " + std::to_string(s.span->hi);
            }
            return line;
          },
          [](const ProofStep::Flatten& s) { return "flatten at " + format_path(s.path); },
          [](const ProofStep::Group& s) {
            return "group " + std::to_string(s.span.lo) + " " + std::to_string(s.span.hi) +
                   " at " + format_path(s.path);
          },
          [](const ProofStep::Ungroup& s) {
            return "ungroup " + std::to_string(s.index) + " at " + format_path(s.path);
          },
          [](const ProofStep::AttContract& s) {
            return std::string(s.side == Side::Left ? "attl" : "attr") + " at " +
                   format_path(s.path);
          },
          [](const ProofStep::AttExpand& s) {
            return std::string(s.side == Side::Left ? "unattl" : "unattr") + " at " +
                   format_path(s.path);
          },
      },
      step.op);
}

namespace {

std::string trim(const std::string& s) {
  auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> words_of(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> words;
  std::string w;
  while (in >> w) words.push_back(w);
  return words;
}

Term parse_term_or_throw(const std::string& text, const OperatorTable& table,
                         std::size_t line_no) {
  ParseResult r = parse(text, table);
  if (!r.ok()) {
    throw ScriptError(line_no, "in '" + trim(text) + "': " + r.diagnostic().to_string());
  }
  return r.term();
}

std::pair<Term, Term> parse_equation(const std::string& text, const OperatorTable& table,
                                     std::size_t line_no) {
  std::size_t eq = text.find('=');
  if (eq == std::string::npos) {
    throw ScriptError(line_no, "expected '<term> = <term>'");
  }
  return {parse_term_or_throw(text.substr(0, eq), table, line_no),
          parse_term_or_throw(text.substr(eq + 1), table, line_no)};
}

std::size_t parse_index(const std::string& word, std::size_t line_no, const char* what) {
  if (word.empty() || !std::all_of(word.begin(), word.end(), [](char c) {
        return std::isdigit(static_cast<unsigned char>(c));
      })) {
    throw ScriptError(line_no, std::string(what) + " must be a non-negative integer, got '" +
                                   word + "'");
  }
  return std::stoul(word);
}

Path parse_path_word(const std::string& word, std::size_t line_no) {
  try {
    return parse_path(word);
  } catch (const std::invalid_argument& e) {
    throw ScriptError(line_no, e.what());
  }
}

ProofStep parse_step_line(const std::vector<std::string>& w, std::size_t line_no) {
  auto expect_at = [&](std::size_t i) {
    if (i >= w.size() || w[i] != "at" || i + 1 >= w.size()) {
      throw ScriptError(line_no, "expected 'at <path>'");
    }
  };
  auto no_trailing = [&](std::size_t used) {
    if (w.size() > used) {
      throw ScriptError(line_no, "unexpected '" + w[used] + "'");
    }
  };
  const std::string& head = w[0];
  if (head == "hyp") {
    if (w.size() < 2) throw ScriptError(line_no, "expected 'hyp <id> [rev] at <path>'");
    ProofStep::ApplyHyp s;
    s.name = w[1];
    std::size_t i = 2;
    if (i < w.size() && w[i] == "rev") {
      s.dir = Direction::RightToLeft;
      ++i;
    }
    expect_at(i);
    s.path = parse_path_word(w[i + 1], line_no);
    i += 2;
    if (i < w.size() && w[i] == "span") {
      if (i + 2 >= w.size()) throw ScriptError(line_no, "expected 'span <lo> <hi>'");
      s.span = Span{parse_index(w[i + 1], line_no, "span lo"),
                    parse_index(w[i + 2], line_no, "span hi")};
      i += 3;
    }
    no_trailing(i);
    return ProofStep{std::move(s)};
  }
  if (head == "flatten") {
    expect_at(1);
    no_trailing(3);
    return ProofStep{ProofStep::Flatten{parse_path_word(w[2], line_no)}};
  }
  if (head == "group") {
    if (w.size() < 3) throw ScriptError(line_no, "expected 'group <lo> <hi> at <path>'");
    Span span{parse_index(w[1], line_no, "group lo"), parse_index(w[2], line_no, "group hi")};
    expect_at(3);
    no_trailing(5);
    return ProofStep{ProofStep::Group{parse_path_word(w[4], line_no), span}};
  }
  if (head == "ungroup") {
    if (w.size() < 2) throw ScriptError(line_no, "expected 'ungroup <k> at <path>'");
    std::size_t index = parse_index(w[1], line_no, "argument index");
    expect_at(2);
    no_trailing(4);
    return ProofStep{ProofStep::Ungroup{parse_path_word(w[3], line_no), index}};
  }
  if (head == "attl" || head == "attr") {
    expect_at(1);
    no_trailing(3);
    return ProofStep{ProofStep::AttContract{parse_path_word(w[2], line_no),
                                            head == "attl" ? Side::Left : Side::Right}};
  }
  if (head == "unattl" || head == "unattr") {
    expect_at(1);
    no_trailing(3);
    return ProofStep{ProofStep::AttExpand{parse_path_word(w[2], line_no),
                                          head == "unattl" ? Side::Left : Side::Right}};
  }
  throw ScriptError(line_no, "unknown proof step '" + head + "'");
}

// The line format separates equations with '=' and hypothesis heads with
// ':'; a table whose kernels contain those characters cannot be scripted.
void check_scriptable(const OperatorTable& table, std::size_t line_no) {
  auto offends = [](const std::string& sym) {
    return sym.find('=') != std::string::npos || sym.find(':') != std::string::npos;
  };
  for (const KernelSpec& k : table.kernels()) {
    if (offends(k.symbol)) {
      throw ScriptError(line_no, "kernel '" + k.symbol + "' cannot appear in script files");
    }
  }
  for (const auto& [alias, target] : table.aliases()) {
    if (offends(alias)) {
      throw ScriptError(line_no, "alias '" + alias + "' cannot appear in script files");
    }
  }
}

}  // namespace

ProofScript parse_script(const std::string& text, const std::filesystem::path& base_dir) {
  std::optional<std::string> theory;
  std::optional<OperatorTable> table;
  std::optional<std::string> table_path;
  std::vector<Hypothesis> hypotheses;
  std::set<std::string> hyp_names;
  std::optional<std::pair<Term, Term>> goal;
  std::vector<ProofStep> steps;

  enum class Section { Header, Proof, Done };
  Section section = Section::Header;
  bool terms_started = false;

  auto resolved_table = [&]() -> const OperatorTable& {
    terms_started = true;
    return table ? *table : OperatorTable::arithmetic();
  };

  std::istringstream in(text);
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string> w = words_of(line);

    if (section == Section::Done) {
      throw ScriptError(line_no, "content after 'qed'");
    }
    if (section == Section::Proof) {
      if (line == "qed") {
        section = Section::Done;
        continue;
      }
      steps.push_back(parse_step_line(w, line_no));
      continue;
    }

    const std::string& head = w[0];
    if (head == "theory") {
      if (theory) throw ScriptError(line_no, "duplicate 'theory' line");
      if (w.size() != 2) throw ScriptError(line_no, "expected 'theory <name>'");
      theory = w[1];
    } else if (head == "table") {
      if (table) throw ScriptError(line_no, "duplicate 'table' line");
      if (terms_started) {
        throw ScriptError(line_no, "'table' must precede hypotheses and the goal");
      }
      if (w.size() != 2) throw ScriptError(line_no, "expected 'table <path>'");
      std::filesystem::path p(w[1]);
      try {
        table = load_table(p.is_absolute() ? p : base_dir / p);
      } catch (const ValidationError& e) {
        throw ScriptError(line_no, e.what());
      }
      table_path = w[1];
      check_scriptable(*table, line_no);
    } else if (head == "hyp") {
      std::size_t colon = line.find(':');
      if (colon == std::string::npos) {
        throw ScriptError(line_no, "expected 'hyp <id> : <term> = <term>'");
      }
      std::vector<std::string> lead = words_of(line.substr(0, colon));
      if (lead.size() != 2) {
        throw ScriptError(line_no, "expected 'hyp <id> : <term> = <term>'");
      }
      if (!hyp_names.insert(lead[1]).second) {
        throw ScriptError(line_no, "duplicate hypothesis name '" + lead[1] + "'");
      }
      auto [lhs, rhs] = parse_equation(line.substr(colon + 1), resolved_table(), line_no);
      try {
        hypotheses.emplace_back(lead[1], std::move(lhs), std::move(rhs));
      } catch (const std::invalid_argument& e) {
        throw ScriptError(line_no, e.what());
      }
    } else if (head == "goal") {
      if (goal) throw ScriptError(line_no, "duplicate 'goal' line");
      std::size_t colon = line.find(':');
      if (colon == std::string::npos || trim(line.substr(0, colon)) != "goal") {
        throw ScriptError(line_no, "expected 'goal : <term> = <term>'");
      }
      goal = parse_equation(line.substr(colon + 1), resolved_table(), line_no);
    } else if (head == "proof") {
      if (!goal) throw ScriptError(line_no, "'proof' before 'goal'");
      section = Section::Proof;
    } else {
      throw ScriptError(line_no, "unexpected '" + head + "' in script header");
    }
  }
  if (!theory) throw ScriptError(line_no, "missing 'theory' line");
  if (!goal) throw ScriptError(line_no, "missing 'goal' line");
  if (section == Section::Header) throw ScriptError(line_no, "missing 'proof' section");
  if (section == Section::Proof) throw ScriptError(line_no, "missing 'qed'");

  return ProofScript{
      .theory = std::move(*theory),
      .table = table ? std::move(*table) : OperatorTable::arithmetic(),
      .table_path = std::move(table_path),
      .hypotheses = std::move(hypotheses),
      .goal_lhs = std::move(goal->first),
      .goal_rhs = std::move(goal->second),
      .steps = std::move(steps),
  };
}

ProofScript load_script(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ScriptError(0, "cannot open proof script '" + path.string() + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_script(buf.str(), path.has_parent_path() ? path.parent_path() : ".");
}

ProofStep parse_proof_step(const std::string& line) {
  std::vector<std::string> w = words_of(line);
  if (w.empty()) throw ScriptError(1, "empty step");
  return parse_step_line(w, 1);
}

std::string format_script(const ProofScript& script) {
  std::string out = "theory " + script.theory + "\n";
  if (script.table_path) out += "table " + *script.table_path + "\n";
  for (const Hypothesis& h : script.hypotheses) {
    out += "hyp " + h.name + " : " + print(h.lhs) + " = " + print(h.rhs) + "\n";
  }
  out += "goal : " + print(script.goal_lhs) + " = " + print(script.goal_rhs) + "\n";
  out += "proof\n";
  for (const ProofStep& s : script.steps) {
    out += "  " + format_step(s) + "\n";
  }
  out += "qed\n";
  return out;
}

}  // namespace polyfix
