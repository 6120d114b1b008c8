// Equational proof checking for poly-infix expressions.
//
// The central step kind applies a ground hypothesis P = Q to a segment
// of a poly-infix application's argument list: the segment matching one
// side is replaced by the other, splicing argument lists so that no
// bracket pair is ever touched.  Explicit association, grouping and
// flattening steps cover the rest of the pure theory.

#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "polyfix/rewrite.hpp"
#include "polyfix/term.hpp"

namespace polyfix {

enum class Direction { LeftToRight, RightToLeft };

enum class ProofErrorKind { NoMatch, UnknownHypothesis };

const char* to_string(ProofErrorKind kind);

class ProofError : public std::runtime_error {
 public:
  ProofError(ProofErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}
  ProofErrorKind kind() const { return kind_; }

 private:
  ProofErrorKind kind_;
};

/// A named ground equation.  Construction rejects sides with variables.
struct Hypothesis {
  std::string name;
  Term lhs;
  Term rhs;

  Hypothesis(std::string name, Term lhs, Term rhs);
};

struct ProofStep {
  struct ApplyHyp {
    std::string name;
    Direction dir = Direction::LeftToRight;
    Path path;
    std::optional<Span> span;
  };
  struct Flatten {
    Path path;
  };
  struct Group {
    Path path;
    Span span;
  };
  struct Ungroup {
    Path path;
    std::size_t index = 0;
  };
  struct AttContract {
    Path path;
    Side side = Side::Left;
  };
  struct AttExpand {
    Path path;
    Side side = Side::Left;
  };

  std::variant<ApplyHyp, Flatten, Group, Ungroup, AttContract, AttExpand> op;
};

/// One step rendered in the script grammar, e.g. "hyp h1 at root span 0 1".
std::string format_step(const ProofStep& step);

struct ProofScript {
  std::string theory;
  OperatorTable table;
  std::optional<std::string> table_path;  // as written in the source file
  std::vector<Hypothesis> hypotheses;
  Term goal_lhs;
  Term goal_rhs;
  std::vector<ProofStep> steps;
};

struct StepRecord {
  ProofStep step;
  Term before;
  std::optional<Term> after;
  std::optional<std::string> error_kind;
  std::optional<std::string> error_message;
};

struct CheckReport {
  enum class Verdict { Proved, Failed };

  Verdict verdict = Verdict::Failed;
  std::vector<StepRecord> trace;
  std::optional<std::size_t> failing_step;  // 0-based index into trace
  std::optional<std::string> failure_reason;

  bool proved() const { return verdict == Verdict::Proved; }
};

/// Applies hypothesis h at path p.  With a span, the subterm at p must
/// be a poly-infix application and the argument segment, read as an
/// expression (the bare argument when the span covers one slot), must
/// equal the source side; the target side is spliced in, bracket-free.
/// Without a span, the whole subterm at p is replaced.
Term apply_hyp(const Term& t, const Hypothesis& h, Direction dir, const Path& p,
               std::optional<Span> s = std::nullopt);

/// Applies one step, resolving hypothesis names against `hypotheses`.
/// Throws RewriteError or ProofError when the step does not apply.
Term apply_proof_step(const Term& t, const ProofStep& step,
                      std::span<const Hypothesis> hypotheses);

/// Runs the steps from goal_lhs.  Proved iff every step succeeds and the
/// final term is syntactically equal to goal_rhs.  Failures keep the
/// full prefix trace.
CheckReport check_script(const ProofScript& script);

/// Scripts proving the peeled-argument identities of the association
/// schemes for arity n+1 (2 <= n <= 10):
///   Left:  the first n arguments fold into one nested application,
///   Right: the last n arguments do.
/// Both check as Proved using association steps only.
ProofScript derive_induction_lemma(std::size_t n, const std::string& kernel, Side side);

class ScriptError : public std::runtime_error {
 public:
  ScriptError(std::size_t line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Line-oriented script format; see README for the grammar.  `base_dir`
/// anchors relative table paths.
ProofScript parse_script(const std::string& text,
                         const std::filesystem::path& base_dir = ".");
ProofScript load_script(const std::filesystem::path& path);
std::string format_script(const ProofScript& script);

/// Parses one line of the step grammar ("hyp h1 at root span 0 1", ...).
ProofStep parse_proof_step(const std::string& line);

std::string format_path(const Path& p);
Path parse_path(const std::string& text);  // throws std::invalid_argument

}  // namespace polyfix
