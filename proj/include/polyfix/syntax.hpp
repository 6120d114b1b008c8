// Concrete syntax: a parser that reads an unbracketed operator chain as
// one n-ary application, and a structure-preserving printer whose output
// always parses back to the same term.
//
// Grammar:
//   term  := chain
//   chain := atom { KERNEL atom }
//   atom  := IDENT | NUMBER | IDENT "(" term { "," term } ")" | "(" term ")"

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "polyfix/term.hpp"

namespace polyfix {

enum class DiagnosticKind {
  MixedKernels,
  ArityMismatch,
  UnknownSymbol,
  UnbalancedBrackets,
  EmptyInput,
  BadToken,
};

const char* to_string(DiagnosticKind kind);

struct SourcePos {
  std::size_t offset = 0;  // byte offset into the input
  std::size_t line = 1;    // 1-based
  std::size_t column = 1;  // 1-based, in bytes
};

struct ParseDiagnostic {
  DiagnosticKind kind;
  SourcePos pos;
  std::string message;

  /// "line:column: message" for terminal output.
  std::string to_string() const;
};

class ParseResult {
 public:
  static ParseResult success(Term t) { return ParseResult(std::move(t)); }
  static ParseResult failure(ParseDiagnostic d) { return ParseResult(std::move(d)); }

  bool ok() const { return term_.has_value(); }
  explicit operator bool() const { return ok(); }

  const Term& term() const { return *term_; }
  const ParseDiagnostic& diagnostic() const { return *diagnostic_; }

 private:
  explicit ParseResult(Term t) : term_(std::move(t)) {}
  explicit ParseResult(ParseDiagnostic d) : diagnostic_(std::move(d)) {}

  std::optional<Term> term_;
  std::optional<ParseDiagnostic> diagnostic_;
};

/// Parses `text` over `table`.  A chain of k identical kernel tokens
/// yields one application of arity k+1; distinct kernels may meet
/// unbracketed only when both declare precedences and they differ.
ParseResult parse(std::string_view text, const OperatorTable& table);

/// Canonical form: one space around kernel symbols, no space inside
/// parentheses, every nested poly-infix argument bracketed.  The output
/// re-parses to a structurally identical term.  Applications of arity
/// < 2 have no concrete syntax and raise std::invalid_argument.
std::string print(const Term& t);

/// Operator-table file format (JSON): {"sort": ..., "kernels":
/// [{"symbol", "unit"?, "precedence"?}], "fixed_ops": {name: arity},
/// "constants": [...]}.  Throws ValidationError on malformed input.
OperatorTable table_from_json(const std::string& json_text);
std::string table_to_json(const OperatorTable& table);
OperatorTable load_table(const std::filesystem::path& path);

}  // namespace polyfix
