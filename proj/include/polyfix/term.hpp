// Core term representation for poly-infix operator families.
//
// A poly-infix application is a single n-ary application of one infix
// kernel symbol ("2+2+3" is one ternary node, not two nested binary
// ones).  Nested applications of the same kernel are legal terms and
// denote explicitly bracketed input; the flat form is the normal form
// (see rewrite.hpp).

#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace polyfix {

/// Raised when a table or term fails well-formedness checks.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One poly-infix kernel: the binary symbol from which the whole n-ary
/// family is generated.  Declaring a unit makes arities 0 and 1 legal.
struct KernelSpec {
  std::string symbol;
  std::optional<std::string> unit;
  std::optional<int> precedence;  // higher binds tighter

  bool operator==(const KernelSpec&) const = default;
};

class Term;

/// Signature of one sort: its poly-infix kernels, fixed-arity operators
/// and declared constants.  Immutable after construction.
class OperatorTable {
 public:
  /// Throws ValidationError on malformed or clashing symbols.  Aliases
  /// map extra lexical spellings onto a declared kernel symbol; they
  /// exist only for the lexer and never appear in terms.
  OperatorTable(std::string sort, std::vector<KernelSpec> kernels,
                std::map<std::string, std::size_t> fixed_ops = {},
                std::set<std::string> constants = {},
                std::map<std::string, std::string> aliases = {});

  /// Built-in table: kernels + and * with * binding tighter, and the
  /// middle-dot spelling accepted as an alias for *.
  static const OperatorTable& arithmetic();

  const std::string& sort() const { return sort_; }
  const std::vector<KernelSpec>& kernels() const { return kernels_; }
  const std::map<std::string, std::size_t>& fixed_ops() const { return fixed_ops_; }
  const std::set<std::string>& constants() const { return constants_; }
  const std::map<std::string, std::string>& aliases() const { return aliases_; }

  /// Looks up a kernel by declared symbol or alias; null when unknown.
  const KernelSpec* find_kernel(std::string_view symbol) const;
  std::optional<std::size_t> fixed_arity(std::string_view name) const;
  bool is_constant(std::string_view literal) const;

  /// Full well-formedness check of a term against this table.
  /// Throws ValidationError with a description of the first violation.
  void validate(const Term& t) const;
  bool well_formed(const Term& t) const noexcept;

 private:
  std::string sort_;
  std::vector<KernelSpec> kernels_;
  std::map<std::string, std::size_t> fixed_ops_;
  std::set<std::string> constants_;
  std::map<std::string, std::string> aliases_;
};

/// An immutable first-order term.  Values are cheap to copy (shared
/// nodes) and safe to share across threads.
class Term {
 public:
  enum class Kind { Var, Const, FixedApp, PolyApp };

  static Term var(std::string name);
  static Term constant(std::string literal);
  static Term fixed_app(std::string symbol, std::vector<Term> args);

  /// Poly-infix application of arity >= 2; throws std::invalid_argument
  /// below that.  Arities 0 and 1 only make sense for kernels with a
  /// declared unit; build those with poly_app_short.
  static Term poly_app(std::string kernel, std::vector<Term> args);
  static Term poly_app_short(std::string kernel, std::vector<Term> args);

  Kind kind() const { return node_->kind; }
  /// Variable name, constant literal, or operator symbol.
  const std::string& symbol() const { return node_->symbol; }
  std::span<const Term> args() const { return node_->args; }
  std::size_t arity() const { return node_->args.size(); }

  bool is_atom() const { return kind() == Kind::Var || kind() == Kind::Const; }
  bool is_poly() const { return kind() == Kind::PolyApp; }
  bool is_poly(std::string_view kernel) const {
    return is_poly() && node_->symbol == kernel;
  }
  bool is_var(std::string_view name) const {
    return kind() == Kind::Var && node_->symbol == name;
  }
  bool is_const(std::string_view literal) const {
    return kind() == Kind::Const && node_->symbol == literal;
  }

  /// Same kind and symbol, different argument list.  Fixed applications
  /// keep their arity; poly applications may change arity (splicing).
  Term with_args(std::vector<Term> args) const;

  std::size_t hash() const { return node_->hash; }

  friend bool operator==(const Term& a, const Term& b);
  friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }

 private:
  struct Node {
    Kind kind;
    std::string symbol;
    std::vector<Term> args;
    std::size_t hash;
  };

  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Term make(Kind kind, std::string symbol, std::vector<Term> args);

  std::shared_ptr<const Node> node_;
};

/// Structural equality; distinguishes a flat ternary application from
/// nested binary ones.
inline bool equal_syntactic(const Term& a, const Term& b) { return a == b; }

std::size_t hash_value(const Term& t);

/// Length of t read as an expression of the given kernel: the arity of
/// the root application when its kernel matches, 1 otherwise (anything
/// else counts as an expression of length 1).
std::size_t psi_length(const Term& t, std::string_view kernel);

bool has_variables(const Term& t);
void collect_variables(const Term& t, std::set<std::string>& out);

/// A flat poly-infix application with one hole: prefix arguments, the
/// hole, then suffix arguments.  Slot terms must not be applications of
/// the same kernel at top level (bracketed subterms are fine).
class PsiContext {
 public:
  /// Throws ValidationError when a slot violates the flatness rule.
  PsiContext(std::string kernel, std::vector<Term> prefix, std::vector<Term> suffix);

  const std::string& kernel() const { return kernel_; }
  std::span<const Term> prefix() const { return prefix_; }
  std::span<const Term> suffix() const { return suffix_; }

  /// Number of argument slots including the hole: |prefix| + |suffix| + 1.
  std::size_t length() const { return prefix_.size() + suffix_.size() + 1; }

  /// Splicing substitution: an argument list of the same kernel melts
  /// into the context (brackets vanish); anything else fills the hole
  /// as a single argument.  A one-element result collapses to that
  /// element, so no unit is ever required.
  Term substitute(const Term& t) const;

 private:
  std::string kernel_;
  std::vector<Term> prefix_;
  std::vector<Term> suffix_;
};

/// Free-function spellings of the context operations.
inline std::size_t context_length(const PsiContext& c) { return c.length(); }
inline Term subst_context(const PsiContext& c, const Term& t) { return c.substitute(t); }

}  // namespace polyfix

template <>
struct std::hash<polyfix::Term> {
  std::size_t operator()(const polyfix::Term& t) const noexcept { return t.hash(); }
};
