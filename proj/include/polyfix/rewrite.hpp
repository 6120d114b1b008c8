// Directed rewriting for poly-infix terms: the two association axiom
// schemes as primitive steps, bracket introduction/deletion, flattening
// to the bracket-free normal form, and equivalence in the pure theory.

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "polyfix/term.hpp"

namespace polyfix {

/// 0-based argument indices from the root; empty addresses the root.
using Path = std::vector<std::size_t>;

/// Inclusive range of argument positions of one poly-infix application.
struct Span {
  std::size_t lo = 0;
  std::size_t hi = 0;

  std::size_t size() const { return hi - lo + 1; }
  bool operator==(const Span&) const = default;
};

enum class Side { Left, Right };

enum class RewriteErrorKind {
  BadPath,
  BadSpan,
  NotPoly,
  ArityTooSmall,
  ArityTooLarge,
  NoRedex,
  SpanTooSmall,
  SpanFull,
  NotFlat,
};

const char* to_string(RewriteErrorKind kind);

class RewriteError : public std::runtime_error {
 public:
  RewriteError(RewriteErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}
  RewriteErrorKind kind() const { return kind_; }

 private:
  RewriteErrorKind kind_;
};

const Term& subterm_at(const Term& t, const Path& p);
Term replace_at(const Term& t, const Path& p, const Term& replacement);

/// Association step at the addressed application (arity >= 3): wraps the
/// first two (Left) or last two (Right) arguments into a nested binary
/// application of the same kernel, decreasing the arity by one.
Term att_contract(const Term& t, const Path& p, Side side);

/// Inverse step: splices a binary same-kernel application sitting in the
/// first (Left) or last (Right) argument position back into its parent.
Term att_expand(const Term& t, const Path& p, Side side);

/// Bracket-free normal form: bottom-up, every same-kernel argument is
/// spliced into its parent.  Units are left alone; applications of
/// arity 0 or 1 survive unless their argument shares the kernel.
Term flatten(const Term& t);

/// Wraps arguments lo..hi of the addressed application into a nested
/// same-kernel application.  The span must cover at least two arguments
/// and must not cover all of them.
Term group(const Term& t, const Path& p, Span s);

/// Splices argument `index` (a same-kernel application) into its parent;
/// inverse of group.
Term ungroup(const Term& t, const Path& p, std::size_t index);

/// Fully left- (right-) associated form: every application of arity > 2
/// becomes a nest of binary ones.
Term fold_left(const Term& t);
Term fold_right(const Term& t);

inline constexpr std::size_t kMaxBracketingArity = 12;

/// All binary trees over the argument sequence of a flat application,
/// Catalan(arity - 1) of them, leaves in original order.  Arity is
/// capped at kMaxBracketingArity.
std::vector<Term> enumerate_bracketings(const Term& t);

/// Equivalence in the theory generated by the association schemes alone:
/// equal flat normal forms.
bool equiv_pure(const Term& s, const Term& t);

}  // namespace polyfix
