#include "polyfix/rewrite.hpp"

namespace polyfix {

const char* to_string(RewriteErrorKind kind) {
  switch (kind) {
    case RewriteErrorKind::BadPath: return "BadPath";
    case RewriteErrorKind::BadSpan: return "BadSpan";
    case RewriteErrorKind::NotPoly: return "NotPoly";
    case RewriteErrorKind::ArityTooSmall: return "ArityTooSmall";
    case RewriteErrorKind::ArityTooLarge: return "ArityTooLarge";
    case RewriteErrorKind::NoRedex: return "NoRedex";
    case RewriteErrorKind::SpanTooSmall: return "SpanTooSmall";
    case RewriteErrorKind::SpanFull: return "SpanFull";
    case RewriteErrorKind::NotFlat: return "NotFlat";
  }
  return "Unknown";
}

namespace {

std::string path_string(const Path& p) {
  std::string s = "root";
  for (std::size_t i : p) s += "." + std::to_string(i);
  return s;
}

[[noreturn]] void bad_path(const Path& p) {
  throw RewriteError(RewriteErrorKind::BadPath, "path " + path_string(p) + " does not resolve");
}

void check_span(const Term& poly, Span s, const Path& p) {
  if (s.lo > s.hi || s.hi >= poly.arity()) {
    throw RewriteError(RewriteErrorKind::BadSpan,
                       "span " + std::to_string(s.lo) + ".." + std::to_string(s.hi) +
                           " is out of range for arity " + std::to_string(poly.arity()) +
                           " at " + path_string(p));
  }
}

const Term& require_poly(const Term& t, const Path& p) {
  const Term& sub = subterm_at(t, p);
  if (!sub.is_poly()) {
    throw RewriteError(RewriteErrorKind::NotPoly,
                       "subterm at " + path_string(p) + " is not a poly-infix application");
  }
  return sub;
}

}  // namespace

const Term& subterm_at(const Term& t, const Path& p) {
  const Term* cur = &t;
  for (std::size_t idx : p) {
    if (idx >= cur->arity()) bad_path(p);
    cur = &cur->args()[idx];
  }
  return *cur;
}

Term replace_at(const Term& t, const Path& p, const Term& replacement) {
  if (p.empty()) return replacement;
  // Rebuild the spine; everything off the path is shared.
  std::vector<const Term*> spine;
  spine.reserve(p.size());
  const Term* cur = &t;
  for (std::size_t idx : p) {
    if (idx >= cur->arity()) bad_path(p);
    spine.push_back(cur);
    cur = &cur->args()[idx];
  }
  Term result = replacement;
  for (std::size_t level = p.size(); level-- > 0;) {
    const Term& parent = *spine[level];
    std::vector<Term> args(parent.args().begin(), parent.args().end());
    args[p[level]] = result;
    result = parent.with_args(std::move(args));
  }
  return result;
}

Term att_contract(const Term& t, const Path& p, Side side) {
  const Term& sub = require_poly(t, p);
  std::size_t n = sub.arity();
  if (n < 3) {
    throw RewriteError(RewriteErrorKind::ArityTooSmall,
                       "association step needs arity >= 3, got " + std::to_string(n) + " at " +
                           path_string(p));
  }
  auto args = sub.args();
  std::vector<Term> out;
  out.reserve(n - 1);
  if (side == Side::Left) {
    out.push_back(Term::poly_app(sub.symbol(), {args[0], args[1]}));
    out.insert(out.end(), args.begin() + 2, args.end());
  } else {
    out.insert(out.end(), args.begin(), args.end() - 2);
    out.push_back(Term::poly_app(sub.symbol(), {args[n - 2], args[n - 1]}));
  }
  return replace_at(t, p, sub.with_args(std::move(out)));
}

Term att_expand(const Term& t, const Path& p, Side side) {
  const Term& sub = subterm_at(t, p);
  auto no_redex = [&p](const std::string& why) -> RewriteError {
    return RewriteError(RewriteErrorKind::NoRedex, why + " at " + path_string(p));
  };
  if (!sub.is_poly() || sub.arity() < 2) {
    throw no_redex("expansion needs a poly-infix application of arity >= 2");
  }
  std::size_t pos = side == Side::Left ? 0 : sub.arity() - 1;
  const Term& nested = sub.args()[pos];
  if (!nested.is_poly(sub.symbol()) || nested.arity() != 2) {
    throw no_redex(std::string("the ") + (side == Side::Left ? "first" : "last") +
                   " argument is not a binary application of the same kernel");
  }
  std::vector<Term> out;
  out.reserve(sub.arity() + 1);
  for (std::size_t i = 0; i < sub.arity(); ++i) {
    if (i == pos) {
      out.insert(out.end(), nested.args().begin(), nested.args().end());
    } else {
      out.push_back(sub.args()[i]);
    }
  }
  return replace_at(t, p, sub.with_args(std::move(out)));
}

Term flatten(const Term& t) {
  if (t.is_atom()) return t;
  std::vector<Term> kids;
  kids.reserve(t.arity());
  for (const Term& a : t.args()) kids.push_back(flatten(a));
  if (!t.is_poly()) return t.with_args(std::move(kids));
  std::vector<Term> out;
  out.reserve(kids.size());
  for (const Term& k : kids) {
    if (k.is_poly(t.symbol())) {
      out.insert(out.end(), k.args().begin(), k.args().end());
    } else {
      out.push_back(k);
    }
  }
  return t.with_args(std::move(out));
}

Term group(const Term& t, const Path& p, Span s) {
  const Term& sub = require_poly(t, p);
  check_span(sub, s, p);
  std::size_t n = sub.arity();
  if (s.size() < 2) {
    throw RewriteError(RewriteErrorKind::SpanTooSmall,
                       "grouping needs at least two arguments, span covers " +
                           std::to_string(s.size()));
  }
  if (s.size() == n) {
    throw RewriteError(RewriteErrorKind::SpanFull,
                       "grouping all " + std::to_string(n) + " arguments would leave arity 1");
  }
  auto args = sub.args();
  std::vector<Term> out(args.begin(), args.begin() + s.lo);
  out.push_back(Term::poly_app(sub.symbol(),
                               std::vector<Term>(args.begin() + s.lo, args.begin() + s.hi + 1)));
  out.insert(out.end(), args.begin() + s.hi + 1, args.end());
  return replace_at(t, p, sub.with_args(std::move(out)));
}

Term ungroup(const Term& t, const Path& p, std::size_t index) {
  const Term& sub = require_poly(t, p);
  if (index >= sub.arity()) {
    throw RewriteError(RewriteErrorKind::BadSpan,
                       "argument index " + std::to_string(index) + " out of range for arity " +
                           std::to_string(sub.arity()) + " at " + path_string(p));
  }
  const Term& nested = sub.args()[index];
  if (!nested.is_poly(sub.symbol())) {
    throw RewriteError(RewriteErrorKind::NoRedex,
                       "argument " + std::to_string(index) +
                           " is not an application of the same kernel at " + path_string(p));
  }
  auto args = sub.args();
  std::vector<Term> out(args.begin(), args.begin() + index);
  out.insert(out.end(), nested.args().begin(), nested.args().end());
  out.insert(out.end(), args.begin() + index + 1, args.end());
  return replace_at(t, p, sub.with_args(std::move(out)));
}

namespace {

Term fold(const Term& t, Side side) {
  if (t.is_atom()) return t;
  std::vector<Term> kids;
  kids.reserve(t.arity());
  for (const Term& a : t.args()) kids.push_back(fold(a, side));
  if (!t.is_poly() || kids.size() <= 2) return t.with_args(std::move(kids));
  if (side == Side::Left) {
    Term acc = kids.front();
    for (std::size_t i = 1; i < kids.size(); ++i) {
      acc = Term::poly_app(t.symbol(), {acc, kids[i]});
    }
    return acc;
  }
  Term acc = kids.back();
  for (std::size_t i = kids.size() - 1; i-- > 0;) {
    acc = Term::poly_app(t.symbol(), {kids[i], acc});
  }
  return acc;
}

void bracketings_over(const std::string& kernel, std::span<const Term> leaves,
                      std::vector<Term>& out) {
  if (leaves.size() == 1) {
    out.push_back(leaves.front());
    return;
  }
  std::vector<Term> left, right;
  for (std::size_t split = 1; split < leaves.size(); ++split) {
    left.clear();
    bracketings_over(kernel, leaves.subspan(0, split), left);
    right.clear();
    bracketings_over(kernel, leaves.subspan(split), right);
    for (const Term& l : left) {
      for (const Term& r : right) {
        out.push_back(Term::poly_app(kernel, {l, r}));
      }
    }
  }
}

}  // namespace

Term fold_left(const Term& t) { return fold(t, Side::Left); }
Term fold_right(const Term& t) { return fold(t, Side::Right); }

std::vector<Term> enumerate_bracketings(const Term& t) {
  if (!t.is_poly() || t.arity() < 2) {
    throw RewriteError(RewriteErrorKind::NotFlat,
                       "bracketing enumeration needs a flat poly-infix application of arity >= 2");
  }
  for (const Term& a : t.args()) {
    if (a.is_poly(t.symbol())) {
      throw RewriteError(RewriteErrorKind::NotFlat,
                         "term has a same-kernel argument; flatten it first");
    }
  }
  if (t.arity() > kMaxBracketingArity) {
    throw RewriteError(RewriteErrorKind::ArityTooLarge,
                       "arity " + std::to_string(t.arity()) + " exceeds the enumeration cap of " +
                           std::to_string(kMaxBracketingArity));
  }
  std::vector<Term> out;
  bracketings_over(t.symbol(), t.args(), out);
  return out;
}

bool equiv_pure(const Term& s, const Term& t) { return flatten(s) == flatten(t); }

}  // namespace polyfix
