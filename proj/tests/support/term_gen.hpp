// Seeded random term generation shared by the property tests and the
// acceptance suite.

#pragma once

#include <random>
#include <string>
#include <vector>

#include "polyfix/term.hpp"

namespace polyfix::testing {

/// Table used by most generator-driven tests: two kernels ordered by
/// precedence, one unordered kernel, two fixed operators, one named
/// constant.
inline const OperatorTable& test_table() {
  static const OperatorTable table(
      "test",
      {KernelSpec{"+", std::nullopt, 1}, KernelSpec{"*", std::nullopt, 2},
       KernelSpec{"||", std::nullopt, std::nullopt}},
      {{"f", 1}, {"g", 2}},
      {"c0"});
  return table;
}

class TermGen {
 public:
  TermGen(const OperatorTable& table, std::uint64_t seed) : table_(table), rng_(seed) {}

  std::mt19937_64& rng() { return rng_; }

  std::size_t pick(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
  }

  bool chance(double p) { return std::uniform_real_distribution<double>(0, 1)(rng_) < p; }

  Term var() {
    static const char* names[] = {"x", "y", "z", "u", "v", "w"};
    return Term::var(names[pick(0, 5)]);
  }

  Term atom() {
    switch (pick(0, 2)) {
      case 0:
        return var();
      case 1:
        return Term::constant(std::to_string(pick(0, 9)));
      default:
        if (!table_.constants().empty()) {
          auto it = table_.constants().begin();
          std::advance(it, pick(0, table_.constants().size() - 1));
          return Term::constant(*it);
        }
        return var();
    }
  }

  const KernelSpec& kernel() {
    return table_.kernels()[pick(0, table_.kernels().size() - 1)];
  }

  /// Arbitrary well-formed term; nesting depth at most `depth`.
  Term term(std::size_t depth) {
    if (depth == 0 || chance(0.3)) return atom();
    if (!table_.fixed_ops().empty() && chance(0.25)) {
      auto it = table_.fixed_ops().begin();
      std::advance(it, pick(0, table_.fixed_ops().size() - 1));
      std::vector<Term> args;
      for (std::size_t i = 0; i < it->second; ++i) args.push_back(term(depth - 1));
      return Term::fixed_app(it->first, std::move(args));
    }
    std::vector<Term> args;
    std::size_t arity = pick(2, 4);
    for (std::size_t i = 0; i < arity; ++i) args.push_back(term(depth - 1));
    return Term::poly_app(kernel().symbol, std::move(args));
  }

  /// A term that is not a same-kernel application at top level, fit for
  /// a context slot or a flat argument position.
  Term non_kernel_term(const std::string& kernel_symbol, std::size_t depth) {
    for (;;) {
      Term t = term(depth);
      if (!t.is_poly(kernel_symbol)) return t;
    }
  }

  /// Flat application: arity `arity`, no same-kernel argument.
  Term flat_poly(const std::string& kernel_symbol, std::size_t arity, std::size_t depth = 1) {
    std::vector<Term> args;
    for (std::size_t i = 0; i < arity; ++i) {
      args.push_back(non_kernel_term(kernel_symbol, depth));
    }
    return Term::poly_app(kernel_symbol, std::move(args));
  }

  PsiContext context(const std::string& kernel_symbol, std::size_t max_side = 3,
                     std::size_t depth = 1) {
    std::vector<Term> prefix, suffix;
    std::size_t np = pick(0, max_side), ns = pick(0, max_side);
    for (std::size_t i = 0; i < np; ++i) {
      prefix.push_back(non_kernel_term(kernel_symbol, depth));
    }
    for (std::size_t i = 0; i < ns; ++i) {
      suffix.push_back(non_kernel_term(kernel_symbol, depth));
    }
    return PsiContext(kernel_symbol, std::move(prefix), std::move(suffix));
  }

 private:
  const OperatorTable& table_;
  std::mt19937_64 rng_;
};

}  // namespace polyfix::testing
