#include "polyfix/term.hpp"

#include <algorithm>
#include <cctype>

namespace polyfix {

namespace {

bool is_ident_char(unsigned char c) {
  return std::isalnum(c) || c == '_';
}

bool is_ident(std::string_view s) {
  if (s.empty() || std::isdigit(static_cast<unsigned char>(s.front()))) return false;
  return std::all_of(s.begin(), s.end(),
                     [](char c) { return is_ident_char(static_cast<unsigned char>(c)); });
}

bool is_number(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return std::isdigit(static_cast<unsigned char>(c));
  });
}

// Kernel symbols, constants and fixed-op names are single lexer tokens:
// no whitespace, brackets or commas inside them.
void check_token_chars(std::string_view s, const char* what) {
  if (s.empty()) throw ValidationError(std::string(what) + " must be non-empty");
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' || c == ',') {
      throw ValidationError(std::string(what) + " '" + std::string(s) +
                            "' contains whitespace, parentheses, or commas");
    }
  }
}

// A kernel symbol is either identifier-shaped ("seq") or pure operator
// characters ("+", "||"); a mix of the two cannot be lexed unambiguously.
void check_operator_symbol(std::string_view s, const char* what) {
  check_token_chars(s, what);
  if (is_ident(s)) return;
  for (char c : s) {
    if (is_ident_char(static_cast<unsigned char>(c))) {
      throw ValidationError(std::string(what) + " '" + std::string(s) +
                            "' mixes identifier and operator characters");
    }
  }
}

std::size_t combine_hash(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

// --- Term ---------------------------------------------------------------

Term Term::make(Kind kind, std::string symbol, std::vector<Term> args) {
  std::size_t h = combine_hash(static_cast<std::size_t>(kind), std::hash<std::string>{}(symbol));
  for (const Term& a : args) h = combine_hash(h, a.hash());
  auto node = std::make_shared<const Node>(Node{kind, std::move(symbol), std::move(args), h});
  return Term(std::move(node));
}

Term Term::var(std::string name) {
  if (!is_ident(name)) {
    throw std::invalid_argument("variable name '" + name + "' is not an identifier");
  }
  return make(Kind::Var, std::move(name), {});
}

Term Term::constant(std::string literal) {
  if (literal.empty()) throw std::invalid_argument("constant literal must be non-empty");
  if (!is_ident(literal) && !is_number(literal)) {
    throw std::invalid_argument("constant literal '" + literal +
                                "' is neither an identifier nor a number");
  }
  return make(Kind::Const, std::move(literal), {});
}

Term Term::fixed_app(std::string symbol, std::vector<Term> args) {
  if (args.empty()) {
    throw std::invalid_argument("fixed operator '" + symbol + "' needs at least one argument");
  }
  return make(Kind::FixedApp, std::move(symbol), std::move(args));
}

Term Term::poly_app(std::string kernel, std::vector<Term> args) {
  if (args.size() < 2) {
    throw std::invalid_argument("poly-infix application of '" + kernel +
                                "' needs arity >= 2; use poly_app_short for unit kernels");
  }
  return make(Kind::PolyApp, std::move(kernel), std::move(args));
}

Term Term::poly_app_short(std::string kernel, std::vector<Term> args) {
  return make(Kind::PolyApp, std::move(kernel), std::move(args));
}

Term Term::with_args(std::vector<Term> args) const {
  switch (kind()) {
    case Kind::Var:
    case Kind::Const:
      throw std::invalid_argument("atoms take no arguments");
    case Kind::FixedApp:
      if (args.size() != arity()) {
        throw std::invalid_argument("fixed operator '" + symbol() + "' keeps its arity");
      }
      return make(Kind::FixedApp, symbol(), std::move(args));
    case Kind::PolyApp:
      return make(Kind::PolyApp, symbol(), std::move(args));
  }
  throw std::logic_error("unreachable");
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.node_->hash != b.node_->hash) return false;
  if (a.node_->kind != b.node_->kind || a.node_->symbol != b.node_->symbol) return false;
  if (a.node_->args.size() != b.node_->args.size()) return false;
  for (std::size_t i = 0; i < a.node_->args.size(); ++i) {
    if (!(a.node_->args[i] == b.node_->args[i])) return false;
  }
  return true;
}

std::size_t hash_value(const Term& t) { return t.hash(); }

std::size_t psi_length(const Term& t, std::string_view kernel) {
  return t.is_poly(kernel) ? t.arity() : 1;
}

bool has_variables(const Term& t) {
  if (t.kind() == Term::Kind::Var) return true;
  for (const Term& a : t.args()) {
    if (has_variables(a)) return true;
  }
  return false;
}

void collect_variables(const Term& t, std::set<std::string>& out) {
  if (t.kind() == Term::Kind::Var) out.insert(t.symbol());
  for (const Term& a : t.args()) collect_variables(a, out);
}

// --- OperatorTable -------------------------------------------------------

OperatorTable::OperatorTable(std::string sort, std::vector<KernelSpec> kernels,
                             std::map<std::string, std::size_t> fixed_ops,
                             std::set<std::string> constants,
                             std::map<std::string, std::string> aliases)
    : sort_(std::move(sort)),
      kernels_(std::move(kernels)),
      fixed_ops_(std::move(fixed_ops)),
      constants_(std::move(constants)),
      aliases_(std::move(aliases)) {
  if (sort_.empty()) throw ValidationError("sort name must be non-empty");

  std::set<std::string> seen;
  auto claim = [&seen](const std::string& tok, const char* what) {
    if (!seen.insert(tok).second) {
      throw ValidationError("symbol '" + tok + "' declared twice (" + what + ")");
    }
  };

  for (const KernelSpec& k : kernels_) {
    check_operator_symbol(k.symbol, "kernel symbol");
    claim(k.symbol, "kernel");
    if (k.unit) {
      check_token_chars(*k.unit, "kernel unit");
      if (!is_number(*k.unit) && constants_.find(*k.unit) == constants_.end()) {
        throw ValidationError("unit '" + *k.unit + "' of kernel '" + k.symbol +
                              "' is not a number and not a declared constant");
      }
    }
  }
  for (const auto& [name, arity] : fixed_ops_) {
    if (!is_ident(name)) {
      throw ValidationError("fixed operator '" + name + "' must be an identifier");
    }
    if (arity < 1) {
      throw ValidationError("fixed operator '" + name + "' must have arity >= 1");
    }
    claim(name, "fixed operator");
  }
  for (const std::string& c : constants_) {
    check_token_chars(c, "constant");
    if (!is_ident(c) && !is_number(c)) {
      throw ValidationError("constant '" + c + "' is neither an identifier nor a number");
    }
    claim(c, "constant");
  }
  for (const auto& [alias, target] : aliases_) {
    check_operator_symbol(alias, "kernel alias");
    claim(alias, "alias");
    if (std::none_of(kernels_.begin(), kernels_.end(),
                     [&target](const KernelSpec& k) { return k.symbol == target; })) {
      throw ValidationError("alias '" + alias + "' points at undeclared kernel '" + target + "'");
    }
  }
}

const OperatorTable& OperatorTable::arithmetic() {
  static const OperatorTable table(
      "arith",
      {KernelSpec{"+", std::nullopt, 1}, KernelSpec{"*", std::nullopt, 2}},
      {}, {}, {{"\xc2\xb7", "*"}});
  return table;
}

const KernelSpec* OperatorTable::find_kernel(std::string_view symbol) const {
  auto alias = aliases_.find(std::string(symbol));
  std::string_view canonical = alias != aliases_.end() ? alias->second : symbol;
  for (const KernelSpec& k : kernels_) {
    if (k.symbol == canonical) return &k;
  }
  return nullptr;
}

std::optional<std::size_t> OperatorTable::fixed_arity(std::string_view name) const {
  auto it = fixed_ops_.find(std::string(name));
  if (it == fixed_ops_.end()) return std::nullopt;
  return it->second;
}

bool OperatorTable::is_constant(std::string_view literal) const {
  return constants_.find(std::string(literal)) != constants_.end();
}

void OperatorTable::validate(const Term& t) const {
  switch (t.kind()) {
    case Term::Kind::Var: {
      const std::string& name = t.symbol();
      // A variable spelled like a declared token would not survive a
      // print/parse round trip.
      if (is_constant(name) || fixed_arity(name) || find_kernel(name)) {
        throw ValidationError("variable '" + name + "' collides with a declared symbol");
      }
      return;
    }
    case Term::Kind::Const: {
      const std::string& lit = t.symbol();
      if (!is_number(lit) && !is_constant(lit)) {
        throw ValidationError("constant '" + lit + "' is not declared");
      }
      return;
    }
    case Term::Kind::FixedApp: {
      auto arity = fixed_arity(t.symbol());
      if (!arity) {
        throw ValidationError("fixed operator '" + t.symbol() + "' is not declared");
      }
      if (*arity != t.arity()) {
        throw ValidationError("fixed operator '" + t.symbol() + "' expects " +
                              std::to_string(*arity) + " arguments, got " +
                              std::to_string(t.arity()));
      }
      break;
    }
    case Term::Kind::PolyApp: {
      const KernelSpec* k = nullptr;
      for (const KernelSpec& cand : kernels_) {
        if (cand.symbol == t.symbol()) {
          k = &cand;
          break;
        }
      }
      if (k == nullptr) {
        throw ValidationError("kernel '" + t.symbol() + "' is not declared");
      }
      if (t.arity() < 2 && !k->unit) {
        throw ValidationError("kernel '" + t.symbol() + "' has no unit; arity " +
                              std::to_string(t.arity()) + " is not allowed");
      }
      break;
    }
  }
  for (const Term& a : t.args()) validate(a);
}

bool OperatorTable::well_formed(const Term& t) const noexcept {
  try {
    validate(t);
    return true;
  } catch (const ValidationError&) {
    return false;
  }
}

// --- PsiContext -----------------------------------------------------------

PsiContext::PsiContext(std::string kernel, std::vector<Term> prefix, std::vector<Term> suffix)
    : kernel_(std::move(kernel)), prefix_(std::move(prefix)), suffix_(std::move(suffix)) {
  auto check_slot = [this](const Term& t) {
    if (t.is_poly(kernel_)) {
      throw ValidationError("context slot is an unbracketed application of kernel '" +
                            kernel_ + "'");
    }
  };
  for (const Term& t : prefix_) check_slot(t);
  for (const Term& t : suffix_) check_slot(t);
}

Term PsiContext::substitute(const Term& t) const {
  std::vector<Term> args(prefix_.begin(), prefix_.end());
  if (t.is_poly(kernel_)) {
    args.insert(args.end(), t.args().begin(), t.args().end());
  } else {
    args.push_back(t);
  }
  args.insert(args.end(), suffix_.begin(), suffix_.end());
  if (args.size() == 1) return args.front();
  return Term::poly_app_short(kernel_, std::move(args));
}

}  // namespace polyfix
