#include "polyfix/models.hpp"

#include <algorithm>
#include <cctype>

namespace polyfix {

MatrixValue identity_matrix(std::size_t dim) {
  MatrixValue m{dim, std::vector<Int>(dim * dim, Int(0))};
  for (std::size_t i = 0; i < dim; ++i) m.cells[i * dim + i] = 1;
  return m;
}

const char* to_string(EvalErrorKind kind) {
  switch (kind) {
    case EvalErrorKind::UnboundVariable: return "UnboundVariable";
    case EvalErrorKind::KernelMismatch: return "KernelMismatch";
    case EvalErrorKind::DimensionMismatch: return "DimensionMismatch";
    case EvalErrorKind::NotAssociative: return "NotAssociative";
    case EvalErrorKind::NotNumeral: return "NotNumeral";
  }
  return "Unknown";
}

std::string to_string(const Value& v) {
  struct Printer {
    std::string operator()(const Int& i) const { return i.str(); }
    std::string operator()(const SeqValue& s) const {
      std::string out = "[";
      for (std::size_t i = 0; i < s.atoms.size(); ++i) {
        if (i > 0) out += ", ";
        out += s.atoms[i];
      }
      return out + "]";
    }
    std::string operator()(const BagValue& b) const {
      std::string out = "{";
      bool first = true;
      for (const auto& [atom, count] : b.counts) {
        for (std::size_t i = 0; i < count; ++i) {
          if (!first) out += ", ";
          out += atom;
          first = false;
        }
      }
      return out + "}";
    }
    std::string operator()(const GraphValue& g) const {
      std::string out = "{";
      bool first = true;
      for (const std::string& n : g.nodes) {
        if (!first) out += ", ";
        out += n;
        first = false;
      }
      if (!g.edges.empty()) {
        out += " | ";
        first = true;
        for (const auto& e : g.edges) {
          if (!first) out += ", ";
          out += e[0] + "-" + e[1] + "->" + e[2];
          first = false;
        }
      }
      return out + "}";
    }
    std::string operator()(const MatrixValue& m) const {
      std::string out = "[";
      for (std::size_t r = 0; r < m.dim; ++r) {
        if (r > 0) out += ", ";
        out += "[";
        for (std::size_t c = 0; c < m.dim; ++c) {
          if (c > 0) out += ", ";
          out += m.at(r, c).str();
        }
        out += "]";
      }
      return out + "]";
    }
  };
  return std::visit(Printer{}, v);
}

namespace {

bool is_number(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return std::isdigit(static_cast<unsigned char>(c));
  });
}

const Int& as_int(const Value& v, const char* model) {
  if (const Int* i = std::get_if<Int>(&v)) return *i;
  throw EvalError(EvalErrorKind::KernelMismatch,
                  std::string("model '") + model + "' combines integers, got " + to_string(v));
}

template <typename T>
const T& as(const Value& v, const char* model, const char* carrier) {
  if (const T* t = std::get_if<T>(&v)) return *t;
  throw EvalError(EvalErrorKind::KernelMismatch, std::string("model '") + model + "' combines " +
                                                     carrier + " values, got " + to_string(v));
}

Value eval_term(const Term& t, const Model& m, const Environment& env, Side side) {
  switch (t.kind()) {
    case Term::Kind::Var: {
      auto it = env.find(t.symbol());
      if (it == env.end()) {
        throw EvalError(EvalErrorKind::UnboundVariable,
                        "variable '" + t.symbol() + "' is not bound");
      }
      return it->second;
    }
    case Term::Kind::Const: {
      std::optional<Value> v = m.constant(t.symbol());
      if (!v) {
        throw EvalError(EvalErrorKind::UnboundVariable, "constant '" + t.symbol() +
                                                            "' has no denotation in model '" +
                                                            m.name + "'");
      }
      return *std::move(v);
    }
    case Term::Kind::FixedApp:
      throw EvalError(EvalErrorKind::KernelMismatch,
                      "fixed operator '" + t.symbol() + "' has no denotation in model '" +
                          m.name + "'");
    case Term::Kind::PolyApp: {
      if (t.symbol() != m.kernel) {
        throw EvalError(EvalErrorKind::KernelMismatch, "model '" + m.name +
                                                           "' interprets kernel '" + m.kernel +
                                                           "', not '" + t.symbol() + "'");
      }
      auto args = t.args();
      if (args.empty()) {
        if (!m.unit) {
          throw EvalError(EvalErrorKind::KernelMismatch,
                          "model '" + m.name + "' has no unit value");
        }
        return *m.unit;
      }
      if (side == Side::Left) {
        Value acc = eval_term(args[0], m, env, side);
        for (std::size_t i = 1; i < args.size(); ++i) {
          acc = m.combine(acc, eval_term(args[i], m, env, side));
        }
        return acc;
      }
      Value acc = eval_term(args.back(), m, env, side);
      for (std::size_t i = args.size() - 1; i-- > 0;) {
        acc = m.combine(eval_term(args[i], m, env, side), acc);
      }
      return acc;
    }
  }
  throw std::logic_error("unreachable");
}

Model merge_model() {
  return Model{
      .name = "merge",
      .kernel = "||",
      .associative = true,
      .unit = Value(BagValue{}),
      .constant =
          [](const std::string& lit) -> std::optional<Value> {
        return Value(BagValue{{{lit, 1}}});
      },
      .combine =
          [](const Value& a, const Value& b) {
            BagValue out = as<BagValue>(a, "merge", "bag");
            for (const auto& [atom, count] : as<BagValue>(b, "merge", "bag").counts) {
              out.counts[atom] += count;
            }
            return Value(std::move(out));
          },
      .table = OperatorTable("proc", {KernelSpec{"||", std::nullopt, std::nullopt}}),
  };
}

Model seq_model() {
  return Model{
      .name = "seq",
      .kernel = ";",
      .associative = true,
      .unit = Value(SeqValue{}),
      .constant =
          [](const std::string& lit) -> std::optional<Value> {
        return Value(SeqValue{{lit}});
      },
      .combine =
          [](const Value& a, const Value& b) {
            SeqValue out = as<SeqValue>(a, "seq", "sequence");
            const SeqValue& rhs = as<SeqValue>(b, "seq", "sequence");
            out.atoms.insert(out.atoms.end(), rhs.atoms.begin(), rhs.atoms.end());
            return Value(std::move(out));
          },
      .table = OperatorTable("instr", {KernelSpec{";", std::nullopt, std::nullopt}}),
  };
}

Model frame_model() {
  return Model{
      .name = "frame",
      .kernel = "\xe2\x8a\x95",  // circled plus
      .associative = true,
      .unit = Value(GraphValue{}),
      .constant =
          [](const std::string& lit) -> std::optional<Value> {
        return Value(GraphValue{{lit}, {}});
      },
      .combine =
          [](const Value& a, const Value& b) {
            GraphValue out = as<GraphValue>(a, "frame", "graph");
            const GraphValue& rhs = as<GraphValue>(b, "frame", "graph");
            out.nodes.insert(rhs.nodes.begin(), rhs.nodes.end());
            out.edges.insert(rhs.edges.begin(), rhs.edges.end());
            return Value(std::move(out));
          },
      .table = OperatorTable("frame", {KernelSpec{"\xe2\x8a\x95", std::nullopt, std::nullopt}}),
  };
}

Model add_model() {
  return Model{
      .name = "add",
      .kernel = "+",
      .associative = true,
      .unit = Value(Int(0)),
      .constant =
          [](const std::string& lit) -> std::optional<Value> {
        if (!is_number(lit)) return std::nullopt;
        return Value(Int(lit));
      },
      .combine =
          [](const Value& a, const Value& b) {
            return Value(Int(as_int(a, "add") + as_int(b, "add")));
          },
      .table = OperatorTable("nat", {KernelSpec{"+", "0", std::nullopt}}),
  };
}

Model mul_model() {
  return Model{
      .name = "mul",
      .kernel = "*",
      .associative = true,
      .unit = Value(Int(1)),
      .constant =
          [](const std::string& lit) -> std::optional<Value> {
        if (!is_number(lit)) return std::nullopt;
        return Value(Int(lit));
      },
      .combine =
          [](const Value& a, const Value& b) {
            return Value(Int(as_int(a, "mul") * as_int(b, "mul")));
          },
      .table = OperatorTable("nat", {KernelSpec{"*", "1", std::nullopt}}, {}, {},
                             {{"\xc2\xb7", "*"}}),
  };
}

Model sub_model() {
  return Model{
      .name = "sub",
      .kernel = "-",
      .associative = false,
      .unit = std::nullopt,
      .constant =
          [](const std::string& lit) -> std::optional<Value> {
        if (!is_number(lit)) return std::nullopt;
        return Value(Int(lit));
      },
      .combine =
          [](const Value& a, const Value& b) {
            return Value(Int(as_int(a, "sub") - as_int(b, "sub")));
          },
      .table = OperatorTable("int", {KernelSpec{"-", std::nullopt, std::nullopt}}),
  };
}

}  // namespace

Model matmul_model(std::size_t dim) {
  if (dim == 0) throw std::invalid_argument("matrix dimension must be >= 1");
  return Model{
      .name = "matmul",
      .kernel = "*",
      .associative = true,
      .unit = Value(identity_matrix(dim)),
      .constant =
          [dim](const std::string& lit) -> std::optional<Value> {
        if (!is_number(lit)) return std::nullopt;
        // Numerals denote scalar matrices, so ground arithmetic holds.
        MatrixValue m = identity_matrix(dim);
        Int n(lit);
        for (std::size_t i = 0; i < dim; ++i) m.cells[i * dim + i] = n;
        return Value(std::move(m));
      },
      .combine =
          [dim](const Value& a, const Value& b) {
            const MatrixValue& x = as<MatrixValue>(a, "matmul", "matrix");
            const MatrixValue& y = as<MatrixValue>(b, "matmul", "matrix");
            if (x.dim != dim || y.dim != dim) {
              throw EvalError(EvalErrorKind::DimensionMismatch,
                              "expected " + std::to_string(dim) + "x" + std::to_string(dim) +
                                  " matrices, got " + std::to_string(x.dim) + "x" +
                                  std::to_string(x.dim) + " and " + std::to_string(y.dim) + "x" +
                                  std::to_string(y.dim));
            }
            MatrixValue out{dim, std::vector<Int>(dim * dim, Int(0))};
            for (std::size_t r = 0; r < dim; ++r) {
              for (std::size_t c = 0; c < dim; ++c) {
                Int sum = 0;
                for (std::size_t k = 0; k < dim; ++k) {
                  sum += x.at(r, k) * y.at(k, c);
                }
                out.cells[r * dim + c] = std::move(sum);
              }
            }
            return Value(std::move(out));
          },
      .table = OperatorTable("matrix", {KernelSpec{"*", std::nullopt, std::nullopt}}, {}, {},
                             {{"\xc2\xb7", "*"}}),
  };
}

Value eval(const Term& t, const Model& m, const Environment& env) {
  if (!m.associative) {
    throw EvalError(EvalErrorKind::NotAssociative,
                    "model '" + m.name +
                        "' is not associative; use a directional fold instead");
  }
  return eval_term(t, m, env, Side::Left);
}

Value eval_fold(const Term& t, const Model& m, Side side, const Environment& env) {
  return eval_term(t, m, env, side);
}

const Model& builtin_model(const std::string& name) {
  static const std::map<std::string, Model> models = [] {
    std::map<std::string, Model> out;
    out.emplace("merge", merge_model());
    out.emplace("seq", seq_model());
    out.emplace("frame", frame_model());
    out.emplace("add", add_model());
    out.emplace("mul", mul_model());
    out.emplace("matmul", matmul_model(2));
    out.emplace("sub", sub_model());
    return out;
  }();
  auto it = models.find(name);
  if (it == models.end()) {
    std::string known;
    for (const auto& [n, _] : models) {
      if (!known.empty()) known += ", ";
      known += n;
    }
    throw std::invalid_argument("unknown model '" + name + "'; known models: " + known);
  }
  return it->second;
}

std::vector<std::string> builtin_model_names() {
  return {"merge", "seq", "frame", "add", "mul", "matmul", "sub"};
}

Term leibniz_numeral(std::size_t n) {
  if (n == 0) throw std::invalid_argument("unit numerals start at 1");
  if (n == 1) return Term::constant("1");
  return Term::poly_app("+", std::vector<Term>(n, Term::constant("1")));
}

namespace {

void append_units(const Term& t, std::vector<Term>& out) {
  if (t.is_const("1")) {
    out.push_back(t);
    return;
  }
  if (t.is_poly("+") && t.arity() >= 2) {
    for (const Term& a : t.args()) {
      if (!a.is_const("1")) {
        throw EvalError(EvalErrorKind::NotNumeral,
                        "argument of a unit numeral must be the constant 1");
      }
      out.push_back(a);
    }
    return;
  }
  throw EvalError(EvalErrorKind::NotNumeral, "term is not a unit numeral");
}

}  // namespace

Term leibniz_add(const Term& a, const Term& b) {
  std::vector<Term> units;
  append_units(a, units);
  append_units(b, units);
  return Term::poly_app("+", std::move(units));
}

}  // namespace polyfix
