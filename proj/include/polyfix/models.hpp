// Executable semantics: carriers and binary kernel denotations used to
// exercise soundness of the rewrite theory.  Six associative models
// (bag merge, sequence concatenation, frame union, addition,
// multiplication, square-matrix multiplication) plus a deliberately
// non-associative subtraction model that only the directional folds
// accept.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <array>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "polyfix/rewrite.hpp"
#include "polyfix/term.hpp"

namespace polyfix {

using Int = boost::multiprecision::cpp_int;

struct SeqValue {
  std::vector<std::string> atoms;
  bool operator==(const SeqValue&) const = default;
};

struct BagValue {
  std::map<std::string, std::size_t> counts;  // atom -> multiplicity >= 1
  bool operator==(const BagValue&) const = default;
};

/// Labeled directed graph: named nodes plus {from, label, to} edges.
struct GraphValue {
  std::set<std::string> nodes;
  std::set<std::array<std::string, 3>> edges;
  bool operator==(const GraphValue&) const = default;
};

/// Square integer matrix, row-major.
struct MatrixValue {
  std::size_t dim = 0;
  std::vector<Int> cells;  // dim * dim entries
  bool operator==(const MatrixValue&) const = default;

  const Int& at(std::size_t row, std::size_t col) const { return cells[row * dim + col]; }
};

MatrixValue identity_matrix(std::size_t dim);

using Value = std::variant<Int, SeqValue, BagValue, GraphValue, MatrixValue>;

std::string to_string(const Value& v);

enum class EvalErrorKind {
  UnboundVariable,
  KernelMismatch,
  DimensionMismatch,
  NotAssociative,
  NotNumeral,
};

const char* to_string(EvalErrorKind kind);

class EvalError : public std::runtime_error {
 public:
  EvalError(EvalErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}
  EvalErrorKind kind() const { return kind_; }

 private:
  EvalErrorKind kind_;
};

/// One carrier with a binary denotation for one kernel symbol.
struct Model {
  std::string name;
  std::string kernel;
  bool associative = true;
  std::optional<Value> unit;  // denotes arity-0 applications when present
  std::function<std::optional<Value>(const std::string&)> constant;
  std::function<Value(const Value&, const Value&)> combine;
  OperatorTable table;  // minimal table declaring just this kernel
};

using Environment = std::map<std::string, Value>;

/// Evaluates t by folding the model's binary denotation over argument
/// lists (left fold; the direction is irrelevant because eval insists on
/// an associative model and raises NotAssociative otherwise).
Value eval(const Term& t, const Model& m, const Environment& env = {});

/// Strictly directional fold; accepts non-associative models too.
Value eval_fold(const Term& t, const Model& m, Side side, const Environment& env = {});

/// The built-in models: merge, seq, frame, add, mul, matmul (dim 2), sub.
const Model& builtin_model(const std::string& name);
std::vector<std::string> builtin_model_names();

/// Square-matrix multiplication over a chosen dimension.
Model matmul_model(std::size_t dim);

/// The natural number n >= 1 as the n-fold sum of the unit constant:
/// the bare constant for n = 1, a flat n-ary sum otherwise.
Term leibniz_numeral(std::size_t n);

/// Addition of unit numerals is plain concatenation of their argument
/// lists; no carries, no brackets.  Raises NotNumeral on anything else.
Term leibniz_add(const Term& a, const Term& b);

}  // namespace polyfix
