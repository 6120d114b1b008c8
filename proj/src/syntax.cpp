#include "polyfix/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <vector>

#include "json.hpp"

namespace polyfix {

const char* to_string(DiagnosticKind kind) {
  switch (kind) {
    case DiagnosticKind::MixedKernels: return "MixedKernels";
    case DiagnosticKind::ArityMismatch: return "ArityMismatch";
    case DiagnosticKind::UnknownSymbol: return "UnknownSymbol";
    case DiagnosticKind::UnbalancedBrackets: return "UnbalancedBrackets";
    case DiagnosticKind::EmptyInput: return "EmptyInput";
    case DiagnosticKind::BadToken: return "BadToken";
  }
  return "Unknown";
}

std::string ParseDiagnostic::to_string() const {
  return std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": " +
         polyfix::to_string(kind) + ": " + message;
}

namespace {

struct Token {
  enum class Type { Ident, Number, Kernel, LParen, RParen, Comma, End };
  Type type;
  std::string text;
  std::string kernel;  // canonical kernel symbol when type == Kernel
  SourcePos pos;
};

// Thrown internally; converted to a ParseResult at the boundary.
struct DiagnosticException {
  ParseDiagnostic diagnostic;
};

[[noreturn]] void fail(DiagnosticKind kind, SourcePos pos, std::string message) {
  throw DiagnosticException{ParseDiagnostic{kind, pos, std::move(message)}};
}

bool is_ident_start(unsigned char c) { return std::isalpha(c) || c == '_'; }
bool is_ident_char(unsigned char c) { return std::isalnum(c) || c == '_'; }

class Lexer {
 public:
  Lexer(std::string_view text, const OperatorTable& table) : text_(text), table_(table) {
    // Operator-shaped kernel spellings, longest first, so "||" wins over "|".
    auto add = [this](const std::string& spelling, const std::string& canonical) {
      if (!is_ident_start(static_cast<unsigned char>(spelling.front()))) {
        operators_.emplace_back(spelling, canonical);
      }
    };
    for (const KernelSpec& k : table.kernels()) add(k.symbol, k.symbol);
    for (const auto& [alias, target] : table.aliases()) add(alias, target);
    std::sort(operators_.begin(), operators_.end(),
              [](const auto& a, const auto& b) { return a.first.size() > b.first.size(); });
  }

  std::vector<Token> run() {
    std::vector<Token> tokens;
    for (;;) {
      skip_space();
      SourcePos pos = here();
      if (at_end()) {
        tokens.push_back({Token::Type::End, "", "", pos});
        return tokens;
      }
      unsigned char c = static_cast<unsigned char>(text_[index_]);
      if (auto op = match_operator()) {
        tokens.push_back({Token::Type::Kernel, op->first, op->second, pos});
      } else if (std::isdigit(c)) {
        std::string num;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[index_]))) {
          num += advance();
        }
        tokens.push_back({Token::Type::Number, std::move(num), "", pos});
      } else if (is_ident_start(c)) {
        std::string ident;
        while (!at_end() && is_ident_char(static_cast<unsigned char>(text_[index_]))) {
          ident += advance();
        }
        if (const KernelSpec* k = table_.find_kernel(ident)) {
          tokens.push_back({Token::Type::Kernel, std::move(ident), k->symbol, pos});
        } else {
          tokens.push_back({Token::Type::Ident, std::move(ident), "", pos});
        }
      } else if (c == '(') {
        advance();
        tokens.push_back({Token::Type::LParen, "(", "", pos});
      } else if (c == ')') {
        advance();
        tokens.push_back({Token::Type::RParen, ")", "", pos});
      } else if (c == ',') {
        advance();
        tokens.push_back({Token::Type::Comma, ",", "", pos});
      } else {
        fail(DiagnosticKind::BadToken, pos,
             "unrecognized character '" + std::string(1, text_[index_]) + "'");
      }
    }
  }

 private:
  bool at_end() const { return index_ >= text_.size(); }

  char advance() {
    char c = text_[index_++];
    if (c == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    return c;
  }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[index_]))) advance();
  }

  SourcePos here() const { return SourcePos{index_, line_, column_}; }

  std::optional<std::pair<std::string, std::string>> match_operator() {
    for (const auto& [spelling, canonical] : operators_) {
      if (text_.substr(index_).starts_with(spelling)) {
        for (std::size_t i = 0; i < spelling.size(); ++i) advance();
        return std::make_pair(spelling, canonical);
      }
    }
    return std::nullopt;
  }

  std::string_view text_;
  const OperatorTable& table_;
  std::vector<std::pair<std::string, std::string>> operators_;
  std::size_t index_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

class Parser {
 public:
  Parser(std::vector<Token> tokens, const OperatorTable& table)
      : tokens_(std::move(tokens)), table_(table) {}

  Term run() {
    Term t = parse_chain(nullptr);
    const Token& tk = peek();
    if (tk.type != Token::Type::End) {
      if (tk.type == Token::Type::RParen) {
        fail(DiagnosticKind::UnbalancedBrackets, tk.pos, "unmatched ')'");
      }
      fail(DiagnosticKind::BadToken, tk.pos, "unexpected '" + tk.text + "' after expression");
    }
    return t;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& take() { return tokens_[pos_++]; }

  // Parses a maximal expression every top-level kernel of which binds
  // tighter than `enclosing` (any kernel when enclosing is null).
  Term parse_chain(const KernelSpec* enclosing) {
    Term lhs = parse_atom();
    const KernelSpec* prev = nullptr;
    for (;;) {
      const Token& tk = peek();
      if (tk.type != Token::Type::Kernel) break;
      const KernelSpec* k = table_.find_kernel(tk.kernel);
      if (enclosing != nullptr) {
        if (k == enclosing) break;  // the enclosing chain continues
        if (!k->precedence || !enclosing->precedence) {
          fail(DiagnosticKind::MixedKernels, tk.pos,
               mixed_message(k->symbol, enclosing->symbol));
        }
        if (*k->precedence <= *enclosing->precedence) break;
      }
      if (prev != nullptr) {
        // A chain of `prev` just ended at this level; `k` is a distinct
        // kernel (same-kernel tokens are consumed by the loop below) and
        // both precedences exist, otherwise the operand parse would have
        // rejected the meeting point already.
        if (*k->precedence == *prev->precedence) {
          fail(DiagnosticKind::MixedKernels, tk.pos,
               "operators '" + k->symbol + "' and '" + prev->symbol +
                   "' have equal precedence; bracket one of them");
        }
      }
      std::vector<Term> args{std::move(lhs)};
      while (peek().type == Token::Type::Kernel &&
             table_.find_kernel(peek().kernel) == k) {
        take();
        args.push_back(parse_chain(k));
      }
      lhs = Term::poly_app(k->symbol, std::move(args));
      prev = k;
    }
    return lhs;
  }

  static std::string mixed_message(const std::string& a, const std::string& b) {
    return "operators '" + a + "' and '" + b +
           "' cannot be mixed without brackets (no precedence ordering between them)";
  }

  Term parse_atom() {
    const Token& tk = take();
    switch (tk.type) {
      case Token::Type::Number:
        return Term::constant(tk.text);
      case Token::Type::Ident: {
        if (peek().type == Token::Type::LParen) return parse_fixed_call(tk);
        if (table_.is_constant(tk.text)) return Term::constant(tk.text);
        if (auto arity = table_.fixed_arity(tk.text)) {
          fail(DiagnosticKind::ArityMismatch, tk.pos,
               "fixed operator '" + tk.text + "' expects " + std::to_string(*arity) +
                   " arguments, used without an argument list");
        }
        return Term::var(tk.text);
      }
      case Token::Type::LParen: {
        Term inner = parse_chain(nullptr);
        const Token& close = take();
        if (close.type != Token::Type::RParen) {
          fail(DiagnosticKind::UnbalancedBrackets, close.pos,
               "expected ')' before " + describe(close));
        }
        return inner;
      }
      case Token::Type::RParen:
        fail(DiagnosticKind::UnbalancedBrackets, tk.pos, "unmatched ')'");
      case Token::Type::Kernel:
        fail(DiagnosticKind::BadToken, tk.pos,
             "expected an operand, found operator '" + tk.text + "'");
      case Token::Type::Comma:
        fail(DiagnosticKind::BadToken, tk.pos, "',' outside an argument list");
      case Token::Type::End:
        fail(DiagnosticKind::BadToken, tk.pos, "unexpected end of input");
    }
    throw std::logic_error("unreachable");
  }

  Term parse_fixed_call(const Token& name) {
    auto arity = table_.fixed_arity(name.text);
    if (!arity) {
      fail(DiagnosticKind::UnknownSymbol, name.pos,
           "'" + name.text + "' is not a declared fixed operator");
    }
    take();  // '('
    std::vector<Term> args;
    args.push_back(parse_chain(nullptr));
    while (peek().type == Token::Type::Comma) {
      take();
      args.push_back(parse_chain(nullptr));
    }
    const Token& close = take();
    if (close.type != Token::Type::RParen) {
      fail(DiagnosticKind::UnbalancedBrackets, close.pos,
           "expected ')' or ',' before " + describe(close));
    }
    if (args.size() != *arity) {
      fail(DiagnosticKind::ArityMismatch, name.pos,
           "fixed operator '" + name.text + "' expects " + std::to_string(*arity) +
               " arguments, got " + std::to_string(args.size()));
    }
    return Term::fixed_app(name.text, std::move(args));
  }

  static std::string describe(const Token& tk) {
    return tk.type == Token::Type::End ? "end of input" : "'" + tk.text + "'";
  }

  std::vector<Token> tokens_;
  const OperatorTable& table_;
  std::size_t pos_ = 0;
};

}  // namespace

ParseResult parse(std::string_view text, const OperatorTable& table) {
  try {
    std::vector<Token> tokens = Lexer(text, table).run();
    if (tokens.size() == 1) {
      fail(DiagnosticKind::EmptyInput, tokens.front().pos, "input holds no expression");
    }
    return ParseResult::success(Parser(std::move(tokens), table).run());
  } catch (const DiagnosticException& e) {
    return ParseResult::failure(e.diagnostic);
  }
}

namespace {

void print_rec(const Term& t, std::string& out) {
  switch (t.kind()) {
    case Term::Kind::Var:
    case Term::Kind::Const:
      out += t.symbol();
      return;
    case Term::Kind::FixedApp: {
      out += t.symbol();
      out += '(';
      for (std::size_t i = 0; i < t.arity(); ++i) {
        if (i > 0) out += ", ";
        print_rec(t.args()[i], out);
      }
      out += ')';
      return;
    }
    case Term::Kind::PolyApp: {
      if (t.arity() < 2) {
        throw std::invalid_argument("a poly-infix application of arity " +
                                    std::to_string(t.arity()) + " has no concrete syntax");
      }
      for (std::size_t i = 0; i < t.arity(); ++i) {
        if (i > 0) {
          out += ' ';
          out += t.symbol();
          out += ' ';
        }
        const Term& a = t.args()[i];
        if (a.is_poly()) {
          out += '(';
          print_rec(a, out);
          out += ')';
        } else {
          print_rec(a, out);
        }
      }
      return;
    }
  }
}

}  // namespace

std::string print(const Term& t) {
  std::string out;
  print_rec(t, out);
  return out;
}

// --- Operator table files -------------------------------------------------

OperatorTable table_from_json(const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("operator table is not valid JSON: ") + e.what());
  }
  try {
    if (!doc.is_object()) throw ValidationError("operator table must be a JSON object");
    std::string sort = doc.at("sort").get<std::string>();
    std::vector<KernelSpec> kernels;
    const nlohmann::json kernel_list = doc.value("kernels", nlohmann::json::array());
    for (const auto& k : kernel_list) {
      KernelSpec spec;
      spec.symbol = k.at("symbol").get<std::string>();
      if (k.contains("unit")) spec.unit = k.at("unit").get<std::string>();
      if (k.contains("precedence")) spec.precedence = k.at("precedence").get<int>();
      kernels.push_back(std::move(spec));
    }
    std::map<std::string, std::size_t> fixed_ops;
    const nlohmann::json fixed_list = doc.value("fixed_ops", nlohmann::json::object());
    for (const auto& [name, arity] : fixed_list.items()) {
      if (!arity.is_number_unsigned() || arity.get<std::size_t>() == 0) {
        throw ValidationError("fixed operator '" + name + "' must map to an arity >= 1");
      }
      fixed_ops[name] = arity.get<std::size_t>();
    }
    std::set<std::string> constants;
    const nlohmann::json constant_list = doc.value("constants", nlohmann::json::array());
    for (const auto& c : constant_list) {
      constants.insert(c.get<std::string>());
    }
    return OperatorTable(std::move(sort), std::move(kernels), std::move(fixed_ops),
                         std::move(constants));
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed operator table: ") + e.what());
  }
}

std::string table_to_json(const OperatorTable& table) {
  nlohmann::json doc;
  doc["sort"] = table.sort();
  doc["kernels"] = nlohmann::json::array();
  for (const KernelSpec& k : table.kernels()) {
    nlohmann::json kj{{"symbol", k.symbol}};
    if (k.unit) kj["unit"] = *k.unit;
    if (k.precedence) kj["precedence"] = *k.precedence;
    doc["kernels"].push_back(std::move(kj));
  }
  doc["fixed_ops"] = nlohmann::json::object();
  for (const auto& [name, arity] : table.fixed_ops()) doc["fixed_ops"][name] = arity;
  doc["constants"] = table.constants();
  return doc.dump(2);
}

OperatorTable load_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ValidationError("cannot open operator table file '" + path.string() + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return table_from_json(buf.str());
}

}  // namespace polyfix
