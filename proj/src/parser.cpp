#include "lik/parser.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace lik {

ParseError::ParseError(int line, int column, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                         message),
      line_(line),
      column_(column),
      message_(message) {}

namespace {

struct Token {
  enum class Kind { Number, Ident, Symbol, End };
  Kind kind = Kind::End;
  std::string text;
  int column = 1;
};

class ExprParser {
 public:
  ExprParser(std::string_view text, int line, int column_offset) : line_(line) {
    tokenize(text, column_offset);
  }

  std::unique_ptr<ExprNode> parse() {
    auto node = parse_sum();
    if (peek().kind != Token::Kind::End) fail(peek(), "unexpected '" + peek().text + "'");
    return node;
  }

 private:
  void tokenize(std::string_view text, int column_offset) {
    std::size_t i = 0;
    while (i < text.size()) {
      char c = text[i];
      int col = static_cast<int>(i) + 1 + column_offset;
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t j = i;
        while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
        if (j < text.size() && text[j] == '.') {
          throw ParseError(line_, static_cast<int>(j) + 1 + column_offset,
                           "decimal literals are not supported; write rationals as p/q");
        }
        tokens_.push_back({Token::Kind::Number, std::string(text.substr(i, j - i)), col});
        i = j;
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t j = i;
        while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
        tokens_.push_back({Token::Kind::Ident, std::string(text.substr(i, j - i)), col});
        i = j;
      } else if (std::string_view("+-*/^()[]").find(c) != std::string_view::npos) {
        tokens_.push_back({Token::Kind::Symbol, std::string(1, c), col});
        ++i;
      } else {
        throw ParseError(line_, col, std::string("unexpected character '") + c + "'");
      }
    }
    int end_col = static_cast<int>(text.size()) + 1 + column_offset;
    tokens_.push_back({Token::Kind::End, "end of input", end_col});
  }

  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() { return tokens_[pos_++]; }
  bool accept(const char* sym) {
    if (peek().kind == Token::Kind::Symbol && peek().text == sym) {
      ++pos_;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const Token& t, const std::string& msg) const { throw ParseError(line_, t.column, msg); }

  std::unique_ptr<ExprNode> make(ExprNode::Kind kind, const Token& at) const {
    auto n = std::make_unique<ExprNode>();
    n->kind = kind;
    n->line = line_;
    n->column = at.column;
    return n;
  }

  std::unique_ptr<ExprNode> binary(ExprNode::Kind kind, const Token& at, std::unique_ptr<ExprNode> a,
                                   std::unique_ptr<ExprNode> b) const {
    auto n = make(kind, at);
    n->children.push_back(std::move(a));
    n->children.push_back(std::move(b));
    return n;
  }

  std::unique_ptr<ExprNode> parse_sum() {
    auto lhs = parse_product();
    while (peek().kind == Token::Kind::Symbol && (peek().text == "+" || peek().text == "-")) {
      const Token& op = next();
      auto rhs = parse_product();
      lhs = binary(op.text == "+" ? ExprNode::Kind::Add : ExprNode::Kind::Subtract, op, std::move(lhs),
                   std::move(rhs));
    }
    return lhs;
  }

  std::unique_ptr<ExprNode> parse_product() {
    auto lhs = parse_unary();
    while (peek().kind == Token::Kind::Symbol && (peek().text == "*" || peek().text == "/")) {
      const Token& op = next();
      auto rhs = parse_unary();
      lhs = binary(op.text == "*" ? ExprNode::Kind::Multiply : ExprNode::Kind::Divide, op, std::move(lhs),
                   std::move(rhs));
    }
    return lhs;
  }

  std::unique_ptr<ExprNode> parse_unary() {
    if (peek().kind == Token::Kind::Symbol && peek().text == "-") {
      const Token& op = next();
      auto n = make(ExprNode::Kind::Negate, op);
      n->children.push_back(parse_unary());
      return n;
    }
    if (accept("+")) return parse_unary();
    return parse_power();
  }

  int parse_signed_int(const char* what) {
    int sign = 1;
    if (accept("-")) {
      sign = -1;
    } else {
      accept("+");
    }
    const Token& t = peek();
    if (t.kind != Token::Kind::Number) fail(t, std::string(what) + " must be an integer");
    next();
    if (t.text.size() > 9) fail(t, std::string(what) + " out of range");
    return sign * std::stoi(t.text);
  }

  std::unique_ptr<ExprNode> parse_power() {
    auto base = parse_primary();
    if (peek().kind == Token::Kind::Symbol && peek().text == "^") {
      const Token& op = next();
      auto n = make(ExprNode::Kind::Power, op);
      n->exponent = parse_signed_int("exponent");
      n->children.push_back(std::move(base));
      return n;
    }
    return base;
  }

  std::unique_ptr<ExprNode> parse_primary() {
    const Token& t = peek();
    if (t.kind == Token::Kind::Number) {
      next();
      auto n = make(ExprNode::Kind::Number, t);
      n->number = Rational(mpz_class(t.text));
      return n;
    }
    if (t.kind == Token::Kind::Ident) {
      next();
      auto n = make(ExprNode::Kind::Symbol, t);
      n->name = t.text;
      if (accept("[")) {
        n->shift = parse_signed_int("shift");
        if (!accept("]")) {
          if (peek().kind == Token::Kind::Symbol && peek().text == "/") fail(peek(), "shift must be an integer");
          fail(peek(), "expected ']'");
        }
      }
      return n;
    }
    if (accept("(")) {
      auto inner = parse_sum();
      if (!accept(")")) fail(peek(), "expected ')'");
      return inner;
    }
    fail(t, t.kind == Token::Kind::End ? "unexpected end of input" : "unexpected '" + t.text + "'");
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  int line_;
};

std::optional<std::pair<LatticeMonomial, Rational>> single_term(const LatticePoly& p) {
  if (p.size() != 1) return std::nullopt;
  const auto& [m, c] = p.leading_term();
  auto r = c.as_rational();
  if (!r) return std::nullopt;
  return std::make_pair(m, *r);
}

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

bool valid_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(),
                     [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

}  // namespace

std::unique_ptr<ExprNode> parse_expression(std::string_view text, int line, int column_offset) {
  return ExprParser(text, line, column_offset).parse();
}

LatticePoly evaluate_poly(const ExprNode& node, const SymbolTable& symbols, PolyMode mode) {
  using K = ExprNode::Kind;
  auto err = [&](const std::string& msg) -> ParseError { return ParseError(node.line, node.column, msg); };
  switch (node.kind) {
    case K::Number:
      return LatticePoly(ParamCoeff(node.number));
    case K::Symbol: {
      auto& comps = symbols.components;
      auto it = std::find(comps.begin(), comps.end(), node.name);
      if (it != comps.end()) {
        return LatticePoly::variable(static_cast<int>(it - comps.begin()), node.shift.value_or(0));
      }
      auto& params = symbols.parameters;
      auto pt = std::find(params.begin(), params.end(), node.name);
      if (pt != params.end()) {
        if (node.shift) throw err("parameter '" + node.name + "' cannot carry a shift");
        return LatticePoly(ParamCoeff::parameter(static_cast<std::size_t>(pt - params.begin())));
      }
      throw err("unknown symbol '" + node.name + "'");
    }
    case K::Negate:
      return -evaluate_poly(*node.children[0], symbols, mode);
    case K::Add:
      return evaluate_poly(*node.children[0], symbols, mode) + evaluate_poly(*node.children[1], symbols, mode);
    case K::Subtract:
      return evaluate_poly(*node.children[0], symbols, mode) - evaluate_poly(*node.children[1], symbols, mode);
    case K::Multiply:
      return evaluate_poly(*node.children[0], symbols, mode) * evaluate_poly(*node.children[1], symbols, mode);
    case K::Divide: {
      LatticePoly num = evaluate_poly(*node.children[0], symbols, mode);
      LatticePoly den = evaluate_poly(*node.children[1], symbols, mode);
      if (den.is_zero()) throw err("division by zero");
      auto term = single_term(den);
      if (!term) {
        if (den.size() == 1) throw err("division by a parameter is not supported");
        throw err(mode == PolyMode::Polynomial ? "non-polynomial right-hand side"
                                               : "division by a sum is not supported");
      }
      if (!term->first.is_constant() && mode == PolyMode::Polynomial) {
        throw err("non-polynomial right-hand side");
      }
      LatticePoly inv(term->first.pow(-1), ParamCoeff(Rational(1 / term->second)));
      return num * inv;
    }
    case K::Power: {
      LatticePoly base = evaluate_poly(*node.children[0], symbols, mode);
      if (node.exponent >= 0) return base.pow(static_cast<unsigned>(node.exponent));
      auto term = single_term(base);
      if (!term || term->second == 0) throw err("negative power of a non-monomial");
      if (!term->first.is_constant() && mode == PolyMode::Polynomial) {
        throw err("non-polynomial right-hand side");
      }
      Rational c = 1;
      for (int k = 0; k < -node.exponent; ++k) c /= term->second;
      return LatticePoly(term->first.pow(node.exponent), ParamCoeff(c));
    }
  }
  throw err("bad expression node");
}

LatticePoly parse_poly(std::string_view text, const SymbolTable& symbols, PolyMode mode) {
  auto ast = parse_expression(text);
  return evaluate_poly(*ast, symbols, mode);
}

std::vector<KeyedLine> split_keyed_lines(std::string_view text) {
  std::vector<KeyedLine> out;
  std::istringstream in{std::string(text)};
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw.substr(0, raw.find('#'));
    if (trim(line).empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      std::size_t col = line.find_first_not_of(" \t");
      throw ParseError(lineno, static_cast<int>(col) + 1, "expected 'name = expression'");
    }
    KeyedLine kl;
    kl.key = trim(std::string_view(line).substr(0, eq));
    kl.value = line.substr(eq + 1);
    kl.line = lineno;
    kl.value_column = static_cast<int>(eq) + 1;
    out.push_back(std::move(kl));
  }
  return out;
}

DdeSystem parse_system(std::string_view text) {
  static const std::set<std::string> reserved = {"D", "I", "S"};
  DdeSystem sys;
  struct PendingEquation {
    std::string rhs;
    int line;
    int column;
  };
  std::vector<PendingEquation> pending;

  std::istringstream in{std::string(text)};
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw.substr(0, raw.find('#'));
    if (trim(line).empty()) continue;
    std::size_t first = line.find_first_not_of(" \t");
    auto colon = line.find(':');
    auto eq = line.find('=');
    if (colon != std::string::npos && (eq == std::string::npos || colon < eq)) {
      std::string key = trim(std::string_view(line).substr(0, colon));
      if (key != "params") {
        throw ParseError(lineno, static_cast<int>(first) + 1, "unknown directive '" + key + "'");
      }
      if (!sys.components.empty()) {
        throw ParseError(lineno, static_cast<int>(first) + 1, "params must be declared before the equations");
      }
      std::string list = line.substr(colon + 1);
      std::size_t start = 0;
      while (start <= list.size()) {
        std::size_t comma = list.find(',', start);
        std::string name = trim(std::string_view(list).substr(start, comma == std::string::npos ? std::string::npos
                                                                                               : comma - start));
        int col = static_cast<int>(colon + 2 + start);
        if (!valid_identifier(name)) throw ParseError(lineno, col, "bad parameter name '" + name + "'");
        if (reserved.count(name)) throw ParseError(lineno, col, "'" + name + "' is a reserved name");
        if (std::find(sys.parameters.begin(), sys.parameters.end(), name) != sys.parameters.end()) {
          throw ParseError(lineno, col, "duplicate parameter '" + name + "'");
        }
        sys.parameters.push_back(name);
        if (comma == std::string::npos) break;
        start = comma + 1;
      }
      continue;
    }
    if (eq == std::string::npos) throw ParseError(lineno, static_cast<int>(first) + 1, "expected \"name' = expression\"");
    std::string lhs = trim(std::string_view(line).substr(0, eq));
    if (lhs.size() < 2 || lhs.back() != '\'') {
      throw ParseError(lineno, static_cast<int>(first) + 1, "left-hand side must be a time derivative like u'");
    }
    std::string name = trim(std::string_view(lhs).substr(0, lhs.size() - 1));
    if (!valid_identifier(name)) throw ParseError(lineno, static_cast<int>(first) + 1, "bad variable name '" + name + "'");
    if (reserved.count(name)) throw ParseError(lineno, static_cast<int>(first) + 1, "'" + name + "' is a reserved name");
    if (std::find(sys.parameters.begin(), sys.parameters.end(), name) != sys.parameters.end()) {
      throw ParseError(lineno, static_cast<int>(first) + 1, "'" + name + "' is declared as a parameter");
    }
    if (sys.component_index(name) >= 0) {
      throw ParseError(lineno, static_cast<int>(first) + 1, "second equation for '" + name + "'");
    }
    sys.components.push_back(name);
    pending.push_back({line.substr(eq + 1), lineno, static_cast<int>(eq) + 1});
  }
  if (sys.components.empty()) throw ParseError(lineno == 0 ? 1 : lineno, 1, "no equations found");

  SymbolTable symbols = sys.symbols();
  for (const auto& eqn : pending) {
    auto ast = parse_expression(eqn.rhs, eqn.line, eqn.column);
    sys.rhs.push_back(evaluate_poly(*ast, symbols, PolyMode::Polynomial));
  }
  return sys;
}

std::string render_system(const DdeSystem& sys) {
  std::string out;
  if (!sys.parameters.empty()) {
    out += "params: ";
    for (std::size_t i = 0; i < sys.parameters.size(); ++i) {
      if (i) out += ", ";
      out += sys.parameters[i];
    }
    out += "\n";
  }
  SymbolTable symbols = sys.symbols();
  for (std::size_t i = 0; i < sys.size(); ++i) {
    out += sys.components[i] + "' = " + sys.rhs[i].render(symbols) + "\n";
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace lik
