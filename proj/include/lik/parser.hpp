#pragma once

#include "lik/dde_system.hpp"

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lik {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& message);
  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& message() const { return message_; }

 private:
  int line_;
  int column_;
  std::string message_;
};

struct ExprNode {
  enum class Kind { Number, Symbol, Negate, Add, Subtract, Multiply, Divide, Power };

  Kind kind = Kind::Number;
  Rational number;           // Number
  std::string name;          // Symbol
  std::optional<int> shift;  // Symbol with [k]
  int exponent = 1;          // Power
  std::vector<std::unique_ptr<ExprNode>> children;
  int line = 1;
  int column = 1;
};

// Infix grammar: + - * / ^ with integer exponents, parentheses, integer
// literals, names with optional [k] shifts. `column_offset` is added to
// reported columns so diagnostics point into the enclosing line.
std::unique_ptr<ExprNode> parse_expression(std::string_view text, int line = 1, int column_offset = 0);

enum class PolyMode {
  Polynomial,  // system right-hand sides: no division by variables
  Laurent,     // result expressions: monomial denominators allowed
};

LatticePoly evaluate_poly(const ExprNode& node, const SymbolTable& symbols, PolyMode mode);

LatticePoly parse_poly(std::string_view text, const SymbolTable& symbols, PolyMode mode = PolyMode::Laurent);

// System file: optional `params: a, b`, then one `name' = expr` line per
// component. `#` starts a comment. Components are numbered in order of
// appearance.
DdeSystem parse_system(std::string_view text);

std::string render_system(const DdeSystem& sys);

// Reads a whole file; throws std::runtime_error when unreadable.
std::string read_file(const std::string& path);

// Splits "key = value" lines (comments and blanks skipped). Keys are
// trimmed; used by the result file formats.
struct KeyedLine {
  std::string key;
  std::string value;
  int line = 0;
  int value_column = 0;
};
std::vector<KeyedLine> split_keyed_lines(std::string_view text);

}  // namespace lik
