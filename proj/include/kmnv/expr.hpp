#pragma once

#include "kmnv/util.hpp"

#include <memory>
#include <span>
#include <string>
#include <vector>

namespace kmnv {

// Scalar expressions over a coordinate chart plus named constants.
//
// Grammar (binding strength low to high; '^' is right-associative and binds
// tighter than unary minus, so "-x^2" means -(x^2)):
//
//   expr   := term (('+'|'-') term)*
//   term   := unary (('*'|'/') unary)*
//   unary  := '-' unary | power
//   power  := atom ('^' unary)?
//   atom   := NUMBER | IDENT | IDENT '(' expr ')' | '(' expr ')'
//
// IDENT resolves against the declared coordinate names and constant names at
// parse time; the function names exp, log, sin, cos, sqrt are reserved.
// Expressions are immutable values; evaluation is pure and reentrant.

// Raised for syntactically invalid input; offset is the byte position in the source.
struct ParseError : Error {
  ParseError(const std::string& msg, std::size_t offset)
      : Error(msg + " at offset " + std::to_string(offset)), offset(offset) {}
  std::size_t offset;
};

// Raised when evaluation leaves the real domain (division by zero, log/sqrt of a
// negative number, fractional power of a negative base, non-finite result).
// subexpression holds the printed form of the node that failed.
struct DomainError : Error {
  DomainError(const std::string& msg, std::string subexpr)
      : Error(msg + " in \"" + subexpr + "\""), subexpression(std::move(subexpr)) {}
  std::string subexpression;
};

class Expr {
 public:
  Expr() = default;  // empty; evaluating throws

  // Constructors for programmatic assembly (used by the deformation rewrites).
  static Expr number(double v);
  static Expr coordinate(int index, std::string name);
  static Expr constant(int index, std::string name);
  static Expr add(Expr a, Expr b);
  static Expr sub(Expr a, Expr b);
  static Expr mul(Expr a, Expr b);
  static Expr div(Expr a, Expr b);
  static Expr pow(Expr base, Expr exponent);
  static Expr neg(Expr a);
  static Expr call(const std::string& fn, Expr arg);

  bool empty() const { return root_ == nullptr; }

  // True when the expression is a plain numeric literal (optionally negated).
  bool is_literal() const;
  double literal_value() const;  // requires is_literal()

  // Evaluates with the given coordinate values and constant values (in the
  // declaration order the expression was parsed/built against).
  double evaluate(std::span<const double> coords, std::span<const double> consts) const;

  // Prints with minimal parentheses; parsing the output yields an expression
  // that evaluates bit-identically.
  std::string to_string() const;

  struct Node;

 private:
  explicit Expr(std::shared_ptr<const Node> n) : root_(std::move(n)) {}
  std::shared_ptr<const Node> root_;

  friend Expr parse_expr(std::string_view, const std::vector<std::string>&,
                         const std::vector<std::string>&);
};

// Parses source against the given coordinate and constant name lists.
Expr parse_expr(std::string_view source, const std::vector<std::string>& coordinates,
                const std::vector<std::string>& constants);

}  // namespace kmnv
