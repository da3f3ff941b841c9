#include "kmnv/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <utility>

namespace kmnv {

enum class Op { Number, Coord, Const, Add, Sub, Mul, Div, Pow, Neg, Call };
enum class Fn { Exp, Log, Sin, Cos, Sqrt };

struct Expr::Node {
  Op op{};
  double value = 0.0;              // Number
  int index = -1;                  // Coord/Const slot
  std::string name;                // Coord/Const display name
  Fn fn{};                         // Call
  std::shared_ptr<const Node> a, b;
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;

NodePtr make(Op op, NodePtr a = nullptr, NodePtr b = nullptr) {
  auto n = std::make_shared<Expr::Node>();
  n->op = op;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

const char* fn_name(Fn f) {
  switch (f) {
    case Fn::Exp: return "exp";
    case Fn::Log: return "log";
    case Fn::Sin: return "sin";
    case Fn::Cos: return "cos";
    case Fn::Sqrt: return "sqrt";
  }
  return "?";
}

// Binding strength used when printing with minimal parentheses.
int precedence(Op op) {
  switch (op) {
    case Op::Add:
    case Op::Sub: return 1;
    case Op::Mul:
    case Op::Div: return 2;
    case Op::Neg: return 3;
    case Op::Pow: return 4;
    default: return 5;  // atoms
  }
}

void print(const Expr::Node* n, std::string& out);

void print_child(const Expr::Node* c, int parent_prec, bool tight, std::string& out) {
  bool parens = precedence(c->op) < parent_prec || (tight && precedence(c->op) == parent_prec);
  if (parens) out += '(';
  print(c, out);
  if (parens) out += ')';
}

void print(const Expr::Node* n, std::string& out) {
  switch (n->op) {
    case Op::Number:
      if (n->value < 0 || (n->value == 0 && std::signbit(n->value))) {
        out += '(';
        out += util::format_double(n->value);
        out += ')';
      } else {
        out += util::format_double(n->value);
      }
      break;
    case Op::Coord:
    case Op::Const: out += n->name; break;
    case Op::Add:
      print_child(n->a.get(), 1, false, out);
      out += " + ";
      print_child(n->b.get(), 1, true, out);
      break;
    case Op::Sub:
      print_child(n->a.get(), 1, false, out);
      out += " - ";
      print_child(n->b.get(), 1, true, out);
      break;
    case Op::Mul:
      print_child(n->a.get(), 2, false, out);
      out += "*";
      print_child(n->b.get(), 2, true, out);
      break;
    case Op::Div:
      print_child(n->a.get(), 2, false, out);
      out += "/";
      print_child(n->b.get(), 2, true, out);
      break;
    case Op::Neg:
      out += '-';
      print_child(n->a.get(), 4, false, out);  // parens around any +,-,*,/ operand
      break;
    case Op::Pow:
      print_child(n->a.get(), 5, false, out);  // parens unless the base is an atom
      out += '^';
      print_child(n->b.get(), 3, false, out);  // exponent may be unary-negated
      break;
    case Op::Call:
      out += fn_name(n->fn);
      out += '(';
      print(n->a.get(), out);
      out += ')';
      break;
  }
}

std::string node_to_string(const Expr::Node* n) {
  std::string s;
  print(n, s);
  return s;
}

[[noreturn]] void domain_fail(const char* msg, const Expr::Node* n) {
  throw DomainError(msg, node_to_string(n));
}

double eval(const Expr::Node* n, std::span<const double> coords, std::span<const double> consts) {
  switch (n->op) {
    case Op::Number: return n->value;
    case Op::Coord:
      if (n->index >= static_cast<int>(coords.size()))
        throw ValidationError("point has too few coordinates for \"" + n->name + "\"");
      return coords[static_cast<std::size_t>(n->index)];
    case Op::Const:
      if (n->index >= static_cast<int>(consts.size()))
        throw ValidationError("missing binding for constant \"" + n->name + "\"");
      return consts[static_cast<std::size_t>(n->index)];
    case Op::Add: return eval(n->a.get(), coords, consts) + eval(n->b.get(), coords, consts);
    case Op::Sub: return eval(n->a.get(), coords, consts) - eval(n->b.get(), coords, consts);
    case Op::Mul: return eval(n->a.get(), coords, consts) * eval(n->b.get(), coords, consts);
    case Op::Div: {
      double num = eval(n->a.get(), coords, consts);
      double den = eval(n->b.get(), coords, consts);
      if (den == 0.0) domain_fail("division by zero", n);
      return num / den;
    }
    case Op::Pow: {
      double base = eval(n->a.get(), coords, consts);
      double ex = eval(n->b.get(), coords, consts);
      if (base == 0.0 && ex < 0.0) domain_fail("zero raised to a negative power", n);
      if (base < 0.0 && ex != std::floor(ex)) domain_fail("fractional power of a negative base", n);
      double r = std::pow(base, ex);
      if (!std::isfinite(r)) domain_fail("non-finite result", n);
      return r;
    }
    case Op::Neg: return -eval(n->a.get(), coords, consts);
    case Op::Call: {
      double x = eval(n->a.get(), coords, consts);
      double r = 0.0;
      switch (n->fn) {
        case Fn::Exp: r = std::exp(x); break;
        case Fn::Log:
          if (x <= 0.0) domain_fail("log of a non-positive number", n);
          r = std::log(x);
          break;
        case Fn::Sin: r = std::sin(x); break;
        case Fn::Cos: r = std::cos(x); break;
        case Fn::Sqrt:
          if (x < 0.0) domain_fail("sqrt of a negative number", n);
          r = std::sqrt(x);
          break;
      }
      if (!std::isfinite(r)) domain_fail("non-finite result", n);
      return r;
    }
  }
  throw Error("corrupt expression node");
}

class Parser {
 public:
  Parser(std::string_view src, const std::vector<std::string>& coords,
         const std::vector<std::string>& consts)
      : src_(src), coords_(coords), consts_(consts) {}

  NodePtr run() {
    skip_ws();
    if (pos_ >= src_.size()) throw ParseError("empty expression", pos_);
    NodePtr e = expr();
    skip_ws();
    if (pos_ < src_.size()) throw ParseError("unexpected trailing input", pos_);
    return e;
  }

 private:
  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (accept('+')) lhs = make(Op::Add, lhs, term());
      else if (accept('-')) lhs = make(Op::Sub, lhs, term());
      else return lhs;
    }
  }

  NodePtr term() {
    NodePtr lhs = unary();
    for (;;) {
      if (accept('*')) lhs = make(Op::Mul, lhs, unary());
      else if (accept('/')) lhs = make(Op::Div, lhs, unary());
      else return lhs;
    }
  }

  NodePtr unary() {
    if (accept('-')) return make(Op::Neg, unary());
    return power();
  }

  NodePtr power() {
    NodePtr base = atom();
    if (accept('^')) return make(Op::Pow, base, unary());  // right-associative
    return base;
  }

  NodePtr atom() {
    skip_ws();
    if (pos_ >= src_.size()) throw ParseError("unexpected end of input", pos_);
    char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr e = expr();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

  NodePtr number() {
    const char* begin = src_.data() + pos_;
    const char* end = src_.data() + src_.size();
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc{}) throw ParseError("malformed number", pos_);
    pos_ += static_cast<std::size_t>(ptr - begin);
    auto n = make(Op::Number);
    const_cast<Expr::Node*>(n.get())->value = v;
    return n;
  }

  NodePtr identifier() {
    std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
      ++pos_;
    std::string name(src_.substr(start, pos_ - start));

    static const std::pair<const char*, Fn> fns[] = {
        {"exp", Fn::Exp}, {"log", Fn::Log}, {"sin", Fn::Sin}, {"cos", Fn::Cos}, {"sqrt", Fn::Sqrt}};
    for (auto [fname, f] : fns) {
      if (name == fname) {
        if (!accept('(')) throw ParseError("expected '(' after function name", pos_);
        NodePtr arg = expr();
        if (!accept(')')) throw ParseError("expected ')'", pos_);
        auto n = make(Op::Call, arg);
        const_cast<Expr::Node*>(n.get())->fn = f;
        return n;
      }
    }
    for (std::size_t i = 0; i < coords_.size(); ++i) {
      if (coords_[i] == name) {
        auto n = make(Op::Coord);
        auto* m = const_cast<Expr::Node*>(n.get());
        m->index = static_cast<int>(i);
        m->name = name;
        return n;
      }
    }
    for (std::size_t i = 0; i < consts_.size(); ++i) {
      if (consts_[i] == name) {
        auto n = make(Op::Const);
        auto* m = const_cast<Expr::Node*>(n.get());
        m->index = static_cast<int>(i);
        m->name = name;
        return n;
      }
    }
    throw ParseError("unknown identifier \"" + name + "\"", start);
  }

  std::string_view src_;
  const std::vector<std::string>& coords_;
  const std::vector<std::string>& consts_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr Expr::number(double v) {
  auto n = make(Op::Number);
  const_cast<Node*>(n.get())->value = v;
  return Expr(n);
}

Expr Expr::coordinate(int index, std::string name) {
  auto n = make(Op::Coord);
  auto* m = const_cast<Node*>(n.get());
  m->index = index;
  m->name = std::move(name);
  return Expr(n);
}

Expr Expr::constant(int index, std::string name) {
  auto n = make(Op::Const);
  auto* m = const_cast<Node*>(n.get());
  m->index = index;
  m->name = std::move(name);
  return Expr(n);
}

Expr Expr::add(Expr a, Expr b) { return Expr(make(Op::Add, a.root_, b.root_)); }
Expr Expr::sub(Expr a, Expr b) { return Expr(make(Op::Sub, a.root_, b.root_)); }
Expr Expr::mul(Expr a, Expr b) { return Expr(make(Op::Mul, a.root_, b.root_)); }
Expr Expr::div(Expr a, Expr b) { return Expr(make(Op::Div, a.root_, b.root_)); }
Expr Expr::pow(Expr base, Expr exponent) { return Expr(make(Op::Pow, base.root_, exponent.root_)); }
Expr Expr::neg(Expr a) { return Expr(make(Op::Neg, a.root_)); }

Expr Expr::call(const std::string& fn, Expr arg) {
  static const std::pair<const char*, Fn> fns[] = {
      {"exp", Fn::Exp}, {"log", Fn::Log}, {"sin", Fn::Sin}, {"cos", Fn::Cos}, {"sqrt", Fn::Sqrt}};
  for (auto [fname, f] : fns) {
    if (fn == fname) {
      auto n = make(Op::Call, arg.root_);
      const_cast<Node*>(n.get())->fn = f;
      return Expr(n);
    }
  }
  throw ValidationError("unknown function \"" + fn + "\"");
}

bool Expr::is_literal() const {
  const Node* n = root_.get();
  while (n && n->op == Op::Neg) n = n->a.get();
  return n && n->op == Op::Number;
}

double Expr::literal_value() const {
  const Node* n = root_.get();
  double sign = 1.0;
  while (n && n->op == Op::Neg) {
    sign = -sign;
    n = n->a.get();
  }
  if (!n || n->op != Op::Number) throw Error("literal_value on a non-literal expression");
  return sign * n->value;
}

double Expr::evaluate(std::span<const double> coords, std::span<const double> consts) const {
  if (!root_) throw Error("evaluating an empty expression");
  return eval(root_.get(), coords, consts);
}

std::string Expr::to_string() const {
  if (!root_) return "";
  return node_to_string(root_.get());
}

Expr parse_expr(std::string_view source, const std::vector<std::string>& coordinates,
                const std::vector<std::string>& constants) {
  Parser p(source, coordinates, constants);
  return Expr(p.run());
}

}  // namespace kmnv
