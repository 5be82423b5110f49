#include "delaysl/expression.hpp"

#include <charconv>
#include <cctype>
#include <cmath>
#include <numbers>

#include "delaysl/util.hpp"

namespace delaysl {

enum class NodeKind { number, var_x, pi_const, negate, call, binary };
enum class Func { sin, cos, abs };
enum class BinOp { add, sub, mul, div, pow };

struct Expr::Node {
  NodeKind kind;
  double number = 0.0;
  Func func = Func::sin;
  BinOp op = BinOp::add;
  std::shared_ptr<const Node> a, b;
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;

NodePtr make_number(double v) {
  auto n = std::make_shared<Expr::Node>();
  n->kind = NodeKind::number;
  n->number = v;
  return n;
}

NodePtr make_leaf(NodeKind k) {
  auto n = std::make_shared<Expr::Node>();
  n->kind = k;
  return n;
}

NodePtr make_neg(NodePtr a) {
  auto n = std::make_shared<Expr::Node>();
  n->kind = NodeKind::negate;
  n->a = std::move(a);
  return n;
}

NodePtr make_call(Func f, NodePtr a) {
  auto n = std::make_shared<Expr::Node>();
  n->kind = NodeKind::call;
  n->func = f;
  n->a = std::move(a);
  return n;
}

NodePtr make_bin(BinOp op, NodePtr a, NodePtr b) {
  auto n = std::make_shared<Expr::Node>();
  n->kind = NodeKind::binary;
  n->op = op;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  NodePtr run() {
    NodePtr e = expr();
    skip_ws();
    if (pos_ != text_.size())
      throw MalformedExpression("unexpected trailing input", pos_);
    return e;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool consume(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (consume('+'))
        lhs = make_bin(BinOp::add, lhs, term());
      else if (consume('-'))
        lhs = make_bin(BinOp::sub, lhs, term());
      else
        return lhs;
    }
  }

  NodePtr term() {
    NodePtr lhs = factor();
    for (;;) {
      if (consume('*'))
        lhs = make_bin(BinOp::mul, lhs, factor());
      else if (consume('/'))
        lhs = make_bin(BinOp::div, lhs, factor());
      else
        return lhs;
    }
  }

  NodePtr factor() {
    NodePtr base = atom();
    if (consume('^')) return make_bin(BinOp::pow, base, factor());
    return base;
  }

  NodePtr atom() {
    char c = peek();
    std::size_t start = pos_;
    if (c == '\0') throw MalformedExpression("unexpected end of input", pos_);
    if (c == '-') {
      ++pos_;
      return make_neg(atom());
    }
    if (c == '(') {
      ++pos_;
      NodePtr e = expr();
      if (!consume(')')) throw MalformedExpression("expected ')'", pos_);
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number(start);
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier(start);
    throw MalformedExpression(std::string("unexpected character '") + c + "'", pos_);
  }

  NodePtr number(std::size_t start) {
    std::size_t end = start;
    auto digits = [&] {
      while (end < text_.size() && std::isdigit(static_cast<unsigned char>(text_[end]))) ++end;
    };
    digits();
    if (end < text_.size() && text_[end] == '.') {
      ++end;
      digits();
    }
    if (end < text_.size() && (text_[end] == 'e' || text_[end] == 'E')) {
      std::size_t mark = end;
      ++end;
      if (end < text_.size() && (text_[end] == '+' || text_[end] == '-')) ++end;
      std::size_t exp_start = end;
      digits();
      if (end == exp_start) end = mark;  // "1e" without digits: not an exponent
    }
    double v = 0.0;
    auto res = std::from_chars(text_.data() + start, text_.data() + end, v);
    if (res.ec != std::errc() || res.ptr != text_.data() + end)
      throw MalformedExpression("invalid number", start);
    pos_ = end;
    return make_number(v);
  }

  NodePtr identifier(std::size_t start) {
    std::size_t end = start;
    while (end < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_'))
      ++end;
    std::string name(text_.substr(start, end - start));
    pos_ = end;
    if (name == "x") return make_leaf(NodeKind::var_x);
    if (name == "pi") return make_leaf(NodeKind::pi_const);
    Func f;
    if (name == "sin")
      f = Func::sin;
    else if (name == "cos")
      f = Func::cos;
    else if (name == "abs")
      f = Func::abs;
    else
      throw UnknownIdentifier(name, start);
    if (!consume('(')) throw MalformedExpression("expected '(' after '" + name + "'", pos_);
    NodePtr arg = expr();
    if (!consume(')')) throw MalformedExpression("expected ')'", pos_);
    return make_call(f, arg);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

double eval_node(const Expr::Node& n, double x) {
  switch (n.kind) {
    case NodeKind::number:
      return n.number;
    case NodeKind::var_x:
      return x;
    case NodeKind::pi_const:
      return std::numbers::pi;
    case NodeKind::negate:
      return -eval_node(*n.a, x);
    case NodeKind::call: {
      double v = eval_node(*n.a, x);
      switch (n.func) {
        case Func::sin:
          return std::sin(v);
        case Func::cos:
          return std::cos(v);
        case Func::abs:
          return std::fabs(v);
      }
      break;
    }
    case NodeKind::binary: {
      double a = eval_node(*n.a, x);
      double b = eval_node(*n.b, x);
      switch (n.op) {
        case BinOp::add:
          return a + b;
        case BinOp::sub:
          return a - b;
        case BinOp::mul:
          return a * b;
        case BinOp::div:
          if (b == 0.0) throw DomainError("division by zero");
          return a / b;
        case BinOp::pow: {
          if (a < 0.0 && b != std::floor(b))
            throw DomainError("negative base with non-integer exponent");
          if (a == 0.0 && b < 0.0) throw DomainError("zero base with negative exponent");
          double r = std::pow(a, b);
          if (!std::isfinite(r)) throw DomainError("non-finite power");
          return r;
        }
      }
      break;
    }
  }
  throw DomainError("corrupt expression tree");
}

// Precedence levels for minimal-parenthesis canonical printing. Levels match
// the grammar: '+/-' 1, '*//' 2, '^' 3, atoms (incl. unary minus) 5.
int node_prec(const Expr::Node& n) {
  switch (n.kind) {
    case NodeKind::binary:
      switch (n.op) {
        case BinOp::add:
        case BinOp::sub:
          return 1;
        case BinOp::mul:
        case BinOp::div:
          return 2;
        case BinOp::pow:
          return 3;
      }
      return 1;
    default:
      return 5;
  }
}

void print_node(const Expr::Node& n, int min_prec, std::string& out) {
  int prec = node_prec(n);
  bool parens = prec < min_prec;
  if (parens) out += '(';
  switch (n.kind) {
    case NodeKind::number:
      out += format_double(n.number);
      break;
    case NodeKind::var_x:
      out += 'x';
      break;
    case NodeKind::pi_const:
      out += "pi";
      break;
    case NodeKind::negate:
      out += '-';
      print_node(*n.a, 5, out);
      break;
    case NodeKind::call:
      out += n.func == Func::sin ? "sin" : n.func == Func::cos ? "cos" : "abs";
      out += '(';
      print_node(*n.a, 0, out);
      out += ')';
      break;
    case NodeKind::binary: {
      const char* sym = nullptr;
      int lmin = 0, rmin = 0;
      switch (n.op) {
        case BinOp::add:
          sym = "+"; lmin = 1; rmin = 2;
          break;
        case BinOp::sub:
          sym = "-"; lmin = 1; rmin = 2;
          break;
        case BinOp::mul:
          sym = "*"; lmin = 2; rmin = 3;
          break;
        case BinOp::div:
          sym = "/"; lmin = 2; rmin = 3;
          break;
        case BinOp::pow:
          sym = "^"; lmin = 5; rmin = 3;  // base is an atom, exponent a factor
          break;
      }
      print_node(*n.a, lmin, out);
      out += sym;
      print_node(*n.b, rmin, out);
      break;
    }
  }
  if (parens) out += ')';
}

bool nodes_equal(const Expr::Node* a, const Expr::Node* b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case NodeKind::number:
      return a->number == b->number;
    case NodeKind::var_x:
    case NodeKind::pi_const:
      return true;
    case NodeKind::negate:
      return nodes_equal(a->a.get(), b->a.get());
    case NodeKind::call:
      return a->func == b->func && nodes_equal(a->a.get(), b->a.get());
    case NodeKind::binary:
      return a->op == b->op && nodes_equal(a->a.get(), b->a.get()) &&
             nodes_equal(a->b.get(), b->b.get());
  }
  return false;
}

}  // namespace

Expr Expr::parse(std::string_view text) {
  Parser p(text);
  return Expr(p.run());
}

double Expr::eval(double x) const {
  if (!root_) throw DomainError("empty expression");
  return eval_node(*root_, x);
}

std::string Expr::str() const {
  if (!root_) return {};
  std::string out;
  print_node(*root_, 0, out);
  return out;
}

bool Expr::is_literal_zero() const {
  const Node* n = root_.get();
  while (n && n->kind == NodeKind::negate) n = n->a.get();
  return n && n->kind == NodeKind::number && n->number == 0.0;
}

bool Expr::operator==(const Expr& other) const {
  return nodes_equal(root_.get(), other.root_.get());
}

double numeric_derivative(const Expr& e, double x, int order, double h) {
  if (h <= 0.0) throw std::invalid_argument("numeric_derivative: h must be positive");
  if (order == 1) return (e.eval(x + h) - e.eval(x - h)) / (2.0 * h);
  if (order == 2) return (e.eval(x + h) - 2.0 * e.eval(x) + e.eval(x - h)) / (h * h);
  throw std::invalid_argument("numeric_derivative: order must be 1 or 2");
}

}  // namespace delaysl
