#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "delaysl/errors.hpp"

namespace delaysl {

// Small closed arithmetic language for the coefficient functions q(x) and
// the retardation Delta(x):
//
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := atom ('^' factor)?          -- '^' right-associative
//   atom   := number | 'x' | 'pi' | '-' atom | func '(' expr ')' | '(' expr ')'
//   func   := 'sin' | 'cos' | 'abs'
//
// Trees are immutable after parse; concurrent evaluation at distinct x needs
// no synchronization.
class Expr {
 public:
  Expr() = default;

  // Throws MalformedExpression (position-annotated) or UnknownIdentifier.
  static Expr parse(std::string_view text);

  // Throws DomainError on division by zero, a<0 with non-integer b in a^b,
  // or a non-finite result.
  double eval(double x) const;

  // Canonical text; parsing it back yields a structurally identical tree.
  std::string str() const;

  // True for the literal constant 0 (possibly negated).
  bool is_literal_zero() const;

  bool operator==(const Expr& other) const;

  explicit operator bool() const { return root_ != nullptr; }

  struct Node;

 private:
  explicit Expr(std::shared_ptr<const Node> root) : root_(std::move(root)) {}
  std::shared_ptr<const Node> root_;
};

// Central finite difference of first or second order with step h.
// The caller must keep x +- h inside one smoothness interval.
double numeric_derivative(const Expr& e, double x, int order, double h = 1e-5);

}  // namespace delaysl
