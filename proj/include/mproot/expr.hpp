#pragma once

// Univariate real expressions in x: parsing, printing, local simplification,
// symbolic differentiation and evaluation at a BigReal point.

#include <memory>
#include <string>
#include <string_view>

#include "mproot/mpreal.hpp"

namespace mproot {

struct ExprNode;

/// Immutable expression tree. Copies share structure.
class Expr {
 public:
  enum class Kind { kConstant, kNamed, kVariable, kNegate, kApply, kBinary };
  enum class Named { kPi, kE };
  enum class Func { kSin, kCos, kTan, kExp, kLog, kSqrt, kAbs };
  enum class BinOp { kAdd, kSub, kMul, kDiv, kPow };

  /// The variable x.
  Expr();

  static Expr constant(Rational value);
  static Expr named(Named which);
  static Expr variable();
  static Expr negate(Expr operand);
  static Expr apply(Func func, Expr operand);
  static Expr binary(BinOp op, Expr lhs, Expr rhs);

  Kind kind() const;
  /// Only valid for the matching kind; std::logic_error otherwise.
  const Rational& value() const;
  Named named_constant() const;
  Func func() const;
  BinOp op() const;
  /// Operand of kNegate/kApply, left side of kBinary.
  const Expr& operand() const;
  const Expr& lhs() const { return operand(); }
  const Expr& rhs() const;

  bool depends_on_x() const;

  friend bool operator==(const Expr& a, const Expr& b);

 private:
  explicit Expr(std::shared_ptr<const ExprNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const ExprNode> node_;
};

/// Grammar, loosest to tightest: + -, * /, unary minus, ^ (right
/// associative), atoms. Atoms are numbers, x, pi, e, calls of
/// sin cos tan exp log sqrt abs, and parenthesised expressions.
/// Throws SyntaxError / UnknownIdentifier with the byte offset.
Expr parse(std::string_view text);

/// Text that parses back to the same tree up to simplification.
std::string print(const Expr& e);

/// Constant folding on rationals and 0/1 identities. Never reorders terms.
Expr simplify(const Expr& e);

/// d/dx, simplified. abs(u) differentiates to u*u'/abs(u).
Expr differentiate(const Expr& e);

/// Value at x, computed at x's precision.
BigReal eval(const Expr& e, const BigReal& x);

std::string to_string(Expr::Func func);

}  // namespace mproot
