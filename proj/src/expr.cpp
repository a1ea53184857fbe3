#include "mproot/expr.hpp"

#include <array>
#include <cctype>
#include <optional>
#include <stdexcept>
#include <utility>

#include "mproot/errors.hpp"

namespace mproot {

struct ExprNode {
  Expr::Kind kind;
  Rational value;
  Expr::Named named = Expr::Named::kPi;
  Expr::Func func = Expr::Func::kSin;
  Expr::BinOp op = Expr::BinOp::kAdd;
  std::optional<Expr> a;
  std::optional<Expr> b;
  bool has_x = false;
};

namespace {

constexpr std::array<std::pair<std::string_view, Expr::Func>, 7> kFunctions{{
    {"sin", Expr::Func::kSin},
    {"cos", Expr::Func::kCos},
    {"tan", Expr::Func::kTan},
    {"exp", Expr::Func::kExp},
    {"log", Expr::Func::kLog},
    {"sqrt", Expr::Func::kSqrt},
    {"abs", Expr::Func::kAbs},
}};

// Larger integer powers are left unfolded to keep constants small.
constexpr long kMaxFoldedPower = 256;

}  // namespace

// ---------------------------------------------------------------------------
// Construction and access

Expr::Expr() : Expr(variable()) {}

Expr Expr::constant(Rational value) {
  auto n = std::make_shared<ExprNode>();
  n->kind = Kind::kConstant;
  n->value = std::move(value);
  return Expr(std::move(n));
}

Expr Expr::named(Named which) {
  auto n = std::make_shared<ExprNode>();
  n->kind = Kind::kNamed;
  n->named = which;
  return Expr(std::move(n));
}

Expr Expr::variable() {
  static const Expr x = [] {
    auto n = std::make_shared<ExprNode>();
    n->kind = Kind::kVariable;
    n->has_x = true;
    return Expr(std::move(n));
  }();
  return x;
}

Expr Expr::negate(Expr operand) {
  auto n = std::make_shared<ExprNode>();
  n->kind = Kind::kNegate;
  n->has_x = operand.depends_on_x();
  n->a = std::move(operand);
  return Expr(std::move(n));
}

Expr Expr::apply(Func func, Expr operand) {
  auto n = std::make_shared<ExprNode>();
  n->kind = Kind::kApply;
  n->func = func;
  n->has_x = operand.depends_on_x();
  n->a = std::move(operand);
  return Expr(std::move(n));
}

Expr Expr::binary(BinOp op, Expr lhs, Expr rhs) {
  auto n = std::make_shared<ExprNode>();
  n->kind = Kind::kBinary;
  n->op = op;
  n->has_x = lhs.depends_on_x() || rhs.depends_on_x();
  n->a = std::move(lhs);
  n->b = std::move(rhs);
  return Expr(std::move(n));
}

Expr::Kind Expr::kind() const { return node_->kind; }

const Rational& Expr::value() const {
  if (node_->kind != Kind::kConstant) throw std::logic_error("Expr::value on non-constant");
  return node_->value;
}

Expr::Named Expr::named_constant() const {
  if (node_->kind != Kind::kNamed) throw std::logic_error("Expr::named_constant on wrong kind");
  return node_->named;
}

Expr::Func Expr::func() const {
  if (node_->kind != Kind::kApply) throw std::logic_error("Expr::func on wrong kind");
  return node_->func;
}

Expr::BinOp Expr::op() const {
  if (node_->kind != Kind::kBinary) throw std::logic_error("Expr::op on wrong kind");
  return node_->op;
}

const Expr& Expr::operand() const {
  if (!node_->a) throw std::logic_error("Expr::operand on a leaf");
  return *node_->a;
}

const Expr& Expr::rhs() const {
  if (!node_->b) throw std::logic_error("Expr::rhs on a non-binary node");
  return *node_->b;
}

bool Expr::depends_on_x() const { return node_->has_x; }

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Expr::Kind::kConstant: return a.value() == b.value();
    case Expr::Kind::kNamed: return a.named_constant() == b.named_constant();
    case Expr::Kind::kVariable: return true;
    case Expr::Kind::kNegate: return a.operand() == b.operand();
    case Expr::Kind::kApply: return a.func() == b.func() && a.operand() == b.operand();
    case Expr::Kind::kBinary:
      return a.op() == b.op() && a.lhs() == b.lhs() && a.rhs() == b.rhs();
  }
  return false;
}

std::string to_string(Expr::Func func) {
  for (const auto& [name, f] : kFunctions) {
    if (f == func) return std::string(name);
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expr run() {
    Expr e = expression();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw SyntaxError(what, pos_); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Expr expression() {
    Expr lhs = term();
    while (true) {
      if (accept('+')) {
        lhs = Expr::binary(Expr::BinOp::kAdd, lhs, term());
      } else if (accept('-')) {
        lhs = Expr::binary(Expr::BinOp::kSub, lhs, term());
      } else {
        return lhs;
      }
    }
  }

  Expr term() {
    Expr lhs = unary();
    while (true) {
      if (accept('*')) {
        lhs = Expr::binary(Expr::BinOp::kMul, lhs, unary());
      } else if (accept('/')) {
        lhs = Expr::binary(Expr::BinOp::kDiv, lhs, unary());
      } else {
        return lhs;
      }
    }
  }

  // Unary minus binds looser than ^, so -2^2 is -(2^2).
  Expr unary() {
    if (accept('-')) return Expr::negate(unary());
    return power();
  }

  Expr power() {
    Expr base = atom();
    if (accept('^')) return Expr::binary(Expr::BinOp::kPow, base, unary());
    return base;
  }

  Expr atom() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    if (accept('(')) {
      Expr inner = expression();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  bool digit_at(std::size_t i) const {
    return i < text_.size() && std::isdigit(static_cast<unsigned char>(text_[i]));
  }

  Expr number() {
    const std::size_t start = pos_;
    while (digit_at(pos_)) ++pos_;
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      while (digit_at(pos_)) ++pos_;
    }
    if (pos_ - start == 1 && text_[start] == '.') {
      pos_ = start;
      fail("malformed number");
    }
    // An exponent only counts when digits follow, so "2e" stays an error
    // about the stray identifier rather than a malformed literal.
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t look = pos_ + 1;
      if (look < text_.size() && (text_[look] == '+' || text_[look] == '-')) ++look;
      if (digit_at(look)) {
        pos_ = look;
        while (digit_at(pos_)) ++pos_;
      }
    }
    return Expr::constant(Rational::parse(text_.substr(start, pos_ - start)));
  }

  Expr identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    const std::string_view name = text_.substr(start, pos_ - start);
    if (name == "x") return Expr::variable();
    if (name == "pi") return Expr::named(Expr::Named::kPi);
    if (name == "e") return Expr::named(Expr::Named::kE);
    for (const auto& [fname, f] : kFunctions) {
      if (name == fname) {
        if (!accept('(')) fail("expected '(' after " + std::string(name));
        Expr arg = expression();
        if (!accept(')')) fail("expected ')'");
        return Expr::apply(f, arg);
      }
    }
    throw UnknownIdentifier("unknown identifier '" + std::string(name) + "'", start);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse(std::string_view text) { return Parser(text).run(); }

// ---------------------------------------------------------------------------
// Printer

namespace {

int precedence(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::kNegate: return 3;
    case Expr::Kind::kBinary:
      switch (e.op()) {
        case Expr::BinOp::kAdd:
        case Expr::BinOp::kSub: return 1;
        case Expr::BinOp::kMul:
        case Expr::BinOp::kDiv: return 2;
        case Expr::BinOp::kPow: return 4;
      }
      break;
    default: break;
  }
  return 5;
}

std::string print_with(const Expr& e, bool parens) {
  std::string s = print(e);
  return parens ? "(" + s + ")" : s;
}

}  // namespace

std::string print(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::kConstant: {
      const Rational& v = e.value();
      if (v.is_integer() && v.sign() >= 0) return v.to_string();
      return "(" + v.to_string() + ")";
    }
    case Expr::Kind::kNamed: return e.named_constant() == Expr::Named::kPi ? "pi" : "e";
    case Expr::Kind::kVariable: return "x";
    case Expr::Kind::kNegate: return "-" + print_with(e.operand(), precedence(e.operand()) < 3);
    case Expr::Kind::kApply: return to_string(e.func()) + "(" + print(e.operand()) + ")";
    case Expr::Kind::kBinary: break;
  }
  const int p = precedence(e);
  const int pl = precedence(e.lhs());
  const int pr = precedence(e.rhs());
  std::string symbol;
  bool left_parens = pl < p;
  bool right_parens = pr < p;
  switch (e.op()) {
    case Expr::BinOp::kAdd: symbol = "+"; break;
    case Expr::BinOp::kSub: symbol = "-"; right_parens = pr <= p; break;
    case Expr::BinOp::kMul: symbol = "*"; break;
    case Expr::BinOp::kDiv: symbol = "/"; right_parens = pr <= p; break;
    case Expr::BinOp::kPow: symbol = "^"; left_parens = pl <= p; break;
  }
  return print_with(e.lhs(), left_parens) + symbol + print_with(e.rhs(), right_parens);
}

// ---------------------------------------------------------------------------
// Simplification

namespace {

bool is_const(const Expr& e) { return e.kind() == Expr::Kind::kConstant; }
bool is_value(const Expr& e, long v) { return is_const(e) && e.value() == Rational(v); }

std::optional<long> small_integer(const Rational& r) {
  if (!r.is_integer()) return std::nullopt;
  const mpz_class n = r.numerator();
  if (!n.fits_slong_p()) return std::nullopt;
  return n.get_si();
}

Expr make_neg(const Expr& a) {
  if (is_const(a)) return Expr::constant(-a.value());
  if (a.kind() == Expr::Kind::kNegate) return a.operand();
  return Expr::negate(a);
}

Expr make_binary(Expr::BinOp op, const Expr& a, const Expr& b) {
  using Op = Expr::BinOp;
  if (is_const(a) && is_const(b)) {
    const Rational& x = a.value();
    const Rational& y = b.value();
    switch (op) {
      case Op::kAdd: return Expr::constant(x + y);
      case Op::kSub: return Expr::constant(x - y);
      case Op::kMul: return Expr::constant(x * y);
      case Op::kDiv:
        if (!y.is_zero()) return Expr::constant(x / y);
        break;
      case Op::kPow:
        if (auto n = small_integer(y); n && std::labs(*n) <= kMaxFoldedPower && !(x.is_zero() && *n < 0)) {
          return Expr::constant(pow(x, *n));
        }
        break;
    }
  }
  switch (op) {
    case Op::kAdd:
      if (is_value(a, 0)) return b;
      if (is_value(b, 0)) return a;
      if (b.kind() == Expr::Kind::kNegate) return make_binary(Op::kSub, a, b.operand());
      break;
    case Op::kSub:
      if (is_value(b, 0)) return a;
      if (is_value(a, 0)) return make_neg(b);
      if (b.kind() == Expr::Kind::kNegate) return make_binary(Op::kAdd, a, b.operand());
      break;
    case Op::kMul:
      if (is_value(a, 0) || is_value(b, 0)) return Expr::constant(0);
      if (is_value(a, 1)) return b;
      if (is_value(b, 1)) return a;
      break;
    case Op::kDiv:
      if (is_value(b, 1)) return a;
      if (is_value(a, 0) && !is_value(b, 0)) return Expr::constant(0);
      break;
    case Op::kPow:
      if (is_value(b, 1)) return a;
      if (is_value(b, 0)) return Expr::constant(1);
      break;
  }
  return Expr::binary(op, a, b);
}

Expr add(const Expr& a, const Expr& b) { return make_binary(Expr::BinOp::kAdd, a, b); }
Expr sub(const Expr& a, const Expr& b) { return make_binary(Expr::BinOp::kSub, a, b); }
Expr mul(const Expr& a, const Expr& b) { return make_binary(Expr::BinOp::kMul, a, b); }
Expr div(const Expr& a, const Expr& b) { return make_binary(Expr::BinOp::kDiv, a, b); }
Expr pow_of(const Expr& a, const Expr& b) { return make_binary(Expr::BinOp::kPow, a, b); }
Expr call(Expr::Func f, const Expr& a) { return Expr::apply(f, a); }
Expr num(long v) { return Expr::constant(v); }

}  // namespace

Expr simplify(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::kConstant:
    case Expr::Kind::kNamed:
    case Expr::Kind::kVariable: return e;
    case Expr::Kind::kNegate: return make_neg(simplify(e.operand()));
    case Expr::Kind::kApply: return Expr::apply(e.func(), simplify(e.operand()));
    case Expr::Kind::kBinary: return make_binary(e.op(), simplify(e.lhs()), simplify(e.rhs()));
  }
  return e;
}

// ---------------------------------------------------------------------------
// Differentiation

namespace {

Expr derive(const Expr& e) {
  using F = Expr::Func;
  if (!e.depends_on_x()) return num(0);
  switch (e.kind()) {
    case Expr::Kind::kConstant:
    case Expr::Kind::kNamed: return num(0);
    case Expr::Kind::kVariable: return num(1);
    case Expr::Kind::kNegate: return make_neg(derive(e.operand()));
    case Expr::Kind::kApply: {
      const Expr& u = e.operand();
      const Expr du = derive(u);
      switch (e.func()) {
        case F::kSin: return mul(call(F::kCos, u), du);
        case F::kCos: return make_neg(mul(call(F::kSin, u), du));
        case F::kTan: return div(du, pow_of(call(F::kCos, u), num(2)));
        case F::kExp: return mul(call(F::kExp, u), du);
        case F::kLog: return div(du, u);
        case F::kSqrt: return div(du, mul(num(2), call(F::kSqrt, u)));
        case F::kAbs: return div(mul(u, du), call(F::kAbs, u));
      }
      break;
    }
    case Expr::Kind::kBinary: break;
  }
  const Expr& u = e.lhs();
  const Expr& v = e.rhs();
  switch (e.op()) {
    case Expr::BinOp::kAdd: return add(derive(u), derive(v));
    case Expr::BinOp::kSub: return sub(derive(u), derive(v));
    case Expr::BinOp::kMul: return add(mul(derive(u), v), mul(u, derive(v)));
    case Expr::BinOp::kDiv:
      if (!v.depends_on_x()) return div(derive(u), v);
      return div(sub(mul(derive(u), v), mul(u, derive(v))), pow_of(v, num(2)));
    case Expr::BinOp::kPow:
      if (!v.depends_on_x()) return mul(mul(v, pow_of(u, sub(v, num(1)))), derive(u));
      if (!u.depends_on_x()) return mul(mul(e, call(F::kLog, u)), derive(v));
      return mul(e, add(mul(derive(v), call(F::kLog, u)), div(mul(v, derive(u)), u)));
  }
  return num(0);
}

}  // namespace

Expr differentiate(const Expr& e) { return simplify(derive(simplify(e))); }

// ---------------------------------------------------------------------------
// Evaluation

namespace {

// Real power with a rational exponent. For a negative base and odd root
// index this is the real root raised to p, so x^(2/3) stays even and
// x^(1/3) keeps the derivative the differentiator produces.
BigReal rational_pow(const BigReal& a, const Rational& k) {
  if (auto n = small_integer(k)) return pow(a, *n);
  if (a.sign() < 0 && mpz_even_p(k.value().get_num_mpz_t()) != 0) return signed_real_pow(-a, k);
  return signed_real_pow(a, k);
}

}  // namespace

BigReal eval(const Expr& e, const BigReal& x) {
  const Precision p = x.precision();
  switch (e.kind()) {
    case Expr::Kind::kConstant: return BigReal(e.value(), p);
    case Expr::Kind::kNamed: return e.named_constant() == Expr::Named::kPi ? pi(p) : euler_e(p);
    case Expr::Kind::kVariable: return x;
    case Expr::Kind::kNegate: return -eval(e.operand(), x);
    case Expr::Kind::kApply: {
      const BigReal u = eval(e.operand(), x);
      switch (e.func()) {
        case Expr::Func::kSin: return sin(u);
        case Expr::Func::kCos: return cos(u);
        case Expr::Func::kTan: return tan(u);
        case Expr::Func::kExp: return exp(u);
        case Expr::Func::kLog: return log(u);
        case Expr::Func::kSqrt: return sqrt(u);
        case Expr::Func::kAbs: return abs(u);
      }
      break;
    }
    case Expr::Kind::kBinary: break;
  }
  const BigReal a = eval(e.lhs(), x);
  if (e.op() == Expr::BinOp::kPow && !e.rhs().depends_on_x()) {
    const Expr k = is_const(e.rhs()) ? e.rhs() : simplify(e.rhs());
    if (is_const(k)) return rational_pow(a, k.value());
  }
  const BigReal b = eval(e.rhs(), x);
  switch (e.op()) {
    case Expr::BinOp::kAdd: return a + b;
    case Expr::BinOp::kSub: return a - b;
    case Expr::BinOp::kMul: return a * b;
    case Expr::BinOp::kDiv: return a / b;
    case Expr::BinOp::kPow: return pow(a, b);
  }
  return BigReal::nan(p);
}

}  // namespace mproot
