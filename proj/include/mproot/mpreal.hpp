#pragma once

// Arbitrary-precision reals on top of MPFR, plus exact rationals on top of
// GMP. Every BigReal carries its own decimal precision; binary operations
// run at the larger of the two operand precisions and round to nearest.

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>

#include <gmpxx.h>
#include <mpfr.h>

namespace mproot {

/// Working precision expressed in significant decimal digits.
class Precision {
 public:
  static constexpr int kMinDigits = 50;
  static constexpr int kDefaultDigits = 2048;

  Precision() : Precision(kDefaultDigits) {}
  /// Throws std::invalid_argument below kMinDigits.
  explicit Precision(int decimal_digits);

  int digits() const noexcept { return digits_; }
  /// ceil(digits * log2(10)).
  mpfr_prec_t bits() const noexcept { return bits_; }

  friend bool operator==(const Precision&, const Precision&) = default;
  friend auto operator<=>(const Precision& a, const Precision& b) {
    return a.digits_ <=> b.digits_;
  }

 private:
  int digits_;
  mpfr_prec_t bits_;
};

/// Exact rational number. Used for literal constants in expressions and for
/// method parameters such as beta = -1/2.
class Rational {
 public:
  Rational() = default;
  Rational(long value) : q_(value) {}  // NOLINT: implicit by intent
  Rational(long num, long den);
  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  /// Accepts "p/q", integers, and finite decimals with optional exponent.
  static Rational parse(std::string_view text);

  const mpq_class& value() const noexcept { return q_; }
  mpz_class numerator() const { return q_.get_num(); }
  mpz_class denominator() const { return q_.get_den(); }
  bool is_integer() const { return q_.get_den() == 1; }
  bool is_zero() const { return sgn(q_) == 0; }
  int sign() const { return sgn(q_); }
  /// Integer form "p" or "p/q" in lowest terms.
  std::string to_string() const;

  friend Rational operator+(const Rational& a, const Rational& b) { return Rational(mpq_class(a.q_ + b.q_)); }
  friend Rational operator-(const Rational& a, const Rational& b) { return Rational(mpq_class(a.q_ - b.q_)); }
  friend Rational operator*(const Rational& a, const Rational& b) { return Rational(mpq_class(a.q_ * b.q_)); }
  /// Throws DivisionByZero.
  friend Rational operator/(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.q_)); }
  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.q_ < b.q_; }

 private:
  mpq_class q_{0};
};

/// Integer power of a rational; throws DivisionByZero for 0^negative.
Rational pow(const Rational& base, long exponent);

struct BigRealAccess;

class BigReal {
 public:
  /// Zero at the default precision.
  BigReal();
  BigReal(long value, Precision precision);
  BigReal(const Rational& value, Precision precision);
  BigReal(const BigReal& other);
  BigReal(BigReal&& other) noexcept;
  BigReal& operator=(const BigReal& other);
  BigReal& operator=(BigReal&& other) noexcept;
  ~BigReal();

  static BigReal nan(Precision precision);
  static BigReal infinity(Precision precision, int sign = 1);

  Precision precision() const noexcept { return precision_; }
  /// Same value re-rounded to another precision.
  BigReal at(Precision precision) const;

  bool is_nan() const { return mpfr_nan_p(value_) != 0; }
  bool is_inf() const { return mpfr_inf_p(value_) != 0; }
  bool is_finite() const { return mpfr_number_p(value_) != 0; }
  bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  /// -1, 0 or +1; 0 for NaN.
  int sign() const;

  double to_double() const;
  /// Scientific notation with `digits` significant digits (0 = all).
  std::string to_string(int digits = 0) const;
  /// Power-of-ten exponent E with |x| = 0.d... * 10^E; 0 for zero/NaN/inf.
  long decimal_exponent() const;

  mpfr_srcptr raw() const noexcept { return value_; }

  friend BigReal operator+(const BigReal& a, const BigReal& b);
  friend BigReal operator-(const BigReal& a, const BigReal& b);
  friend BigReal operator*(const BigReal& a, const BigReal& b);
  /// Throws DivisionByZero when b is exactly zero.
  friend BigReal operator/(const BigReal& a, const BigReal& b);
  friend BigReal operator-(const BigReal& a);

  friend BigReal operator+(const BigReal& a, long b);
  friend BigReal operator+(long a, const BigReal& b) { return b + a; }
  friend BigReal operator-(const BigReal& a, long b);
  friend BigReal operator-(long a, const BigReal& b);
  friend BigReal operator*(const BigReal& a, long b);
  friend BigReal operator*(long a, const BigReal& b) { return b * a; }
  friend BigReal operator/(const BigReal& a, long b);
  friend BigReal operator/(long a, const BigReal& b);

  /// Ordering is partial: any comparison involving NaN is unordered.
  friend std::partial_ordering operator<=>(const BigReal& a, const BigReal& b);
  friend bool operator==(const BigReal& a, const BigReal& b);
  friend std::partial_ordering operator<=>(const BigReal& a, long b);
  friend bool operator==(const BigReal& a, long b);

 private:
  explicit BigReal(Precision precision);  // NaN placeholder of given precision
  friend struct BigRealAccess;

  mpfr_t value_;
  Precision precision_;
};

/// Parses a plain or scientific decimal literal, correctly rounded.
/// Throws FormatError.
BigReal make(std::string_view text, Precision precision);
BigReal make(long value, Precision precision);

enum class OpKind { kAdd, kSub, kMul, kDiv, kNeg, kPow, kSqrt, kSin, kCos, kTan, kExp, kLog, kAbs };

/// Dispatches one elementary operation. Arity must match the op kind.
BigReal elementary(OpKind op, std::span<const BigReal> args);

BigReal abs(const BigReal& x);
/// Throws DomainError for negative arguments.
BigReal sqrt(const BigReal& x);
BigReal sin(const BigReal& x);
BigReal cos(const BigReal& x);
BigReal tan(const BigReal& x);
BigReal exp(const BigReal& x);
/// Throws DomainError for arguments <= 0.
BigReal log(const BigReal& x);
/// Real power. Negative bases need an integral exponent (DomainError
/// otherwise); 0 to a negative power is DivisionByZero.
BigReal pow(const BigReal& base, const BigReal& exponent);
BigReal pow(const BigReal& base, long exponent);
BigReal max(const BigReal& a, const BigReal& b);
BigReal min(const BigReal& a, const BigReal& b);

BigReal pi(Precision precision);
BigReal euler_e(Precision precision);
/// 10^exponent, correctly rounded.
BigReal pow10(long exponent, Precision precision);

/// Sign-preserving real power sign(base) * |base|^(p/q). A negative base
/// needs an odd q, so (-8)^(1/3) = -2 and (-8)^(2/3) = -4.
BigReal signed_real_pow(const BigReal& base, const Rational& exponent);

/// Renders |x| as "0.MMMe-E" with sig_figs mantissa digits, the style used
/// by published residual tables. Zero renders as "0".
std::string format_paper(const BigReal& x, int sig_figs = 3);

}  // namespace mproot
