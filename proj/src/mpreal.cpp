#include "mproot/mpreal.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <memory>
#include <regex>
#include <stdexcept>
#include <utility>

#include "mproot/errors.hpp"

namespace mproot {

namespace {

constexpr mpfr_rnd_t kRound = MPFR_RNDN;

const std::regex& decimal_pattern() {
  static const std::regex pattern(R"(^[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?$)");
  return pattern;
}

struct MpfrString {
  char* text = nullptr;
  ~MpfrString() {
    if (text != nullptr) mpfr_free_str(text);
  }
};

}  // namespace

Precision::Precision(int decimal_digits) : digits_(decimal_digits) {
  if (decimal_digits < kMinDigits) {
    throw std::invalid_argument("precision must be at least " + std::to_string(kMinDigits) +
                                " decimal digits, got " + std::to_string(decimal_digits));
  }
  // log2(10) is irrational, so the product is never an exact integer.
  bits_ = static_cast<mpfr_prec_t>(std::ceil(decimal_digits * 3.321928094887362347870319429489));
}

// ---------------------------------------------------------------------------
// Rational

Rational::Rational(long num, long den) {
  if (den == 0) throw DivisionByZero("rational with zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  const std::string s(text);
  if (auto slash = s.find('/'); slash != std::string::npos) {
    const Rational num = parse(std::string_view(s).substr(0, slash));
    const Rational den = parse(std::string_view(s).substr(slash + 1));
    return num / den;
  }
  std::smatch m;
  if (!std::regex_match(s, m, decimal_pattern())) {
    throw FormatError("not a rational literal: '" + s + "'");
  }
  std::string mantissa = m[1].str();
  long exponent = 0;
  if (m[3].matched) exponent = std::stol(m[3].str().substr(1));
  std::string digits;
  if (auto dot = mantissa.find('.'); dot != std::string::npos) {
    digits = mantissa.substr(0, dot) + mantissa.substr(dot + 1);
    exponent -= static_cast<long>(mantissa.size() - dot - 1);
  } else {
    digits = mantissa;
  }
  if (digits.empty()) digits = "0";
  mpz_class value(digits, 10);
  if (s.front() == '-') value = -value;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
  mpq_class q = exponent >= 0 ? mpq_class(value * scale) : mpq_class(value, scale);
  return Rational(std::move(q));
}

std::string Rational::to_string() const {
  if (is_integer()) return q_.get_num().get_str();
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.is_zero()) throw DivisionByZero("rational division by zero");
  return Rational(mpq_class(a.q_ / b.q_));
}

Rational pow(const Rational& base, long exponent) {
  if (exponent < 0) return Rational(1) / pow(base, -exponent);
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), base.value().get_num_mpz_t(), static_cast<unsigned long>(exponent));
  mpz_pow_ui(den.get_mpz_t(), base.value().get_den_mpz_t(), static_cast<unsigned long>(exponent));
  return Rational(mpq_class(num, den));
}

// ---------------------------------------------------------------------------
// BigReal lifecycle

struct BigRealAccess {
  static BigReal blank(Precision p) { return BigReal(p); }
  static mpfr_ptr out(BigReal& x) { return x.value_; }
};

namespace {

BigReal blank(Precision p) { return BigRealAccess::blank(p); }
mpfr_ptr out(BigReal& x) { return BigRealAccess::out(x); }
Precision wider(const BigReal& a, const BigReal& b) { return std::max(a.precision(), b.precision()); }

template <typename Fn>
BigReal unary(const BigReal& x, Fn fn) {
  BigReal r = blank(x.precision());
  fn(out(r), x.raw(), kRound);
  return r;
}

}  // namespace

BigReal::BigReal(Precision precision) : precision_(precision) {
  mpfr_init2(value_, precision.bits());
}

BigReal::BigReal() : BigReal(Precision{}) { mpfr_set_zero(value_, 1); }

BigReal::BigReal(long value, Precision precision) : BigReal(precision) {
  mpfr_set_si(value_, value, kRound);
}

BigReal::BigReal(const Rational& value, Precision precision) : BigReal(precision) {
  mpfr_set_q(value_, value.value().get_mpq_t(), kRound);
}

BigReal::BigReal(const BigReal& other) : BigReal(other.precision_) {
  mpfr_set(value_, other.value_, kRound);
}

BigReal::BigReal(BigReal&& other) noexcept : precision_(other.precision_) {
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

BigReal& BigReal::operator=(const BigReal& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision_.bits());
    mpfr_set(value_, other.value_, kRound);
    precision_ = other.precision_;
  }
  return *this;
}

BigReal& BigReal::operator=(BigReal&& other) noexcept {
  if (this != &other) {
    mpfr_swap(value_, other.value_);
    std::swap(precision_, other.precision_);
  }
  return *this;
}

BigReal::~BigReal() { mpfr_clear(value_); }

BigReal BigReal::nan(Precision precision) { return BigReal(precision); }

BigReal BigReal::infinity(Precision precision, int sign) {
  BigReal r(precision);
  mpfr_set_inf(r.value_, sign < 0 ? -1 : 1);
  return r;
}

BigReal BigReal::at(Precision precision) const {
  BigReal r(precision);
  mpfr_set(r.value_, value_, kRound);
  return r;
}

int BigReal::sign() const {
  if (is_nan()) return 0;
  return mpfr_sgn(value_) > 0 ? 1 : (mpfr_sgn(value_) < 0 ? -1 : 0);
}

double BigReal::to_double() const { return mpfr_get_d(value_, kRound); }

std::string BigReal::to_string(int digits) const {
  if (is_nan()) return "nan";
  if (is_inf()) return sign() < 0 ? "-inf" : "inf";
  if (is_zero()) return "0";
  mpfr_exp_t exp10 = 0;
  MpfrString s;
  s.text = mpfr_get_str(nullptr, &exp10, 10, static_cast<size_t>(std::max(digits, 0)), value_, kRound);
  std::string body(s.text);
  std::string sign_text;
  if (body.front() == '-') {
    sign_text = "-";
    body.erase(0, 1);
  }
  while (body.size() > 1 && body.back() == '0') body.pop_back();
  std::string result = sign_text + body.substr(0, 1);
  if (body.size() > 1) result += "." + body.substr(1);
  const long e = static_cast<long>(exp10) - 1;
  if (e != 0) result += "e" + std::to_string(e);
  return result;
}

long BigReal::decimal_exponent() const {
  if (!is_finite() || is_zero()) return 0;
  mpfr_exp_t exp10 = 0;
  MpfrString s;
  s.text = mpfr_get_str(nullptr, &exp10, 10, 2, value_, kRound);
  return static_cast<long>(exp10);
}

// ---------------------------------------------------------------------------
// Arithmetic

BigReal operator+(const BigReal& a, const BigReal& b) {
  BigReal r = blank(wider(a, b));
  mpfr_add(out(r), a.raw(), b.raw(), kRound);
  return r;
}

BigReal operator-(const BigReal& a, const BigReal& b) {
  BigReal r = blank(wider(a, b));
  mpfr_sub(out(r), a.raw(), b.raw(), kRound);
  return r;
}

BigReal operator*(const BigReal& a, const BigReal& b) {
  BigReal r = blank(wider(a, b));
  mpfr_mul(out(r), a.raw(), b.raw(), kRound);
  return r;
}

BigReal operator/(const BigReal& a, const BigReal& b) {
  if (b.is_zero()) throw DivisionByZero("division by zero");
  BigReal r = blank(wider(a, b));
  mpfr_div(out(r), a.raw(), b.raw(), kRound);
  return r;
}

BigReal operator-(const BigReal& a) { return unary(a, mpfr_neg); }

BigReal operator+(const BigReal& a, long b) {
  BigReal r = blank(a.precision());
  mpfr_add_si(out(r), a.raw(), b, kRound);
  return r;
}

BigReal operator-(const BigReal& a, long b) {
  BigReal r = blank(a.precision());
  mpfr_sub_si(out(r), a.raw(), b, kRound);
  return r;
}

BigReal operator-(long a, const BigReal& b) {
  BigReal r = blank(b.precision());
  mpfr_si_sub(out(r), a, b.raw(), kRound);
  return r;
}

BigReal operator*(const BigReal& a, long b) {
  BigReal r = blank(a.precision());
  mpfr_mul_si(out(r), a.raw(), b, kRound);
  return r;
}

BigReal operator/(const BigReal& a, long b) {
  if (b == 0) throw DivisionByZero("division by zero");
  BigReal r = blank(a.precision());
  mpfr_div_si(out(r), a.raw(), b, kRound);
  return r;
}

BigReal operator/(long a, const BigReal& b) {
  if (b.is_zero()) throw DivisionByZero("division by zero");
  BigReal r = blank(b.precision());
  mpfr_si_div(out(r), a, b.raw(), kRound);
  return r;
}

std::partial_ordering operator<=>(const BigReal& a, const BigReal& b) {
  if (a.is_nan() || b.is_nan()) return std::partial_ordering::unordered;
  const int c = mpfr_cmp(a.raw(), b.raw());
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

bool operator==(const BigReal& a, const BigReal& b) { return mpfr_equal_p(a.raw(), b.raw()) != 0; }

std::partial_ordering operator<=>(const BigReal& a, long b) {
  if (a.is_nan()) return std::partial_ordering::unordered;
  const int c = mpfr_cmp_si(a.raw(), b);
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

bool operator==(const BigReal& a, long b) { return !a.is_nan() && mpfr_cmp_si(a.raw(), b) == 0; }

// ---------------------------------------------------------------------------
// Construction from text

BigReal make(std::string_view text, Precision precision) {
  const std::string s(text);
  if (!std::regex_match(s, decimal_pattern())) {
    throw FormatError("not a decimal literal: '" + s + "'");
  }
  BigReal r = blank(precision);
  char* end = nullptr;
  mpfr_strtofr(out(r), s.c_str(), &end, 10, kRound);
  if (end == nullptr || *end != '\0') throw FormatError("not a decimal literal: '" + s + "'");
  return r;
}

BigReal make(long value, Precision precision) { return BigReal(value, precision); }

// ---------------------------------------------------------------------------
// Elementary functions

BigReal abs(const BigReal& x) { return unary(x, mpfr_abs); }

BigReal sqrt(const BigReal& x) {
  if (x.sign() < 0) throw DomainError("sqrt of a negative number");
  return unary(x, mpfr_sqrt);
}

BigReal sin(const BigReal& x) { return unary(x, mpfr_sin); }
BigReal cos(const BigReal& x) { return unary(x, mpfr_cos); }

BigReal tan(const BigReal& x) { return unary(x, mpfr_tan); }

BigReal exp(const BigReal& x) { return unary(x, mpfr_exp); }

BigReal log(const BigReal& x) {
  if (!x.is_nan() && x.sign() <= 0) throw DomainError("log of a non-positive number");
  return unary(x, mpfr_log);
}

BigReal pow(const BigReal& base, const BigReal& exponent) {
  if (base.is_zero() && exponent.sign() < 0) throw DivisionByZero("zero raised to a negative power");
  if (base.sign() < 0 && exponent.is_finite() && mpfr_integer_p(exponent.raw()) == 0) {
    throw DomainError("negative base raised to a non-integer power");
  }
  BigReal r = blank(wider(base, exponent));
  mpfr_pow(out(r), base.raw(), exponent.raw(), kRound);
  return r;
}

BigReal pow(const BigReal& base, long exponent) {
  if (base.is_zero() && exponent < 0) throw DivisionByZero("zero raised to a negative power");
  BigReal r = blank(base.precision());
  mpfr_pow_si(out(r), base.raw(), exponent, kRound);
  return r;
}

BigReal max(const BigReal& a, const BigReal& b) {
  BigReal r = blank(wider(a, b));
  mpfr_max(out(r), a.raw(), b.raw(), kRound);
  return r;
}

BigReal min(const BigReal& a, const BigReal& b) {
  BigReal r = blank(wider(a, b));
  mpfr_min(out(r), a.raw(), b.raw(), kRound);
  return r;
}

BigReal pi(Precision precision) {
  BigReal r = blank(precision);
  mpfr_const_pi(out(r), kRound);
  return r;
}

BigReal euler_e(Precision precision) {
  BigReal one(1, precision);
  return exp(one);
}

BigReal pow10(long exponent, Precision precision) {
  BigReal r = blank(precision);
  mpfr_ui_pow_ui(out(r), 10, static_cast<unsigned long>(std::labs(exponent)), kRound);
  if (exponent < 0) {
    BigReal inv = blank(precision);
    mpfr_ui_div(out(inv), 1, r.raw(), kRound);
    return inv;
  }
  return r;
}

BigReal signed_real_pow(const BigReal& base, const Rational& exponent) {
  const mpz_class p = exponent.numerator();
  const mpz_class q = exponent.denominator();
  if (!q.fits_ulong_p()) throw DomainError("root index too large");
  if (base.is_zero()) {
    if (exponent.sign() < 0) throw DivisionByZero("zero raised to a negative power");
    return exponent.is_zero() ? BigReal(1, base.precision()) : BigReal(0, base.precision());
  }
  const bool negative = base.sign() < 0;
  const bool odd_root = mpz_odd_p(q.get_mpz_t()) != 0;
  if (negative && !odd_root) {
    throw DomainError("even root of a negative number");
  }
  BigReal root = blank(base.precision());
  mpfr_rootn_ui(out(root), abs(base).raw(), q.get_ui(), kRound);
  BigReal r = blank(base.precision());
  mpfr_pow_z(out(r), root.raw(), p.get_mpz_t(), kRound);
  return negative ? -r : r;
}

BigReal elementary(OpKind op, std::span<const BigReal> args) {
  const auto need = [&](std::size_t n) {
    if (args.size() != n) throw std::invalid_argument("wrong number of operands for elementary op");
  };
  switch (op) {
    case OpKind::kAdd: need(2); return args[0] + args[1];
    case OpKind::kSub: need(2); return args[0] - args[1];
    case OpKind::kMul: need(2); return args[0] * args[1];
    case OpKind::kDiv: need(2); return args[0] / args[1];
    case OpKind::kPow: need(2); return pow(args[0], args[1]);
    case OpKind::kNeg: need(1); return -args[0];
    case OpKind::kSqrt: need(1); return sqrt(args[0]);
    case OpKind::kSin: need(1); return sin(args[0]);
    case OpKind::kCos: need(1); return cos(args[0]);
    case OpKind::kTan: need(1); return tan(args[0]);
    case OpKind::kExp: need(1); return exp(args[0]);
    case OpKind::kLog: need(1); return log(args[0]);
    case OpKind::kAbs: need(1); return abs(args[0]);
  }
  throw std::invalid_argument("unknown elementary op");
}

std::string format_paper(const BigReal& x, int sig_figs) {
  if (sig_figs < 1) throw std::invalid_argument("sig_figs must be positive");
  if (x.is_nan()) return "nan";
  if (x.is_inf()) return "inf";
  if (x.is_zero()) return "0";
  const BigReal magnitude = abs(x);
  mpfr_exp_t exp10 = 0;
  MpfrString s;
  s.text = mpfr_get_str(nullptr, &exp10, 10, static_cast<size_t>(sig_figs), magnitude.raw(), kRound);
  const long e = static_cast<long>(exp10);
  return "0." + std::string(s.text) + "e" + (e < 0 ? "-" : "+") + std::to_string(std::labs(e));
}

}  // namespace mproot
