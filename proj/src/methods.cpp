#include "mproot/methods.hpp"

#include <algorithm>
#include <utility>

#include "mproot/divdiff.hpp"
#include "mproot/errors.hpp"

namespace mproot {

namespace {

// Bookkeeping shared by every scheme: precision, evaluation counts, the
// early-exit test and guarded division.
class Stepper {
 public:
  Stepper(const DifferentiableFn& f, const BigReal& x, const StepContext& ctx)
      : f_(f), p_(ctx.precision.value_or(x.precision())), tol_(guard_tolerance(p_)), x_(x.at(p_)) {}

  const BigReal& x() const { return x_; }
  Precision precision() const { return p_; }
  BigReal constant(const Rational& r) const { return BigReal(r, p_); }

  BigReal value(const BigReal& t) {
    ++result_.fn_eval_count;
    return f_(t);
  }

  BigReal slope(const BigReal& t) {
    ++result_.deriv_eval_count;
    return f_.derivative(t);
  }

  bool settled(const BigReal& ft) const { return abs(ft) <= tol_; }

  void note(std::string label, const BigReal& v) { result_.intermediates.emplace_back(std::move(label), v); }

  /// num/den, refusing denominators within tol * reference of zero.
  BigReal quotient(const BigReal& num, const BigReal& den, const BigReal& reference, const char* what) const {
    if (!den.is_finite() || den.is_zero() || abs(den) <= tol_ * reference) {
      throw DegenerateStep(std::string("vanishing denominator: ") + what);
    }
    return num / den;
  }

  BigReal quotient(const BigReal& num, const BigReal& den, const char* what) const {
    return quotient(num, den, BigReal(1, p_), what);
  }

  StepResult finish(BigReal next) {
    result_.next = std::move(next);
    return std::move(result_);
  }

  StepResult exit_at(const std::string& label, const BigReal& point) {
    if (result_.intermediates.empty() || result_.intermediates.back().first != label) note(label, point);
    result_.early_exit = true;
    return finish(point);
  }

 private:
  const DifferentiableFn& f_;
  Precision p_;
  BigReal tol_;
  BigReal x_;
  StepResult result_;
};

BigReal scale(const BigReal& a, const BigReal& b) { return max(abs(a), abs(b)); }

// Guard failures inside divided differences and exact zero divisions both
// mean the step cannot proceed.
template <typename Body>
StepResult guarded(Body body) {
  try {
    return body();
  } catch (const DegenerateNodes& e) {
    throw DegenerateStep(e.what());
  } catch (const DivisionByZero& e) {
    throw DegenerateStep(e.what());
  }
}

// Common opening: f(x), f'(x), the Newton point y and f(y).
struct Opening {
  BigReal fx, d, y, fy;
};

std::optional<StepResult> open(Stepper& s, Opening& o, bool evaluate_fy = true) {
  o.fx = s.value(s.x());
  if (s.settled(o.fx)) return s.exit_at("x", s.x());
  o.d = s.slope(s.x());
  o.y = s.x() - s.quotient(o.fx, o.d, "f'(x)");
  s.note("y", o.y);
  if (!evaluate_fy) return std::nullopt;
  o.fy = s.value(o.y);
  if (s.settled(o.fy)) return s.exit_at("y", o.y);
  return std::nullopt;
}

// Kung's weight (fx + beta fy)/(fx + (beta-2) fy) with beta = p/q scaled by
// q, so beta = -1/2 performs exactly the operations of (2fx - fy)/(2fx - 5fy).
BigReal kung_weight(const Stepper& s, const BigReal& fx, const BigReal& fy, const Rational& beta) {
  const mpz_class p = beta.numerator();
  const mpz_class q = beta.denominator();
  const mpz_class r = p - 2 * q;
  if (p.fits_slong_p() && q.fits_slong_p() && r.fits_slong_p()) {
    const BigReal qfx = fx * q.get_si();
    return s.quotient(qfx + fy * p.get_si(), qfx + fy * r.get_si(), scale(qfx, fy * r.get_si()), "Kung weight");
  }
  const BigReal b = s.constant(beta);
  return s.quotient(fx + b * fy, fx + (b - 2) * fy, scale(fx, (b - 2) * fy), "Kung weight");
}

// Shared third step of Bi I-IV.
BigReal bi_finish(const Stepper& s, const Opening& o, const BigReal& z, const BigReal& fz, const Rational& gamma,
                  Reading reading) {
  const BigReal g = s.constant(gamma);
  const BigReal weight = s.quotient(o.fx + (g + 2) * fz, o.fx + g * fz, scale(o.fx, g * fz), "Bi weight");
  const BigReal bracket = dd1(z, fz, o.y, o.fy) + dd2_confluent(z, s.x(), fz, o.fx, o.d) * (z - o.y);
  if (reading == Reading::kAsTabulated) return z - weight * fz * bracket;
  return z - weight * s.quotient(fz, bracket, abs(o.d), "Bi denominator");
}

StepResult bi_common(const DifferentiableFn& f, const BigReal& x, const Rational& gamma, const StepContext& ctx,
                     const std::function<BigReal(const Stepper&, const Opening&)>& z_weight) {
  return guarded([&] {
    Stepper s(f, x, ctx);
    Opening o;
    if (auto done = open(s, o)) return std::move(*done);
    const BigReal z = o.y - z_weight(s, o) * o.fy / o.d;
    s.note("z", z);
    const BigReal fz = s.value(z);
    if (s.settled(fz)) return s.exit_at("z", z);
    return s.finish(bi_finish(s, o, z, fz, gamma, ctx.reading));
  });
}

// Shared opening of Sharma I-III: z = y - fx/(fx - 2fy) * fy/f'(x).
StepResult sharma_common(const DifferentiableFn& f, const BigReal& x, const StepContext& ctx,
                         const std::function<BigReal(const Stepper&, const BigReal& fx, const BigReal& fz)>& weight) {
  return guarded([&] {
    Stepper s(f, x, ctx);
    Opening o;
    if (auto done = open(s, o)) return std::move(*done);
    const BigReal two_fy = 2 * o.fy;
    const BigReal z = o.y - s.quotient(o.fx, o.fx - two_fy, scale(o.fx, two_fy), "Sharma weight") * o.fy / o.d;
    s.note("z", z);
    const BigReal fz = s.value(z);
    if (s.settled(fz)) return s.exit_at("z", z);
    const BigReal fxy = dd1(s.x(), o.fx, o.y, o.fy);
    const BigReal fyz = dd1(o.y, o.fy, z, fz);
    const BigReal fxz = dd1(s.x(), o.fx, z, fz);
    const BigReal tail = s.quotient(fxy * fz, fyz * fxz, o.d * o.d, "Sharma denominator");
    return s.finish(z - weight(s, o.fx, fz) * tail);
  });
}

// Third step z - f(z)/(2f[x,z] + f[y,z] - 2f[x,y] + (y-z) f[y,x,x]).
StepResult divided_difference_finish(Stepper& s, const Opening& o, const BigReal& z) {
  s.note("z", z);
  const BigReal fz = s.value(z);
  if (s.settled(fz)) return s.exit_at("z", z);
  const NodeTriple nodes(s.x(), o.y, z, o.fx, o.fy, fz, o.d);
  return s.finish(z - s.quotient(fz, hermite_deriv_at_z_alt(nodes), abs(o.d), "H'(z)"));
}

}  // namespace

// ---------------------------------------------------------------------------

StepResult step_newton(const DifferentiableFn& f, const BigReal& x, const StepContext& ctx) {
  return guarded([&] {
    Stepper s(f, x, ctx);
    const BigReal fx = s.value(s.x());
    if (s.settled(fx)) return s.exit_at("x", s.x());
    const BigReal d = s.slope(s.x());
    return s.finish(s.x() - s.quotient(fx, d, "f'(x)"));
  });
}

StepResult step_kung4(const DifferentiableFn& f, const BigReal& x, const Rational& beta, const StepContext& ctx) {
  return guarded([&] {
    Stepper s(f, x, ctx);
    Opening o;
    if (auto done = open(s, o)) return std::move(*done);
    const BigReal z = o.y - kung_weight(s, o.fx, o.fy, beta) * o.fy / o.d;
    s.note("z", z);
    return s.finish(z);
  });
}

StepResult step_jc8(const DifferentiableFn& f, const BigReal& x, const StepContext& ctx) {
  return guarded([&] {
    Stepper s(f, x, ctx);
    Opening o;
    if (auto done = open(s, o)) return std::move(*done);
    const BigReal two_fx = 2 * o.fx;
    const BigReal five_fy = 5 * o.fy;
    const BigReal weight = s.quotient(two_fx - o.fy, two_fx - five_fy, scale(two_fx, five_fy), "2f(x)-5f(y)");
    const BigReal z = o.y - weight * o.fy / o.d;
    s.note("z", z);
    const BigReal fz = s.value(z);
    if (s.settled(fz)) return s.exit_at("z", z);
    const NodeTriple nodes(s.x(), o.y, z, o.fx, o.fy, fz, o.d);
    return s.finish(z - s.quotient(fz, hermite_deriv_at_z(nodes), abs(o.d), "H'(z)"));
  });
}

StepResult step_bi1(const DifferentiableFn& f, const BigReal& x, const Rational& gamma, const StepContext& ctx) {
  return bi_common(f, x, gamma, ctx, [](const Stepper& s, const Opening& o) {
    const BigReal two_fx = 2 * o.fx;
    const BigReal five_fy = 5 * o.fy;
    return s.quotient(two_fx - o.fy, two_fx - five_fy, scale(two_fx, five_fy), "2f(x)-5f(y)");
  });
}

StepResult step_bi2(const DifferentiableFn& f, const BigReal& x, const Rational& gamma, const StepContext& ctx) {
  return bi_common(f, x, gamma, ctx, [&ctx](const Stepper& s, const Opening& o) {
    const BigReal t = o.fy / o.fx;
    // Printed "2f(y)/2f(x)"; the tables evaluate 2f(y)/f(x).
    const BigReal lead = ctx.reading == Reading::kAsTabulated ? 2 * t : (2 * o.fy) / (2 * o.fx);
    (void)s;
    return 1 + lead + 5 * t * t + t * t * t;
  });
}

StepResult step_bi3(const DifferentiableFn& f, const BigReal& x, const Rational& gamma, const StepContext& ctx) {
  return bi_common(f, x, gamma, ctx, [&ctx](const Stepper& s, const Opening& o) {
    const BigReal t = o.fy / o.fx;
    const BigReal lead = ctx.reading == Reading::kAsTabulated ? 2 * t : (2 * o.fy) / (2 * o.fx);
    const BigReal inner = 1 - lead - t * t + t * t * t;
    return s.quotient(BigReal(1, s.precision()), inner, "Bi III bracket");
  });
}

StepResult step_bi4(const DifferentiableFn& f, const BigReal& x, const Rational& gamma, const StepContext& ctx) {
  return bi_common(f, x, gamma, ctx, [](const Stepper& s, const Opening& o) {
    const BigReal base = (2 * o.fx - 3 * o.fy) / o.fx;
    if (base.is_zero()) throw DegenerateStep("vanishing denominator: Bi IV bracket");
    (void)s;
    return signed_real_pow(base, Rational(-2, 3));
  });
}

StepResult step_sharma1(const DifferentiableFn& f, const BigReal& x, const Rational& gamma, const StepContext& ctx) {
  return sharma_common(f, x, ctx, [&gamma](const Stepper& s, const BigReal& fx, const BigReal& fz) {
    const BigReal r = fz / fx;
    return 1 + r + s.constant(gamma) * r * r;
  });
}

StepResult step_sharma2(const DifferentiableFn& f, const BigReal& x, const Rational& gamma, const StepContext& ctx) {
  return sharma_common(f, x, ctx, [&gamma](const Stepper& s, const BigReal& fx, const BigReal& fz) {
    const BigReal g = s.constant(gamma);
    return s.quotient(fx + (g + 1) * fz, fx + g * fz, scale(fx, g * fz), "Sharma II weight");
  });
}

StepResult step_sharma3(const DifferentiableFn& f, const BigReal& x, const Rational& gamma, const StepContext& ctx) {
  if (gamma.is_zero()) throw DegenerateStep("Sharma III needs gamma != 0");
  return sharma_common(f, x, ctx, [&gamma](const Stepper& s, const BigReal& fx, const BigReal& fz) {
    return signed_real_pow(1 + s.constant(gamma) * fz / fx, Rational(1) / gamma);
  });
}

StepResult step_thukral(const DifferentiableFn& f, const BigReal& x, const StepContext& ctx) {
  return guarded([&] {
    Stepper s(f, x, ctx);
    Opening o;
    if (auto done = open(s, o)) return std::move(*done);
    const BigReal z = s.x() - s.quotient(o.fx * o.fx + o.fy * o.fy, o.d * (o.fx - o.fy),
                                         abs(o.d) * scale(o.fx, o.fy), "f'(x)(f(x)-f(y))");
    s.note("z", z);
    const BigReal fz = s.value(z);
    if (s.settled(fz)) return s.exit_at("z", z);
    const BigReal mu = o.fy / o.fx;
    const BigReal ratio = s.quotient(1 + mu * mu, 1 - mu, "1-mu");
    const BigReal weight = ratio * ratio - 2 * mu * mu - 6 * mu * mu * mu + fz / o.fy + 4 * fz / o.fx;
    return s.finish(z - weight * fz / o.d);
  });
}

StepResult step_wang(const DifferentiableFn& f, const BigReal& x, const StepContext& ctx) {
  return guarded([&] {
    Stepper s(f, x, ctx);
    Opening o;
    if (auto done = open(s, o)) return std::move(*done);
    const BigReal den = 2 * dd1(s.x(), o.fx, o.y, o.fy) - o.d;
    const BigReal z = o.y - s.quotient(o.fy, den, abs(o.d), "2f[x,y]-f'(x)");
    return divided_difference_finish(s, o, z);
  });
}

StepResult step_sargolzaei(const DifferentiableFn& f, const BigReal& x, const StepContext& ctx) {
  return guarded([&] {
    Stepper s(f, x, ctx);
    Opening o;
    if (auto done = open(s, o)) return std::move(*done);
    const BigReal w = 1 + o.fy / o.fx;
    const BigReal z = o.y - w * w * o.fy / o.d;
    return divided_difference_finish(s, o, z);
  });
}

StepResult step_cordero(const DifferentiableFn& f, const BigReal& x, const StepContext& ctx) {
  return guarded([&] {
    Stepper s(f, x, ctx);
    Opening o;
    if (auto done = open(s, o)) return std::move(*done);
    const BigReal two_fy = 2 * o.fy;
    const BigReal w = s.quotient(o.fx - o.fy, o.fx - two_fy, scale(o.fx, two_fy), "f(x)-2f(y)");
    const BigReal z = s.x() - o.fx / o.d * w;
    s.note("z", z);
    const BigReal fz = s.value(z);
    if (s.settled(fz)) return s.exit_at("z", z);
    const BigReal two_fz = 2 * fz;
    const BigReal inner = w + s.quotient(fz, 2 * (o.fy - two_fz), scale(o.fy, two_fz), "f(y)-2f(z)");
    const BigReal u = z - fz / o.d * inner * inner;
    s.note("u", u);
    const BigReal slope_ratio = s.quotient(u - z, o.y - s.x(), max(BigReal(1, s.precision()), abs(s.x())), "y-x");
    return s.finish(u - 3 * fz / o.d * slope_ratio);
  });
}

StepResult step_soleymani1(const DifferentiableFn& f, const BigReal& x, const StepContext& ctx) {
  return guarded([&] {
    Stepper s(f, x, ctx);
    Opening o;
    if (auto done = open(s, o, false)) return std::move(*done);
    const BigReal dy = s.slope(o.y);
    const BigReal dy2 = dy * dy;
    const BigReal weight = 1 - 3 * s.quotient(dy2 - o.d * o.d, 8 * dy2, o.d * o.d, "f'(y)^2");
    const BigReal z = s.x() - weight * o.fx / o.d;
    s.note("z", z);
    const BigReal fz = s.value(z);
    if (s.settled(fz)) return s.exit_at("z", z);
    const BigReal den = dy + 2 * dd2_confluent(z, s.x(), fz, o.fx, o.d) * (z - o.y);
    return s.finish(z - s.quotient(fz, den, abs(o.d), "Soleymani I denominator"));
  });
}

StepResult step_soleymani2(const DifferentiableFn& f, const BigReal& x, const StepContext& ctx) {
  return guarded([&] {
    Stepper s(f, x, ctx);
    Opening o;
    if (auto done = open(s, o, false)) return std::move(*done);
    const BigReal dy = s.slope(o.y);
    const BigReal sum = o.d + dy;
    const BigReal z = s.x() - s.quotient(2 * o.fx, sum, abs(o.d), "f'(x)+f'(y)");
    s.note("z", z);
    const BigReal fz = s.value(z);
    if (s.settled(fz)) return s.exit_at("z", z);
    const BigReal k = z - s.quotient(fz, dy, abs(o.d), "f'(y)");
    s.note("k", k);
    const BigReal fk = s.value(k);
    if (s.settled(fk)) return s.exit_at("k", k);
    const BigReal den = o.d * (3 * dy - o.d) / sum;
    return s.finish(k - s.quotient(fk, den, abs(o.d), "Soleymani II denominator"));
  });
}

StepResult step_kim(const DifferentiableFn& f, const BigReal& x, const Rational& lambda, const Rational& mu,
                    const Rational& b, const StepContext& ctx) {
  return guarded([&] {
    Stepper s(f, x, ctx);
    Opening o;
    if (auto done = open(s, o)) return std::move(*done);
    const Rational beta = (lambda - mu - Rational(2, 3)) / Rational(2);
    const Rational a = -2;
    const Rational c = -3;
    const Rational d = b - Rational(3);
    const BigReal u = o.fy / o.fx;
    const BigReal first_num = 1 + s.constant(beta) * u + s.constant(lambda) * u * u;
    const BigReal first_den = 1 + s.constant(beta - Rational(2)) * u + s.constant(mu) * u * u;
    const BigReal z = o.y - s.quotient(first_num, first_den, "Kim first weight") * o.fy / o.d;
    s.note("z", z);
    const BigReal fz = s.value(z);
    if (s.settled(fz)) return s.exit_at("z", z);
    const BigReal v = fz / o.fx;
    const BigReal second_num = 1 + s.constant(a) * u + s.constant(b) * v;
    const BigReal second_den = 1 + s.constant(c) * u + s.constant(d) * v;
    const BigReal weight = s.quotient(second_num, second_den, "Kim second weight");
    const BigReal den = o.d + dd2_distinct(o.y, s.x(), z, o.fy, o.fx, fz) * (z - s.x());
    return s.finish(z - weight * s.quotient(fz, den, abs(o.d), "Kim denominator"));
  });
}

}  // namespace mproot
