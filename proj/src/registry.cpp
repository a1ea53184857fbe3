#include <stdexcept>

#include "mproot/errors.hpp"
#include "mproot/methods.hpp"

namespace mproot {

BigReal MethodDescriptor::efficiency_index(Precision precision) const {
  return signed_real_pow(BigReal(claimed_order, precision), Rational(1, evals_per_iter()));
}

ParamMap resolve_params(const MethodDescriptor& method, const ParamMap& overrides) {
  ParamMap out = method.defaults;
  for (const auto& [key, value] : overrides) {
    auto it = out.find(key);
    if (it == out.end()) {
      throw std::invalid_argument("method '" + method.id + "' has no parameter '" + key + "'");
    }
    it->second = value;
  }
  return out;
}

namespace {

const char* const kThirdStepBracket =
    "third step printed as z - W f(z)/(f[z,y] + f[z,x,x](z-y)); the published rows follow "
    "z - W f(z)(f[z,y] + f[z,x,x](z-y)), selected by Reading::kAsTabulated";
const char* const kDoubledTwo =
    "z-step term printed \"2f(y)/2f(x)\" is read literally as f(y)/f(x); the published rows use "
    "2f(y)/f(x), selected by Reading::kAsTabulated";

MethodDescriptor make(std::string id, std::string name, std::string reference, ParamMap defaults, int fn, int deriv,
                      int order, std::function<StepResult(const DifferentiableFn&, const BigReal&,
                                                          const StepContext&, const ParamMap&)> body,
                      std::vector<std::string> ledger = {}, bool suspect = false) {
  MethodDescriptor m;
  m.id = std::move(id);
  m.display_name = std::move(name);
  m.reference = std::move(reference);
  m.defaults = std::move(defaults);
  m.fn_evals_per_iter = fn;
  m.deriv_evals_per_iter = deriv;
  m.claimed_order = order;
  m.typo_ledger = std::move(ledger);
  m.misprint_suspected = suspect;
  m.step = [m_copy = m, body = std::move(body)](const DifferentiableFn& f, const BigReal& x,
                                                const StepContext& ctx) {
    return body(f, x, ctx, resolve_params(m_copy, ctx.params));
  };
  return m;
}

const Rational& at(const ParamMap& p, const char* key) { return p.find(key)->second; }

std::vector<MethodDescriptor> build() {
  using P = ParamMap;
  using C = StepContext;
  using F = DifferentiableFn;
  std::vector<MethodDescriptor> r;
  r.push_back(make("newton", "Newton", "Newton-Raphson", {}, 1, 1, 2,
                   [](const F& f, const BigReal& x, const C& c, const P&) { return step_newton(f, x, c); }));
  r.push_back(make("kung4", "Kung family", "Kung and Traub 1974", {{"beta", Rational(-1, 2)}}, 2, 1, 4,
                   [](const F& f, const BigReal& x, const C& c, const P& p) {
                     return step_kung4(f, x, at(p, "beta"), c);
                   }));
  r.push_back(make("jc8", "Kung-Hermite eighth order",
                   "Kung beta=-1/2 two-step, then Newton with f'(z) replaced by the cubic Hermite slope", {},
                   3, 1, 8, [](const F& f, const BigReal& x, const C& c, const P&) { return step_jc8(f, x, c); },
                   {"third step printed as x_next = H'(z); implemented as z - f(z)/H'(z)",
                    "trailing f'(x) in H'(z) read as f'(x_n)"}));
  r.push_back(make("bi1", "Bi I", "Bi et al. 2009", {{"gamma", Rational(1)}}, 3, 1, 8,
                   [](const F& f, const BigReal& x, const C& c, const P& p) {
                     return step_bi1(f, x, at(p, "gamma"), c);
                   },
                   {kThirdStepBracket}));
  r.push_back(make("bi2", "Bi II", "Bi et al. 2009", {{"gamma", Rational(1)}}, 3, 1, 8,
                   [](const F& f, const BigReal& x, const C& c, const P& p) {
                     return step_bi2(f, x, at(p, "gamma"), c);
                   },
                   {kDoubledTwo, kThirdStepBracket}, true));
  r.push_back(make("bi3", "Bi III", "Bi et al. 2009", {{"gamma", Rational(1)}}, 3, 1, 8,
                   [](const F& f, const BigReal& x, const C& c, const P& p) {
                     return step_bi3(f, x, at(p, "gamma"), c);
                   },
                   {kDoubledTwo, kThirdStepBracket, "heading repeats \"Method II\" for Method III"}, true));
  r.push_back(make("bi4", "Bi IV", "Bi et al. 2009", {{"gamma", Rational(1)}}, 3, 1, 8,
                   [](const F& f, const BigReal& x, const C& c, const P& p) {
                     return step_bi4(f, x, at(p, "gamma"), c);
                   },
                   {kThirdStepBracket, "negative bracket under ^(-2/3) taken as the real cube root"}, true));
  r.push_back(make("sharma1", "Sharma I", "Sharma et al. 2010", {{"gamma", Rational(1)}}, 3, 1, 8,
                   [](const F& f, const BigReal& x, const C& c, const P& p) {
                     return step_sharma1(f, x, at(p, "gamma"), c);
                   },
                   {"first step unprinted; Newton point assumed"}));
  r.push_back(make("sharma2", "Sharma II", "Sharma et al. 2010", {{"gamma", Rational(1)}}, 3, 1, 8,
                   [](const F& f, const BigReal& x, const C& c, const P& p) {
                     return step_sharma2(f, x, at(p, "gamma"), c);
                   },
                   {"first step unprinted; Newton point assumed"}));
  r.push_back(make("sharma3", "Sharma III", "Sharma et al. 2010", {{"gamma", Rational(1)}}, 3, 1, 8,
                   [](const F& f, const BigReal& x, const C& c, const P& p) {
                     return step_sharma3(f, x, at(p, "gamma"), c);
                   },
                   {"first step unprinted; Newton point assumed"}));
  r.push_back(make("thukral", "Thukral", "Thukral 2010", {}, 3, 1, 8,
                   [](const F& f, const BigReal& x, const C& c, const P&) { return step_thukral(f, x, c); },
                   {"unbalanced parenthesis in ((1+mu^2)/(1-mu))^2; squared ratio assumed",
                    "first step unprinted; Newton point assumed"},
                   true));
  r.push_back(make("sargolzaei", "Sargolzaei", "Sargolzaei et al. 2011", {}, 3, 1, 8,
                   [](const F& f, const BigReal& x, const C& c, const P&) { return step_sargolzaei(f, x, c); },
                   {"first step unprinted; Newton point assumed"}));
  r.push_back(make("kim", "Kim", "Kim 2012", {{"lambda", Rational(0)}, {"mu", Rational(0)}, {"b", Rational(4)}}, 3,
                   1, 8,
                   [](const F& f, const BigReal& x, const C& c, const P& p) {
                     return step_kim(f, x, at(p, "lambda"), at(p, "mu"), at(p, "b"), c);
                   },
                   {"first step unprinted; Newton point assumed"}));
  r.push_back(make("soleymani2", "Soleymani II", "Soleymani 2011", {}, 3, 2, 8,
                   [](const F& f, const BigReal& x, const C& c, const P&) { return step_soleymani2(f, x, c); },
                   {"y never printed; Newton point assumed"}, true));
  r.push_back(make("soleymani1", "Soleymani I", "Soleymani 2012", {}, 2, 2, 8,
                   [](const F& f, const BigReal& x, const C& c, const P&) { return step_soleymani1(f, x, c); },
                   {"y never printed; Newton point assumed",
                    "published rows not reproduced under any reading tried"},
                   true));
  r.push_back(make("cordero", "Cordero", "Cordero et al. 2011", {}, 3, 1, 8,
                   [](const F& f, const BigReal& x, const C& c, const P&) { return step_cordero(f, x, c); },
                   {"third step uses f(z) where f(u) would be expected; implemented as printed",
                    "first step unprinted; Newton point assumed"},
                   true));
  r.push_back(make("wang", "Wang", "Wang et al. 2010", {}, 3, 1, 8,
                   [](const F& f, const BigReal& x, const C& c, const P&) { return step_wang(f, x, c); },
                   {"first step unprinted; Newton point assumed"}));
  return r;
}

}  // namespace

const std::vector<MethodDescriptor>& registry() {
  static const std::vector<MethodDescriptor> methods = build();
  return methods;
}

const MethodDescriptor& descriptor(std::string_view id) {
  for (const auto& m : registry()) {
    if (m.id == id) return m;
  }
  throw UnknownMethod("unknown method '" + std::string(id) + "'");
}

}  // namespace mproot
