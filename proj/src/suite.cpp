#include "mproot/suite.hpp"

#include <array>
#include <stdexcept>
#include <utility>

namespace mproot {

DifferentiableFn::DifferentiableFn(std::string label, Callable value, Callable slope,
                                   std::optional<std::string> known_root)
    : label_(std::move(label)),
      value_(std::move(value)),
      slope_(std::move(slope)),
      root_text_(std::move(known_root)) {
  if (root_text_) make(*root_text_, Precision(Precision::kMinDigits));  // validate early
}

DifferentiableFn DifferentiableFn::from_expr(std::string label, const Expr& f,
                                             std::optional<std::string> known_root) {
  Expr fprime = differentiate(f);
  DifferentiableFn fn(
      std::move(label), [f](const BigReal& x) { return eval(f, x); },
      [fprime](const BigReal& x) { return eval(fprime, x); }, std::move(known_root));
  fn.f_ = f;
  fn.fprime_ = fprime;
  return fn;
}

DifferentiableFn DifferentiableFn::from_text(std::string label, std::string_view text,
                                             std::optional<std::string> known_root) {
  return from_expr(std::move(label), parse(text), std::move(known_root));
}

std::optional<BigReal> DifferentiableFn::known_root(Precision precision) const {
  if (!root_text_) return std::nullopt;
  return make(*root_text_, precision);
}

DifferentiableFn DifferentiableFn::wrapped(std::function<Callable(Callable)> wrap_value,
                                           std::function<Callable(Callable)> wrap_slope) const {
  DifferentiableFn copy = *this;
  copy.value_ = wrap_value(value_);
  copy.slope_ = wrap_slope(slope_);
  return copy;
}

DifferentiableFn DifferentiableFn::with_note(std::string note) const {
  DifferentiableFn copy = *this;
  copy.note_ = std::move(note);
  return copy;
}

DifferentiableFn DifferentiableFn::without_root() const {
  DifferentiableFn copy = *this;
  copy.root_text_.reset();
  return copy;
}

namespace {

struct Entry {
  const char* printed;
  const char* reconciled;
  const char* root;
};

const std::array<Entry, 7> kSuite{{
    {"sin(x)-x/100", "sin(x)-x/100", "0"},
    {"1/(3*x^4)-x^3-1/(3*x)+1", "x^4/3-x^2-x/3+1", "1"},
    {"exp(sin(x))-1-x/5", "exp(sin(x))-1-x/5", "0"},
    {"x+sin(x^2/pi)", "x+sin(x^2/pi)", "0"},
    {"sqrt(x^4+8)*sin(pi/(x^2+2))+x^3/(x^4+1)-sqrt(6)+8/16",
     "sqrt(x^4+8)*sin(pi/(x^2+2))+x^3/(x^4+1)-sqrt(6)+8/17", "-2"},
    {"cos(x)-x", "cos(x)-x", "0.739085133215160"},
    {"exp(x)+cos(x)", "exp(x)+cos(x)", "-1.7461395304080124"},
}};

constexpr int kRootCheckDigits = 100;

}  // namespace

std::string suite_expression(int index, SuiteForm form) {
  if (index < 1 || index > static_cast<int>(kSuite.size())) {
    throw std::out_of_range("suite index must be 1..7");
  }
  const Entry& e = kSuite[static_cast<std::size_t>(index - 1)];
  return form == SuiteForm::kAsPrinted ? e.printed : e.reconciled;
}

std::vector<DifferentiableFn> builtin_suite(SuiteForm form) {
  std::vector<DifferentiableFn> out;
  out.reserve(kSuite.size());
  const Precision check(kRootCheckDigits);
  const BigReal limit = pow10(-12, check);
  for (std::size_t i = 0; i < kSuite.size(); ++i) {
    const int index = static_cast<int>(i) + 1;
    const std::string label = "f" + std::to_string(index);
    auto fn = DifferentiableFn::from_text(label, suite_expression(index, form), kSuite[i].root);
    // A listed root that is not a root of the listed function is reported,
    // not silently replaced.
    BigReal residual = BigReal::nan(check);
    try {
      residual = abs(fn(*fn.known_root(check)));
    } catch (const std::exception&) {
    }
    if (!(residual < limit)) {
      fn = fn.without_root().with_note("listed root " + std::string(kSuite[i].root) +
                                       " gives |f| = " + residual.to_string(6) + ", not a root");
    }
    out.push_back(std::move(fn));
  }
  return out;
}

}  // namespace mproot
