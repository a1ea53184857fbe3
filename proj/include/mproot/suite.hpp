#pragma once

// A real function paired with its derivative, and the built-in set of seven
// benchmark functions.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mproot/expr.hpp"
#include "mproot/mpreal.hpp"

namespace mproot {

class DifferentiableFn {
 public:
  using Callable = std::function<BigReal(const BigReal&)>;

  DifferentiableFn(std::string label, Callable value, Callable slope,
                   std::optional<std::string> known_root = std::nullopt);

  /// f from an expression; f' is its symbolic derivative.
  static DifferentiableFn from_expr(std::string label, const Expr& f,
                                    std::optional<std::string> known_root = std::nullopt);
  static DifferentiableFn from_text(std::string label, std::string_view text,
                                    std::optional<std::string> known_root = std::nullopt);

  BigReal operator()(const BigReal& x) const { return value_(x); }
  BigReal derivative(const BigReal& x) const { return slope_(x); }

  const std::string& label() const noexcept { return label_; }
  const std::optional<Expr>& expr() const noexcept { return f_; }
  const std::optional<Expr>& derivative_expr() const noexcept { return fprime_; }
  /// Root as listed, rounded to the requested precision.
  std::optional<BigReal> known_root(Precision precision) const;
  const std::optional<std::string>& known_root_text() const noexcept { return root_text_; }
  /// Free-form remark, e.g. why a listed root was withheld.
  const std::string& note() const noexcept { return note_; }

  /// Copy with the value/slope callables wrapped, e.g. for counting calls.
  DifferentiableFn wrapped(std::function<Callable(Callable)> wrap_value,
                           std::function<Callable(Callable)> wrap_slope) const;
  DifferentiableFn with_note(std::string note) const;
  DifferentiableFn without_root() const;

 private:
  std::string label_;
  Callable value_;
  Callable slope_;
  std::optional<Expr> f_;
  std::optional<Expr> fprime_;
  std::optional<std::string> root_text_;
  std::string note_;
};

/// kAsPrinted keeps the benchmark list verbatim. kReconciled swaps in the
/// f2 and f5 forms whose roots and residuals agree with the published
/// tables; see README.
enum class SuiteForm { kAsPrinted, kReconciled };

/// f1..f7 with labels "f1".."f7".
std::vector<DifferentiableFn> builtin_suite(SuiteForm form = SuiteForm::kAsPrinted);

/// Expression text of fi (1-based) in the requested form.
std::string suite_expression(int index, SuiteForm form);

}  // namespace mproot
