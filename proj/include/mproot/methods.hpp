#pragma once

// One-step maps x -> x_next for Newton, the Kung fourth-order family, the
// eighth-order Kung/Hermite scheme (jc8) and fourteen published eighth-order
// comparison schemes.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mproot/mpreal.hpp"
#include "mproot/suite.hpp"

namespace mproot {

/// How to read formulas whose printed form and tabulated behaviour differ.
/// kAsPrinted follows the formula text literally. kAsTabulated follows the
/// variant that reproduces the published residual tables (Bi I-IV only).
enum class Reading { kAsPrinted, kAsTabulated };

using ParamMap = std::map<std::string, Rational, std::less<>>;

struct StepContext {
  /// Working precision; x's own precision when unset.
  std::optional<Precision> precision;
  /// Overrides merged over the descriptor defaults.
  ParamMap params;
  Reading reading = Reading::kAsPrinted;
};

struct StepResult {
  BigReal next;
  std::vector<std::pair<std::string, BigReal>> intermediates;
  /// An intermediate already met the residual tolerance; next is that point.
  bool early_exit = false;
  int fn_eval_count = 0;
  int deriv_eval_count = 0;
};

using StepFn = std::function<StepResult(const DifferentiableFn&, const BigReal&, const StepContext&)>;

struct MethodDescriptor {
  std::string id;
  std::string display_name;
  /// Literature source of the scheme.
  std::string reference;
  ParamMap defaults;
  int fn_evals_per_iter = 0;
  int deriv_evals_per_iter = 0;
  int claimed_order = 0;
  StepFn step;
  /// Suspected misprints and how each was handled.
  std::vector<std::string> typo_ledger;
  /// Rows of such methods are reported but not held to the table tolerance.
  bool misprint_suspected = false;

  int evals_per_iter() const { return fn_evals_per_iter + deriv_evals_per_iter; }
  /// claimed_order^(1/evals_per_iter).
  BigReal efficiency_index(Precision precision = Precision()) const;
};

/// All 17 methods, in a fixed order. Immutable.
const std::vector<MethodDescriptor>& registry();

/// Throws UnknownMethod.
const MethodDescriptor& descriptor(std::string_view id);

/// Parameter values for a method: defaults, then overrides. Unknown keys
/// throw std::invalid_argument.
ParamMap resolve_params(const MethodDescriptor& method, const ParamMap& overrides);

// Typed entry points. All throw DegenerateStep when a guarded denominator
// or node separation fails.

StepResult step_newton(const DifferentiableFn& f, const BigReal& x, const StepContext& ctx = {});
StepResult step_kung4(const DifferentiableFn& f, const BigReal& x, const Rational& beta,
                      const StepContext& ctx = {});
StepResult step_jc8(const DifferentiableFn& f, const BigReal& x, const StepContext& ctx = {});

StepResult step_bi1(const DifferentiableFn& f, const BigReal& x, const Rational& gamma, const StepContext& ctx = {});
StepResult step_bi2(const DifferentiableFn& f, const BigReal& x, const Rational& gamma, const StepContext& ctx = {});
StepResult step_bi3(const DifferentiableFn& f, const BigReal& x, const Rational& gamma, const StepContext& ctx = {});
StepResult step_bi4(const DifferentiableFn& f, const BigReal& x, const Rational& gamma, const StepContext& ctx = {});
StepResult step_sharma1(const DifferentiableFn& f, const BigReal& x, const Rational& gamma,
                        const StepContext& ctx = {});
StepResult step_sharma2(const DifferentiableFn& f, const BigReal& x, const Rational& gamma,
                        const StepContext& ctx = {});
StepResult step_sharma3(const DifferentiableFn& f, const BigReal& x, const Rational& gamma,
                        const StepContext& ctx = {});
StepResult step_thukral(const DifferentiableFn& f, const BigReal& x, const StepContext& ctx = {});
StepResult step_wang(const DifferentiableFn& f, const BigReal& x, const StepContext& ctx = {});
StepResult step_sargolzaei(const DifferentiableFn& f, const BigReal& x, const StepContext& ctx = {});
StepResult step_cordero(const DifferentiableFn& f, const BigReal& x, const StepContext& ctx = {});
StepResult step_soleymani1(const DifferentiableFn& f, const BigReal& x, const StepContext& ctx = {});
StepResult step_soleymani2(const DifferentiableFn& f, const BigReal& x, const StepContext& ctx = {});
StepResult step_kim(const DifferentiableFn& f, const BigReal& x, const Rational& lambda, const Rational& mu,
                    const Rational& b, const StepContext& ctx = {});

}  // namespace mproot
