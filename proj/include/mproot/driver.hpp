#pragma once

// Iterating a registered method from a starting point, and the metrics
// derived from the resulting trace.

#include <optional>
#include <string>
#include <vector>

#include "mproot/methods.hpp"
#include "mproot/mpreal.hpp"
#include "mproot/suite.hpp"

namespace mproot {

enum class RunStatus { kConverged, kMaxIters, kDiverged, kDegenerateStep };

std::string to_string(RunStatus status);

enum class StopRule {
  /// Stop once |f(x_k)| <= residual_tol.
  kTolerance,
  /// Always take max_iters steps; only an exact zero residual stops early.
  kFixedIterations,
};

struct RunConfig {
  RunConfig(std::string method_id, DifferentiableFn function, const BigReal& x0, Precision precision = Precision());

  std::string method_id;
  DifferentiableFn function;
  BigReal x0;
  Precision precision;
  int max_iters = 50;
  /// 10^-(digits/2) when unset.
  std::optional<BigReal> residual_tol;
  /// 10^10 when unset.
  std::optional<BigReal> divergence_bound;
  StopRule stop_rule = StopRule::kTolerance;
  ParamMap params;
  Reading reading = Reading::kAsPrinted;
  /// Root used for the error column. When unset, the function's listed root
  /// polished to working precision is used, if it has one.
  std::optional<BigReal> root;
};

struct IterationTrace {
  std::string method_id;
  Precision precision;
  std::vector<BigReal> iterates;
  std::vector<BigReal> residuals;
  /// |x_k - root|, present when a root was available.
  std::optional<std::vector<BigReal>> errors;
  std::optional<BigReal> root;
  /// One flag per step taken.
  std::vector<bool> early_exits;
  RunStatus status = RunStatus::kMaxIters;
  /// Reason for a degenerate step, empty otherwise.
  std::string message;
  int total_fn_evals = 0;
  int total_deriv_evals = 0;

  int steps() const { return static_cast<int>(iterates.size()) - 1; }
};

/// Throws UnknownMethod for an unregistered id, DomainError / DivisionByZero
/// when f cannot be evaluated at x0, std::invalid_argument for a malformed
/// config. Failures after the first step end the trace as kDegenerateStep.
IterationTrace run(const RunConfig& config);

/// The listed root of f refined by Newton's method at the given precision.
std::optional<BigReal> reference_root(const DifferentiableFn& f, Precision precision);

struct CocEstimate {
  /// Index k of the middle iterate of the window (k-1, k, k+1).
  int index = 0;
  BigReal value;
  bool well_conditioned = false;
};

struct ConvergenceReport {
  std::vector<CocEstimate> coc_sequence;
  BigReal final_coc;
  BigReal efficiency_index;
  std::optional<BigReal> asymptotic_constant_estimate;
  /// True when exact errors were used, false for successive differences.
  bool from_errors = false;
};

/// Computational order of convergence. A window counts as well conditioned
/// when both consecutive ratios are below one and every term lies above the
/// noise floor 10^-(digits-10) * max(1, |root|). Throws InsufficientIterates
/// or IllConditioned.
ConvergenceReport coc(const IterationTrace& trace);

/// order^(1/evals).
BigReal efficiency_index(int order, int evals, Precision precision = Precision());

}  // namespace mproot
