#include "mproot/driver.hpp"

#include <stdexcept>
#include <utility>

#include "mproot/divdiff.hpp"
#include "mproot/errors.hpp"

namespace mproot {

std::string to_string(RunStatus status) {
  switch (status) {
    case RunStatus::kConverged: return "converged";
    case RunStatus::kMaxIters: return "max-iters";
    case RunStatus::kDiverged: return "diverged";
    case RunStatus::kDegenerateStep: return "degenerate-step";
  }
  return "unknown";
}

RunConfig::RunConfig(std::string id, DifferentiableFn fn, const BigReal& start, Precision p)
    : method_id(std::move(id)), function(std::move(fn)), x0(start.at(p)), precision(p) {}

std::optional<BigReal> reference_root(const DifferentiableFn& f, Precision precision) {
  // A few guard digits so the final rounding is clean.
  const Precision work(precision.digits() + 20);
  std::optional<BigReal> start = f.known_root(work);
  if (!start) return std::nullopt;
  BigReal x = *start;
  const BigReal tol = pow10(-(work.digits() - 5), work) * max(BigReal(1, work), abs(x));
  for (int i = 0; i < 64; ++i) {
    const BigReal fx = f(x);
    if (fx.is_zero()) break;
    const BigReal d = f.derivative(x);
    if (d.is_zero()) break;
    const BigReal delta = fx / d;
    x = x - delta;
    if (abs(delta) <= tol) break;
  }
  return x.at(precision);
}

namespace {

bool diverged(const BigReal& x, const BigReal& fx, const BigReal& bound) {
  return x.is_nan() || fx.is_nan() || !x.is_finite() || !fx.is_finite() || abs(x) > bound || abs(fx) > bound;
}

}  // namespace

IterationTrace run(const RunConfig& config) {
  const MethodDescriptor& method = descriptor(config.method_id);
  const Precision p = config.precision;
  if (config.max_iters < 1) throw std::invalid_argument("max_iters must be at least 1");
  const BigReal tol = config.residual_tol ? config.residual_tol->at(p) : pow10(-(p.digits() / 2), p);
  if (!(tol > 0)) throw std::invalid_argument("residual_tol must be positive");
  const BigReal bound = config.divergence_bound ? config.divergence_bound->at(p) : pow10(10, p);
  if (!(bound > 1)) throw std::invalid_argument("divergence_bound must exceed 1");
  resolve_params(method, config.params);

  IterationTrace trace;
  trace.method_id = method.id;
  trace.precision = p;
  trace.root = config.root ? std::optional<BigReal>(config.root->at(p)) : reference_root(config.function, p);
  if (trace.root) trace.errors.emplace();

  const auto record = [&](const BigReal& x, const BigReal& fx) {
    trace.iterates.push_back(x);
    trace.residuals.push_back(abs(fx));
    if (trace.errors) trace.errors->push_back(abs(x - *trace.root));
  };

  BigReal x = config.x0.at(p);
  BigReal fx = config.function(x);
  record(x, fx);
  const bool fixed = config.stop_rule == StopRule::kFixedIterations;
  const auto done = [&](const BigReal& residual) { return fixed ? residual.is_zero() : residual <= tol; };

  if (diverged(x, fx, bound)) {
    trace.status = RunStatus::kDiverged;
    return trace;
  }
  if (done(trace.residuals.back())) {
    trace.status = RunStatus::kConverged;
    return trace;
  }

  const StepContext ctx{p, config.params, config.reading};
  for (int k = 0; k < config.max_iters; ++k) {
    try {
      StepResult step = method.step(config.function, x, ctx);
      trace.total_fn_evals += step.fn_eval_count;
      trace.total_deriv_evals += step.deriv_eval_count;
      trace.early_exits.push_back(step.early_exit);
      x = std::move(step.next);
      fx = config.function(x);
    } catch (const DegenerateStep& e) {
      trace.status = RunStatus::kDegenerateStep;
      trace.message = e.what();
      return trace;
    } catch (const DomainError& e) {
      trace.status = RunStatus::kDegenerateStep;
      trace.message = e.what();
      return trace;
    } catch (const DivisionByZero& e) {
      trace.status = RunStatus::kDegenerateStep;
      trace.message = e.what();
      return trace;
    }
    record(x, fx);
    if (diverged(x, fx, bound)) {
      trace.status = RunStatus::kDiverged;
      return trace;
    }
    if (done(trace.residuals.back())) {
      trace.status = RunStatus::kConverged;
      return trace;
    }
  }
  trace.status = trace.residuals.back() <= tol ? RunStatus::kConverged : RunStatus::kMaxIters;
  return trace;
}

ConvergenceReport coc(const IterationTrace& trace) {
  ConvergenceReport report;
  const Precision p = trace.precision;
  std::vector<BigReal> e;
  if (trace.errors) {
    if (trace.iterates.size() < 3) throw InsufficientIterates("order estimate needs at least 3 iterates");
    e = *trace.errors;
    report.from_errors = true;
  } else {
    if (trace.iterates.size() < 4) {
      throw InsufficientIterates("order estimate without a root needs at least 4 iterates");
    }
    for (std::size_t k = 0; k + 1 < trace.iterates.size(); ++k) {
      e.push_back(abs(trace.iterates[k + 1] - trace.iterates[k]));
    }
  }

  const BigReal magnitude = trace.root ? max(BigReal(1, p), abs(*trace.root)) : BigReal(1, p);
  const BigReal floor = guard_tolerance(p) * magnitude;
  const auto usable = [&](const BigReal& v) { return v.is_finite() && v > floor; };

  std::optional<std::size_t> last;
  for (std::size_t k = 1; k + 1 < e.size(); ++k) {
    CocEstimate est;
    est.index = static_cast<int>(k);
    const bool terms_ok = usable(e[k - 1]) && usable(e[k]) && usable(e[k + 1]);
    if (terms_ok) {
      const BigReal r_new = e[k + 1] / e[k];
      const BigReal r_old = e[k] / e[k - 1];
      est.value = log(r_new) / log(r_old);
      est.well_conditioned = r_new < 1 && r_old < 1;
    } else {
      est.value = BigReal::nan(p);
    }
    if (est.well_conditioned) last = report.coc_sequence.size();
    report.coc_sequence.push_back(std::move(est));
  }
  if (!last) throw IllConditioned("no well-conditioned order estimate in the trace");

  const CocEstimate& best = report.coc_sequence[*last];
  report.final_coc = best.value;
  const auto k = static_cast<std::size_t>(best.index);
  report.asymptotic_constant_estimate = e[k + 1] / pow(e[k], best.value);
  report.efficiency_index = descriptor(trace.method_id).efficiency_index(p);
  return report;
}

BigReal efficiency_index(int order, int evals, Precision precision) {
  if (order < 1 || evals < 1) throw std::invalid_argument("order and evals must be positive");
  return signed_real_pow(BigReal(order, precision), Rational(1, evals));
}

}  // namespace mproot
