// Command-line front end: ad-hoc solves, residual tables, method listing.
//
// Exit codes: 0 success/converged, 1 usage or input error, 2 run did not
// converge, 3 table check failed.

#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "mproot/bench.hpp"
#include "mproot/driver.hpp"
#include "mproot/errors.hpp"
#include "mproot/expr.hpp"
#include "mproot/methods.hpp"

namespace {

using namespace mproot;

constexpr int kExitInput = 1;
constexpr int kExitNotConverged = 2;
constexpr int kExitCheckFailed = 3;

ParamMap parse_params(const std::vector<std::string>& items) {
  ParamMap out;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw CLI::ValidationError("--param", "expected key=value, got " + item);
    out[item.substr(0, eq)] = Rational::parse(item.substr(eq + 1));
  }
  return out;
}

Reading parse_reading(const std::string& s) { return s == "tabulated" ? Reading::kAsTabulated : Reading::kAsPrinted; }

struct SolveArgs {
  std::string expr;
  std::string x0;
  std::string method = "jc8";
  std::string root;
  int digits = Precision::kDefaultDigits;
  int max_iter = 50;
  std::string tol;
  std::string format = "text";
  std::vector<std::string> params;
  std::string reading = "printed";
};

int solve(const SolveArgs& a) {
  const Precision p(a.digits);
  const auto fn = DifferentiableFn::from_text("f", a.expr, a.root.empty() ? std::nullopt : std::optional(a.root));
  RunConfig config(a.method, fn, make(a.x0, p), p);
  config.max_iters = a.max_iter;
  if (!a.tol.empty()) config.residual_tol = make(a.tol, p);
  config.params = parse_params(a.params);
  config.reading = parse_reading(a.reading);
  const IterationTrace trace = run(config);
  const MethodDescriptor& method = descriptor(a.method);

  std::optional<ConvergenceReport> report;
  std::string coc_note;
  try {
    report = coc(trace);
  } catch (const Error& e) {
    coc_note = e.what();
  }
  const BigReal ei = method.efficiency_index(p);

  if (a.format == "json") {
    nlohmann::ordered_json doc;
    doc["method_id"] = method.id;
    doc["expr"] = a.expr;
    doc["precision_digits"] = p.digits();
    doc["status"] = to_string(trace.status);
    if (!trace.message.empty()) doc["message"] = trace.message;
    auto iters = nlohmann::ordered_json::array();
    for (std::size_t k = 0; k < trace.iterates.size(); ++k) {
      iters.push_back({{"k", k}, {"x", trace.iterates[k].to_string(40)}, {"residual", format_paper(trace.residuals[k])}});
    }
    doc["iterates"] = iters;
    doc["fn_evals"] = trace.total_fn_evals;
    doc["deriv_evals"] = trace.total_deriv_evals;
    if (report) doc["final_coc"] = report->final_coc.to_string(6);
    doc["efficiency_index"] = ei.to_string(7);
    std::cout << doc.dump(2) << '\n';
  } else if (a.format == "csv") {
    std::cout << "k,x,residual\n";
    for (std::size_t k = 0; k < trace.iterates.size(); ++k) {
      std::cout << k << ',' << trace.iterates[k].to_string(40) << ',' << format_paper(trace.residuals[k]) << '\n';
    }
  } else {
    std::cout << "method: " << method.id << " (" << method.display_name << "), " << p.digits() << " digits\n";
    std::cout << std::left << std::setw(4) << "k" << std::setw(48) << "x_k" << "|f(x_k)|\n";
    for (std::size_t k = 0; k < trace.iterates.size(); ++k) {
      std::cout << std::setw(4) << k << std::setw(48) << trace.iterates[k].to_string(40)
                << format_paper(trace.residuals[k]) << '\n';
    }
    std::cout << "status: " << to_string(trace.status);
    if (!trace.message.empty()) std::cout << " (" << trace.message << ")";
    std::cout << "\nevaluations: " << trace.total_fn_evals << " f, " << trace.total_deriv_evals << " f'\n";
    if (report) {
      std::cout << "coc: " << report->final_coc.to_string(6) << (report->from_errors ? "" : " (successive differences)")
                << '\n';
    } else {
      std::cout << "coc: unavailable (" << coc_note << ")\n";
    }
    std::cout << "efficiency index: " << ei.to_string(7) << " (order " << method.claimed_order << ", "
              << method.evals_per_iter() << " evaluations)\n";
  }
  return trace.status == RunStatus::kConverged ? 0 : kExitNotConverged;
}

struct TableArgs {
  int table = 2;
  int digits = Precision::kDefaultDigits;
  int iterations = 3;
  std::string format = "text";
  std::string suite = "reconciled";
  std::string reading = "tabulated";
  std::vector<std::string> methods;
  bool check = false;
  std::string fixture;
  bool serial = false;
};

int table(const TableArgs& a) {
  TableOptions options;
  options.precision = Precision(a.digits);
  options.form = a.suite == "printed" ? SuiteForm::kAsPrinted : SuiteForm::kReconciled;
  options.reading = parse_reading(a.reading);
  options.iterations = a.iterations;
  options.methods = a.methods;
  options.parallel = !a.serial;
  const BenchTable produced = reproduce_table(a.table, options);

  if (a.format == "json") {
    std::cout << render_json(produced);
  } else if (a.format == "csv") {
    std::cout << render_csv(produced);
  } else {
    std::cout << render_text(produced);
  }
  if (!a.check) return 0;

  const auto fixtures = load_reference(a.fixture.empty() ? default_fixture_path() : std::filesystem::path(a.fixture));
  const auto it = fixtures.find(a.table);
  if (it == fixtures.end()) {
    std::cerr << "no reference for table " << a.table << '\n';
    return kExitInput;
  }
  std::vector<std::string> ids;
  for (const auto& r : produced.rows) ids.push_back(r.method_id);
  const BenchTable reference = select_rows(it->second, ids);
  const BenchTable compared = select_rows(produced, [&] {
    std::vector<std::string> present;
    for (const auto& r : reference.rows) present.push_back(r.method_id);
    return present;
  }());
  const DiffReport report = diff_against_reference(compared, reference);
  std::cout << '\n' << render_diff(report);
  bool ok = true;
  for (const auto& r : compared.rows) {
    const MethodDescriptor& m = descriptor(r.method_id);
    const bool pass = report.row_pass(r.method_id);
    if (!pass) {
      std::cout << r.method_id << ": outside tolerance" << (m.misprint_suspected ? " (exempt)" : "") << '\n';
      if (!m.misprint_suspected) ok = false;
    }
  }
  std::cout << "check: " << (ok ? "pass" : "FAIL") << '\n';
  return ok ? 0 : kExitCheckFailed;
}

int methods(const std::string& format) {
  if (format == "json") {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& m : registry()) {
      nlohmann::ordered_json params = nlohmann::ordered_json::object();
      for (const auto& [k, v] : m.defaults) params[k] = v.to_string();
      arr.push_back({{"id", m.id},
                     {"name", m.display_name},
                     {"reference", m.reference},
                     {"fn_evals", m.fn_evals_per_iter},
                     {"deriv_evals", m.deriv_evals_per_iter},
                     {"order", m.claimed_order},
                     {"efficiency_index", m.efficiency_index().to_string(7)},
                     {"params", params},
                     {"notes", m.typo_ledger},
                     {"misprint_suspected", m.misprint_suspected}});
    }
    std::cout << arr.dump(2) << '\n';
    return 0;
  }
  std::cout << std::left << std::setw(12) << "id" << std::setw(28) << "name" << std::setw(8) << "evals"
            << std::setw(7) << "order" << std::setw(11) << "EI" << "params\n";
  for (const auto& m : registry()) {
    std::string params;
    for (const auto& [k, v] : m.defaults) params += (params.empty() ? "" : ",") + k + "=" + v.to_string();
    std::cout << std::setw(12) << m.id << std::setw(28) << m.display_name << std::setw(8)
              << (std::to_string(m.fn_evals_per_iter) + "+" + std::to_string(m.deriv_evals_per_iter))
              << std::setw(7) << m.claimed_order << std::setw(11) << m.efficiency_index().to_string(7) << params
              << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multipoint root finders in arbitrary precision"};
  app.set_version_flag("--version", std::string(MPROOT_VERSION));
  app.require_subcommand(1);

  SolveArgs s;
  auto* solve_cmd = app.add_subcommand("solve", "iterate one method on an expression");
  solve_cmd->add_option("--expr", s.expr, "f(x), e.g. \"cos(x)-x\"")->required();
  solve_cmd->add_option("--x0", s.x0, "starting point (decimal)")->required();
  solve_cmd->add_option("--method", s.method, "method id (see `mproot methods`)");
  solve_cmd->add_option("--root", s.root, "known root, enables exact-error order estimates");
  solve_cmd->add_option("--digits", s.digits, "working precision in decimal digits")->check(CLI::Range(50, 1000000));
  solve_cmd->add_option("--max-iter", s.max_iter, "iteration limit")->check(CLI::PositiveNumber);
  solve_cmd->add_option("--tol", s.tol, "residual tolerance (default 1e-(digits/2))");
  solve_cmd->add_option("--format", s.format)->check(CLI::IsMember({"text", "csv", "json"}));
  solve_cmd->add_option("--param", s.params, "method parameter key=value, e.g. beta=-1/2");
  solve_cmd->add_option("--reading", s.reading)->check(CLI::IsMember({"printed", "tabulated"}));

  TableArgs t;
  auto* table_cmd = app.add_subcommand("table", "recompute a residual table (2..8)");
  table_cmd->add_option("--table", t.table)->required()->check(CLI::Range(2, 8));
  table_cmd->add_option("--digits", t.digits)->check(CLI::Range(50, 1000000));
  table_cmd->add_option("--iterations", t.iterations)->check(CLI::PositiveNumber);
  table_cmd->add_option("--format", t.format)->check(CLI::IsMember({"text", "csv", "json"}));
  table_cmd->add_option("--suite", t.suite, "benchmark function forms")->check(CLI::IsMember({"printed", "reconciled"}));
  table_cmd->add_option("--reading", t.reading)->check(CLI::IsMember({"printed", "tabulated"}));
  table_cmd->add_option("--method", t.methods, "restrict to these rows");
  table_cmd->add_flag("--check", t.check, "compare with the reference fixture");
  table_cmd->add_option("--fixture", t.fixture, "reference CSV (default: bundled)");
  table_cmd->add_flag("--serial", t.serial, "compute rows on one thread");

  std::string list_format = "text";
  auto* methods_cmd = app.add_subcommand("methods", "list registered methods");
  methods_cmd->add_option("--format", list_format)->check(CLI::IsMember({"text", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (*solve_cmd) return solve(s);
    if (*table_cmd) return table(t);
    if (*methods_cmd) return methods(list_format);
  } catch (const SyntaxError& e) {
    std::cerr << "syntax error: " << e.what() << '\n';
    return kExitInput;
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}
