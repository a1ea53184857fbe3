#include "mproot/bench.hpp"

#include <algorithm>
#include <cmath>
#include <ctime>
#include <future>
#include <iomanip>
#include <sstream>

#include "json.hpp"

#include "mproot/errors.hpp"

namespace mproot {

const std::vector<TableCase>& table_cases() {
  static const std::vector<TableCase> cases{
      {2, 1, "0.7"}, {3, 2, "1.2"}, {4, 3, "-0.55"}, {5, 4, "0.1"}, {6, 5, "-3"}, {7, 6, "1.5"}, {8, 7, "-2.3"},
  };
  return cases;
}

const TableCase& table_case(int table_no) {
  for (const auto& c : table_cases()) {
    if (c.table_no == table_no) return c;
  }
  throw std::out_of_range("table number must be 2..8, got " + std::to_string(table_no));
}

const std::vector<TableRowSpec>& table_rows() {
  static const std::vector<TableRowSpec> rows = [] {
    const ParamMap gamma{{"gamma", Rational(1)}};
    return std::vector<TableRowSpec>{
        {"jc8", {}},
        {"bi1", gamma},
        {"bi2", gamma},
        {"bi3", gamma},
        {"bi4", gamma},
        {"sharma1", gamma},
        {"sharma2", gamma},
        {"sharma3", gamma},
        {"thukral", {}},
        {"sargolzaei", {}},
        {"kim", {{"lambda", Rational(0)}, {"mu", Rational(0)}, {"b", Rational(4)}}},
        {"soleymani2", {}},
        {"soleymani1", {}},
        {"cordero", {}},
        {"wang", {}},
    };
  }();
  return rows;
}

const BenchRow* BenchTable::row(std::string_view method_id) const {
  for (const auto& r : rows) {
    if (r.method_id == method_id) return &r;
  }
  return nullptr;
}

namespace {

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

BenchRow compute_row(const TableRowSpec& spec, const DifferentiableFn& fn, const BigReal& x0,
                     const TableOptions& options) {
  RunConfig config(spec.method_id, fn, x0, options.precision);
  config.max_iters = options.iterations;
  config.stop_rule = StopRule::kFixedIterations;
  config.params = spec.params;
  config.reading = options.reading;
  config.root = BigReal(0, options.precision);  // errors are not tabulated
  const IterationTrace trace = run(config);

  BenchRow row;
  row.method_id = spec.method_id;
  row.params = resolve_params(descriptor(spec.method_id), spec.params);
  row.status = trace.status;
  row.message = trace.message;
  const auto n = static_cast<std::size_t>(options.iterations);
  if (trace.status == RunStatus::kDiverged) {
    row.cells.assign(n, Divergent{});
    return row;
  }
  for (std::size_t k = 1; k < trace.residuals.size() && row.cells.size() < n; ++k) {
    row.cells.push_back(cell_from(trace.residuals[k]));
  }
  // A run stopped by an exact zero keeps reporting zero; a degenerate step
  // leaves the remaining cells without a value.
  const Cell filler = trace.status == RunStatus::kConverged ? Cell{PaperNumber{"0", 0}} : Cell{Divergent{}};
  while (row.cells.size() < n) row.cells.push_back(filler);
  return row;
}

}  // namespace

BenchTable reproduce_table(int table_no, const TableOptions& options) {
  const TableCase& tc = table_case(table_no);
  const DifferentiableFn fn = builtin_suite(options.form)[static_cast<std::size_t>(tc.function_index - 1)];
  const BigReal x0 = make(tc.x0, options.precision);

  std::vector<TableRowSpec> specs;
  if (options.methods.empty()) {
    specs = table_rows();
  } else {
    for (const auto& spec : table_rows()) {
      if (std::find(options.methods.begin(), options.methods.end(), spec.method_id) != options.methods.end()) {
        specs.push_back(spec);
      }
    }
    for (const auto& id : options.methods) {
      descriptor(id);  // unknown ids throw
      if (std::none_of(specs.begin(), specs.end(), [&](const auto& s) { return s.method_id == id; })) {
        specs.push_back({id, {}});
      }
    }
  }

  BenchTable table;
  table.table_no = table_no;
  table.caption = "Table " + std::to_string(table_no) + ": |" + fn.label() + "(x_k)| for " + fn.label() +
                  "(x) = " + suite_expression(tc.function_index, options.form) + ", x0 = " + tc.x0;
  table.precision_digits = options.precision.digits();
  table.iterations = options.iterations;
  table.timestamp = utc_timestamp();
  table.version = MPROOT_VERSION;

  if (options.parallel && mpfr_buildopt_tls_p() != 0) {
    std::vector<std::future<BenchRow>> pending;
    for (const auto& spec : specs) {
      pending.push_back(std::async(std::launch::async, [&, spec] {
        BenchRow row = compute_row(spec, fn, x0, options);
        mpfr_free_cache();
        return row;
      }));
    }
    for (auto& f : pending) table.rows.push_back(f.get());
  } else {
    for (const auto& spec : specs) table.rows.push_back(compute_row(spec, fn, x0, options));
  }
  return table;
}

BenchTable select_rows(const BenchTable& table, const std::vector<std::string>& method_ids) {
  BenchTable out = table;
  out.rows.clear();
  for (const auto& id : method_ids) {
    if (const BenchRow* r = table.row(id)) out.rows.push_back(*r);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

std::string params_text(const ParamMap& params) {
  std::string out;
  for (const auto& [k, v] : params) {
    if (!out.empty()) out += ",";
    out += k + "=" + v.to_string();
  }
  return out;
}

}  // namespace

std::string render_text(const BenchTable& table, bool canonical) {
  std::ostringstream out;
  out << table.caption << '\n';
  out << "precision: " << table.precision_digits << " digits; " << table.iterations
      << " iterations, fixed count (no tolerance stop)\n";
  if (!canonical) out << "generated: " << table.timestamp << " by mproot " << table.version << '\n';
  out << std::left << std::setw(26) << "method";
  for (int k = 1; k <= table.iterations; ++k) {
    out << std::setw(16) << ("|f(x" + std::to_string(k) + ")|");
  }
  out << '\n';
  for (const auto& row : table.rows) {
    std::string label = row.method_id;
    if (!row.params.empty()) label += " (" + params_text(row.params) + ")";
    out << std::setw(26) << label;
    for (const auto& c : row.cells) out << std::setw(16) << cell_text(c);
    out << '\n';
  }
  std::string s = out.str();
  // Trailing padding is noise in diffs.
  std::string trimmed;
  std::istringstream lines(s);
  for (std::string line; std::getline(lines, line);) {
    line.erase(line.find_last_not_of(' ') + 1);
    trimmed += line + '\n';
  }
  return trimmed;
}

std::string render_csv(const BenchTable& table) {
  std::ostringstream out;
  out << "table_no,method_id,iter_index,cell_text\n";
  for (const auto& row : table.rows) {
    for (std::size_t k = 0; k < row.cells.size(); ++k) {
      out << table.table_no << ',' << row.method_id << ',' << (k + 1) << ',' << cell_text(row.cells[k]) << '\n';
    }
  }
  return out.str();
}

std::string render_json(const BenchTable& table) {
  using nlohmann::ordered_json;
  ordered_json doc;
  doc["caption"] = table.caption;
  doc["precision_digits"] = table.precision_digits;
  ordered_json rows = ordered_json::array();
  for (const auto& row : table.rows) {
    ordered_json r;
    r["method_id"] = row.method_id;
    ordered_json params = ordered_json::object();
    for (const auto& [k, v] : row.params) params[k] = v.to_string();
    r["params"] = params;
    ordered_json cells = ordered_json::array();
    for (const auto& c : row.cells) {
      if (std::holds_alternative<Divergent>(c)) {
        cells.push_back("dgt");
      } else {
        const auto& n = std::get<PaperNumber>(c);
        cells.push_back({{"mantissa", n.is_zero() ? "0" : "0." + n.digits}, {"exponent", n.exponent}});
      }
    }
    r["cells"] = cells;
    rows.push_back(r);
  }
  doc["rows"] = rows;
  return doc.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Comparison

namespace {

double log10_of(const PaperNumber& n) { return static_cast<double>(n.exponent) + std::log10(n.mantissa()); }

// Strictly increasing numeric residuals: a run moving away from the root.
bool grows(const BenchRow& row) {
  std::vector<double> values;
  for (const auto& c : row.cells) {
    if (const auto* n = std::get_if<PaperNumber>(&c); n && !n->is_zero()) values.push_back(log10_of(*n));
  }
  if (values.size() < 2) return false;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (!(values[i] > values[i - 1])) return false;
  }
  return true;
}

}  // namespace

DiffReport diff_against_reference(const BenchTable& produced, const BenchTable& reference) {
  if (produced.rows.size() != reference.rows.size()) {
    throw ShapeMismatch("row counts differ: " + std::to_string(produced.rows.size()) + " vs " +
                        std::to_string(reference.rows.size()));
  }
  DiffReport report;
  for (std::size_t i = 0; i < produced.rows.size(); ++i) {
    const BenchRow& p = produced.rows[i];
    const BenchRow& r = reference.rows[i];
    if (p.method_id != r.method_id || p.cells.size() != r.cells.size()) {
      throw ShapeMismatch("row " + std::to_string(i) + " differs: " + p.method_id + " vs " + r.method_id);
    }
    for (std::size_t k = 0; k < p.cells.size(); ++k) {
      CellDiff d;
      d.method_id = p.method_id;
      d.iter_index = static_cast<int>(k) + 1;
      d.produced = cell_text(p.cells[k]);
      d.reference = cell_text(r.cells[k]);
      const auto* pn = std::get_if<PaperNumber>(&p.cells[k]);
      const auto* rn = std::get_if<PaperNumber>(&r.cells[k]);
      if (!pn && !rn) {
        d.pass = true;
      } else if (!pn || !rn) {
        d.divergence_compatible = pn ? grows(p) : grows(r);
        d.pass = d.divergence_compatible;
      } else if (pn->is_zero() || rn->is_zero()) {
        d.pass = pn->is_zero() && rn->is_zero();
        if (d.pass) d.exponent_delta = 0;
      } else {
        d.exponent_delta = pn->exponent - rn->exponent;
        if (*d.exponent_delta == 0) {
          d.mantissa_error = std::fabs(pn->mantissa() - rn->mantissa()) / rn->mantissa();
          d.pass = *d.mantissa_error <= 0.2;
        } else {
          d.pass = std::labs(*d.exponent_delta) <= 2;
        }
      }
      (d.pass ? report.passed : report.failed) += 1;
      report.cells.push_back(std::move(d));
    }
  }
  return report;
}

bool DiffReport::row_pass(std::string_view method_id) const {
  bool seen = false;
  for (const auto& c : cells) {
    if (c.method_id != method_id) continue;
    seen = true;
    if (!c.pass) return false;
  }
  return seen;
}

std::string render_diff(const DiffReport& report) {
  std::ostringstream out;
  out << std::left << std::setw(12) << "method" << std::setw(6) << "k" << std::setw(16) << "produced"
      << std::setw(16) << "reference" << std::setw(8) << "dexp" << std::setw(10) << "mant" << "result\n";
  for (const auto& c : report.cells) {
    std::ostringstream mant;
    if (c.mantissa_error) mant << std::fixed << std::setprecision(3) << *c.mantissa_error;
    out << std::setw(12) << c.method_id << std::setw(6) << c.iter_index << std::setw(16) << c.produced
        << std::setw(16) << c.reference << std::setw(8)
        << (c.exponent_delta ? std::to_string(*c.exponent_delta) : std::string("-")) << std::setw(10)
        << (c.mantissa_error ? mant.str() : std::string("-"))
        << (c.pass ? (c.divergence_compatible ? "ok (divergent)" : "ok") : "FAIL") << '\n';
  }
  out << report.passed << " passed, " << report.failed << " failed\n";
  return out.str();
}

}  // namespace mproot
