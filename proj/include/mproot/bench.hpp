#pragma once

// Residual tables: which (function, x0) pairs and method rows make up each
// table, computing them, rendering them as text/CSV/JSON, and comparing a
// computed table with a reference fixture.

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mproot/driver.hpp"
#include "mproot/methods.hpp"
#include "mproot/mpreal.hpp"
#include "mproot/suite.hpp"

namespace mproot {

struct TableCase {
  int table_no;
  /// 1-based index into builtin_suite().
  int function_index;
  std::string x0;
};

/// Tables 2..8 in order.
const std::vector<TableCase>& table_cases();
const TableCase& table_case(int table_no);

struct TableRowSpec {
  std::string method_id;
  ParamMap params;
};

/// The 15 compared rows in their published order (gamma = 1; Kim with
/// lambda = mu = 0, b = 4).
const std::vector<TableRowSpec>& table_rows();

/// A "0.MMMe±E" cell. digits holds MMM; zero is digits "0", exponent 0.
struct PaperNumber {
  std::string digits;
  long exponent = 0;

  bool is_zero() const { return digits == "0"; }
  /// 0.MMM as a double in [0.1, 1), 0 for zero.
  double mantissa() const;
  friend bool operator==(const PaperNumber&, const PaperNumber&) = default;
};

/// Marker for a non-convergent run.
struct Divergent {
  friend bool operator==(const Divergent&, const Divergent&) = default;
};

using Cell = std::variant<PaperNumber, Divergent>;

/// Accepts "0.695e-5", ".136e-3", "0.165e+0", "0" and "dgt". Throws FormatError.
Cell parse_cell(std::string_view text);
std::string cell_text(const Cell& cell);
Cell cell_from(const BigReal& residual, int sig_figs = 3);

struct BenchRow {
  std::string method_id;
  ParamMap params;
  std::vector<Cell> cells;
  std::optional<RunStatus> status;
  std::string message;
};

struct BenchTable {
  int table_no = 0;
  std::string caption;
  int precision_digits = 0;
  int iterations = 3;
  std::string timestamp;
  std::string version;
  std::vector<BenchRow> rows;

  const BenchRow* row(std::string_view method_id) const;
};

struct TableOptions {
  Precision precision;
  SuiteForm form = SuiteForm::kReconciled;
  Reading reading = Reading::kAsTabulated;
  int iterations = 3;
  /// Subset of method ids, in table order; empty means all rows.
  std::vector<std::string> methods;
  /// Compute rows concurrently when the MPFR build is thread safe.
  bool parallel = true;
};

/// Runs every requested row for exactly `iterations` steps with no
/// tolerance stop. A diverged run renders as "dgt" in every cell.
BenchTable reproduce_table(int table_no, const TableOptions& options = {});

/// Fixed-width text. canonical drops the timestamp line.
std::string render_text(const BenchTable& table, bool canonical = false);
/// table_no,method_id,iter_index,cell_text
std::string render_csv(const BenchTable& table);
/// {caption, precision_digits, rows: [{method_id, params, cells}]}
std::string render_json(const BenchTable& table);

/// Reads the fixture CSV. '#' lines are comments. Throws FormatError.
std::map<int, BenchTable> load_reference(const std::filesystem::path& path);
/// Path of the fixture shipped with the sources.
std::filesystem::path default_fixture_path();

BenchTable select_rows(const BenchTable& table, const std::vector<std::string>& method_ids);

struct CellDiff {
  std::string method_id;
  int iter_index = 0;
  std::string produced;
  std::string reference;
  /// Unset when either side is "dgt".
  std::optional<long> exponent_delta;
  /// Relative mantissa error, only when exponents match exactly.
  std::optional<double> mantissa_error;
  /// One side is "dgt" and the other side's row grows; counted as a pass.
  bool divergence_compatible = false;
  bool pass = false;
};

struct DiffReport {
  std::vector<CellDiff> cells;
  int passed = 0;
  int failed = 0;

  bool all_pass() const { return failed == 0; }
  bool row_pass(std::string_view method_id) const;
};

/// Tolerance: |exponent delta| <= 2, and mantissa within 20% when the
/// exponents are equal. Throws ShapeMismatch unless both tables have the
/// same method ids in the same order and the same cell counts.
DiffReport diff_against_reference(const BenchTable& produced, const BenchTable& reference);

std::string render_diff(const DiffReport& report);

}  // namespace mproot
