#include <cmath>
#include <fstream>
#include <regex>
#include <sstream>

#include "mproot/bench.hpp"
#include "mproot/errors.hpp"

namespace mproot {

double PaperNumber::mantissa() const {
  if (is_zero()) return 0.0;
  return std::stod("0." + digits);
}

Cell parse_cell(std::string_view text) {
  static const std::regex pattern(R"(^0?\.(\d+)[eE]([+-]?\d+)$)");
  const std::string s(text);
  if (s == "dgt") return Divergent{};
  if (s == "0") return PaperNumber{"0", 0};
  std::smatch m;
  if (!std::regex_match(s, m, pattern) || m[1].str().front() == '0') {
    throw FormatError("not a table cell: '" + s + "'");
  }
  return PaperNumber{m[1].str(), std::stol(m[2].str())};
}

std::string cell_text(const Cell& cell) {
  if (std::holds_alternative<Divergent>(cell)) return "dgt";
  const auto& n = std::get<PaperNumber>(cell);
  if (n.is_zero()) return "0";
  return "0." + n.digits + "e" + (n.exponent < 0 ? "-" : "+") + std::to_string(std::labs(n.exponent));
}

Cell cell_from(const BigReal& residual, int sig_figs) {
  if (residual.is_nan() || residual.is_inf()) return Divergent{};
  return parse_cell(format_paper(residual, sig_figs));
}

std::filesystem::path default_fixture_path() { return MPROOT_FIXTURE; }

std::map<int, BenchTable> load_reference(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open fixture " + path.string());
  std::map<int, BenchTable> tables;
  std::string line;
  int line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (!header_seen) {
      if (line != "table_no,method_id,iter_index,cell_text") {
        throw FormatError("fixture line " + std::to_string(line_no) + ": unexpected header");
      }
      header_seen = true;
      continue;
    }
    std::vector<std::string> fields;
    std::stringstream ss(line);
    for (std::string f; std::getline(ss, f, ',');) fields.push_back(f);
    if (fields.size() != 4) throw FormatError("fixture line " + std::to_string(line_no) + ": expected 4 fields");
    int table_no = 0;
    int iter = 0;
    try {
      table_no = std::stoi(fields[0]);
      iter = std::stoi(fields[2]);
    } catch (const std::exception&) {
      throw FormatError("fixture line " + std::to_string(line_no) + ": bad number");
    }
    BenchTable& t = tables[table_no];
    t.table_no = table_no;
    t.caption = "Table " + std::to_string(table_no) + " (reference)";
    if (t.rows.empty() || t.rows.back().method_id != fields[1]) {
      t.rows.push_back(BenchRow{fields[1], {}, {}, std::nullopt, {}});
    }
    BenchRow& row = t.rows.back();
    if (iter != static_cast<int>(row.cells.size()) + 1) {
      throw FormatError("fixture line " + std::to_string(line_no) + ": iter_index out of sequence");
    }
    row.cells.push_back(parse_cell(fields[3]));
    t.iterations = std::max(t.iterations, iter);
  }
  return tables;
}

}  // namespace mproot
