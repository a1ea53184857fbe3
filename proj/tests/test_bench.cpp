#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "json.hpp"
#include "mproot/bench.hpp"
#include "mproot/errors.hpp"

namespace mproot {
namespace {

PaperNumber number(std::string_view text) { return std::get<PaperNumber>(parse_cell(text)); }

BenchTable one_row(std::string id, std::vector<std::string> cells) {
  BenchTable t;
  t.table_no = 2;
  BenchRow r;
  r.method_id = std::move(id);
  for (const auto& c : cells) r.cells.push_back(parse_cell(c));
  t.rows.push_back(r);
  return t;
}

const std::map<int, BenchTable>& fixtures() {
  static const auto loaded = load_reference(default_fixture_path());
  return loaded;
}

TEST(Cells, Parse) {
  EXPECT_EQ(number("0.695e-5"), (PaperNumber{"695", -5}));
  EXPECT_EQ(number(".136e-3"), (PaperNumber{"136", -3}));
  EXPECT_EQ(number("0.165e+0"), (PaperNumber{"165", 0}));
  EXPECT_TRUE(number("0").is_zero());
  EXPECT_TRUE(std::holds_alternative<Divergent>(parse_cell("dgt")));
  EXPECT_DOUBLE_EQ(number("0.695e-5").mantissa(), 0.695);
  for (const char* bad : {"", "1.5e-3", "0.e-3", "0.12x", "dgt2", "0.1e"}) {
    EXPECT_THROW(parse_cell(bad), FormatError) << bad;
  }
}

TEST(Cells, TextRoundTrip) {
  for (const char* s : {"0.695e-5", "0.165e+0", "0", "dgt", "0.336e-665"}) EXPECT_EQ(cell_text(parse_cell(s)), s);
  EXPECT_EQ(cell_text(parse_cell(".136e-3")), "0.136e-3");
}

TEST(Cells, FromResidual) {
  EXPECT_EQ(cell_text(cell_from(make("6.54e-61", Precision(100)))), "0.654e-60");
  EXPECT_EQ(cell_text(cell_from(BigReal(0, Precision(100)))), "0");
  EXPECT_EQ(cell_text(cell_from(BigReal::nan(Precision(100)))), "dgt");
}

TEST(Layout, CasesAndRows) {
  ASSERT_EQ(table_cases().size(), 7u);
  EXPECT_EQ(table_case(2).function_index, 1);
  EXPECT_EQ(table_case(2).x0, "0.7");
  EXPECT_EQ(table_case(6).x0, "-3");
  EXPECT_EQ(table_case(8).function_index, 7);
  EXPECT_THROW(table_case(9), std::out_of_range);
  ASSERT_EQ(table_rows().size(), 15u);
  EXPECT_EQ(table_rows().front().method_id, "jc8");
  EXPECT_EQ(table_rows().back().method_id, "wang");
}

TEST(Fixture, LoadsEveryCell) {
  ASSERT_EQ(fixtures().size(), 7u);
  std::size_t cells = 0;
  for (const auto& [no, t] : fixtures()) {
    EXPECT_EQ(t.rows.size(), 15u) << no;
    for (const auto& r : t.rows) cells += r.cells.size();
  }
  EXPECT_EQ(cells, 315u);
  EXPECT_EQ(cell_text(fixtures().at(2).row("jc8")->cells[2]), "0.336e-665");
}

TEST(Fixture, RejectsMalformedFiles) {
  const auto path = std::filesystem::temp_directory_path() / "mproot_bad_fixture.csv";
  {
    std::ofstream out(path);
    out << "table_no,method_id,iter_index,cell_text\n2,jc8,1,zero\n";
  }
  EXPECT_THROW(load_reference(path), FormatError);
  std::filesystem::remove(path);
  EXPECT_THROW(load_reference(path), FormatError);
}

TEST(Diff, ToleranceExamples) {
  const DiffReport far = diff_against_reference(one_row("jc8", {"0.3e-660"}), one_row("jc8", {"0.336e-665"}));
  ASSERT_EQ(far.cells.size(), 1u);
  EXPECT_EQ(far.cells[0].exponent_delta, 5);
  EXPECT_FALSE(far.all_pass());

  const DiffReport near = diff_against_reference(one_row("jc8", {"0.696e-5"}), one_row("jc8", {"0.695e-5"}));
  EXPECT_TRUE(near.all_pass());
  EXPECT_NEAR(*near.cells[0].mantissa_error, 0.001 / 0.695, 1e-12);

  EXPECT_TRUE(diff_against_reference(one_row("a", {"0.5e-10"}), one_row("a", {"0.5e-12"})).all_pass());
  EXPECT_FALSE(diff_against_reference(one_row("a", {"0.5e-10"}), one_row("a", {"0.5e-13"})).all_pass());
  EXPECT_FALSE(diff_against_reference(one_row("a", {"0.130e-10"}), one_row("a", {"0.100e-10"})).all_pass());
}

TEST(Diff, DivergenceCompatibility) {
  const auto growing = one_row("a", {"0.1e+1", "0.5e+3", "0.2e+9"});
  const auto dgt = one_row("a", {"dgt", "dgt", "dgt"});
  const DiffReport r = diff_against_reference(dgt, growing);
  EXPECT_TRUE(r.all_pass());
  EXPECT_TRUE(r.cells[0].divergence_compatible);
  const auto shrinking = one_row("a", {"0.1e-1", "0.5e-8", "0.2e-60"});
  EXPECT_FALSE(diff_against_reference(dgt, shrinking).all_pass());
  EXPECT_TRUE(diff_against_reference(dgt, dgt).all_pass());
}

TEST(Diff, ShapeMismatch) {
  EXPECT_THROW(diff_against_reference(one_row("a", {"0"}), one_row("b", {"0"})), ShapeMismatch);
  EXPECT_THROW(diff_against_reference(one_row("a", {"0"}), one_row("a", {"0", "0"})), ShapeMismatch);
  BenchTable two = one_row("a", {"0"});
  two.rows.push_back(two.rows[0]);
  EXPECT_THROW(diff_against_reference(two, one_row("a", {"0"})), ShapeMismatch);
}

TEST(Reproduce, Jc8RowMatchesEveryTable) {
  TableOptions o;
  o.methods = {"jc8"};
  for (const auto& c : table_cases()) {
    const BenchTable t = reproduce_table(c.table_no, o);
    const BenchTable ref = select_rows(fixtures().at(c.table_no), {"jc8"});
    const DiffReport d = diff_against_reference(t, ref);
    EXPECT_TRUE(d.all_pass()) << "table " << c.table_no << "\n" << render_diff(d);
  }
}

TEST(Reproduce, TableTwoAllRows) {
  const BenchTable t = reproduce_table(2);
  ASSERT_EQ(t.rows.size(), 15u);
  EXPECT_EQ(t.precision_digits, 2048);
  EXPECT_EQ(cell_text(t.row("jc8")->cells[2]), "0.336e-665");
  EXPECT_EQ(cell_text(t.row("wang")->cells[0]), "0.101e-4");
}

TEST(Reproduce, DivergentRowRendersDgt) {
  TableOptions o;
  o.methods = {"bi2"};
  const BenchTable t = reproduce_table(3, o);
  ASSERT_EQ(t.rows.size(), 1u);
  EXPECT_EQ(t.rows[0].status, RunStatus::kDiverged);
  for (const auto& c : t.rows[0].cells) EXPECT_TRUE(std::holds_alternative<Divergent>(c));
}

TEST(Reproduce, CanonicalTextIsStable) {
  TableOptions o;
  o.methods = {"jc8", "wang", "kim"};
  const std::string a = render_text(reproduce_table(5, o), true);
  o.parallel = false;
  const std::string b = render_text(reproduce_table(5, o), true);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.find("generated:"), std::string::npos);
  EXPECT_NE(render_text(reproduce_table(5, o)).find("generated:"), std::string::npos);
}

TEST(Reproduce, FormatsAgree) {
  TableOptions o;
  o.methods = {"jc8", "sharma1"};
  const BenchTable t = reproduce_table(7, o);
  const std::string csv = render_csv(t);
  const auto doc = nlohmann::json::parse(render_json(t));
  const std::string text = render_text(t, true);
  ASSERT_EQ(doc["rows"].size(), 2u);
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    EXPECT_EQ(doc["rows"][i]["method_id"], t.rows[i].method_id);
    for (std::size_t k = 0; k < t.rows[i].cells.size(); ++k) {
      const std::string cell = cell_text(t.rows[i].cells[k]);
      const std::string line = "7," + t.rows[i].method_id + "," + std::to_string(k + 1) + "," + cell + "\n";
      EXPECT_NE(csv.find(line), std::string::npos) << line;
      EXPECT_NE(text.find(cell), std::string::npos) << cell;
      const auto& j = doc["rows"][i]["cells"][k];
      const auto& n = std::get<PaperNumber>(t.rows[i].cells[k]);
      EXPECT_EQ(j["mantissa"], "0." + n.digits);
      EXPECT_EQ(j["exponent"], n.exponent);
    }
  }
}

TEST(Reproduce, UnknownTable) { EXPECT_THROW(reproduce_table(1), std::out_of_range); }

}  // namespace
}  // namespace mproot
