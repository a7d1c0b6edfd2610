#include <gtest/gtest.h>

#include <sstream>

#include "cprsnp/bench.hpp"
#include "oracles.hpp"

namespace cprsnp {
namespace {

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::vector<std::string> cells_of(const std::string& row) {
  std::vector<std::string> out;
  std::size_t start = 1;
  for (std::size_t bar = row.find('|', start); bar != std::string::npos; bar = row.find('|', start)) {
    std::string cell = row.substr(start, bar - start);
    cell.erase(0, cell.find_first_not_of(' '));
    cell.erase(cell.find_last_not_of(' ') + 1);
    out.push_back(cell);
    start = bar + 1;
  }
  return out;
}

std::vector<BenchRow> diamond_rows(const BenchOptions& o) {
  return run_bench({NamedInstance{"3-1-3", testing::diamond()}}, o);
}

TEST(Bench, GridAndConsistency) {
  BenchOptions o;
  o.k_min = 0;
  o.k_max = 2;
  o.kp_min = 0;
  o.kp_max = 1;
  auto rows = diamond_rows(o);
  ASSERT_EQ(rows.size(), 6u);
  EXPECT_EQ(rows[0].k, 0);
  EXPECT_EQ(rows[1].k_protected, 1);
  for (const auto& row : rows) {
    EXPECT_TRUE(row.consistent());
    ASSERT_EQ(row.cells.size(), 3u);
    EXPECT_EQ(row.cells[0].formulation, Formulation::Bilevel);
    EXPECT_EQ(row.cells[1].formulation, Formulation::Cutset);
    EXPECT_EQ(row.cells[2].formulation, Formulation::Flow);
  }
  EXPECT_EQ(*rows[2].cells[0].cost, 4.0);
  EXPECT_EQ(*rows[3].cells[1].cost, 2.0);
  EXPECT_EQ(rows[4].cells[2].status, SolveStatus::Infeasible);
  EXPECT_EQ(*rows[5].cells[0].cost, 2.0);

  o.k_min = o.k_max = 2;
  o.kp_min = o.kp_max = 2;
  auto over = diamond_rows(o);
  ASSERT_EQ(over.size(), 1u);
  for (const auto& c : over[0].cells) {
    EXPECT_FALSE(c.status);
    EXPECT_FALSE(c.error.empty());
  }
  std::ostringstream csv;
  write_csv(csv, over, o);
  EXPECT_NE(csv.str().find(",-,error,"), std::string::npos);
}

TEST(Bench, InconsistentRowDetected) {
  BenchRow row;
  BenchCell a, b;
  a.status = b.status = SolveStatus::Optimal;
  a.cost = 3.0;
  b.cost = 4.0;
  row.cells = {a, b};
  EXPECT_FALSE(row.consistent());
  row.cells[1].status = SolveStatus::TimeLimit;
  EXPECT_TRUE(row.consistent());
}

TEST(Bench, CsvLayout) {
  BenchOptions o;
  o.k_max = 1;
  o.kp_max = 1;
  o.timings = false;
  std::ostringstream csv;
  write_csv(csv, diamond_rows(o), o);
  EXPECT_EQ(csv.str(),
            "instance,k,k',bilevel_t,bilevel_gap,cutset_t,cutset_gap,flow_t,flow_gap,bilevel_cost,bilevel_status,"
            "cutset_cost,cutset_status,flow_cost,flow_status,consistent\n"
            "3-1-3,1,0,n/a,0,n/a,0,n/a,0,4,optimal,4,optimal,4,optimal,yes\n"
            "3-1-3,1,1,n/a,0,n/a,0,n/a,0,2,optimal,2,optimal,2,optimal,yes\n");
}

TEST(Bench, TableLayout) {
  BenchOptions o;
  o.k_min = 1;
  o.k_max = 1;
  o.kp_max = 1;
  o.timings = false;
  std::ostringstream out;
  write_table(out, diamond_rows(o), o);
  auto lines = lines_of(out.str());
  ASSERT_EQ(lines.size(), 8u);
  EXPECT_EQ(cells_of(lines[1]), (std::vector<std::string>{"Instance", "Bilevel", "Cut-set", "Flow"}));
  ASSERT_EQ(lines[3].rfind("| |V|-|T|-|A| |", 0), 0u);
  EXPECT_EQ(cells_of(lines[3].substr(14)),
            (std::vector<std::string>{"k", "k'", "t (s)", "gap", "t (s)", "gap", "t (s)", "gap"}));
  EXPECT_EQ(cells_of(lines[5]), (std::vector<std::string>{"3-1-3", "1", "0", "n/a", "0", "n/a", "0", "n/a", "0"}));
  EXPECT_EQ(cells_of(lines[6])[0], "-");
  for (const auto& l : lines) EXPECT_EQ(l.size(), lines[0].size());
}

TEST(Bench, TimeoutCellsShowGapOrDash) {
  BenchCell c;
  c.status = SolveStatus::TimeLimit;
  c.gap = 0.126;
  EXPECT_EQ(detail::gap_text(c), "0.13");
  c.gap.reset();
  EXPECT_EQ(detail::gap_text(c), "-");
  c.seconds = 1.5;
  EXPECT_EQ(detail::time_text(c, true), "1.50");
}

}  // namespace
}  // namespace cprsnp
