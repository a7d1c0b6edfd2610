#ifndef CPRSNP_BENCH_HPP
#define CPRSNP_BENCH_HPP

// Benchmark grid (instance x k x k' x formulation) and its reports: a CSV
// and an aligned text table with two columns (time, gap) per formulation.

#include <cstdio>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "cprsnp/engine.hpp"
#include "cprsnp/generator.hpp"
#include "cprsnp/io.hpp"

namespace cprsnp {

struct BenchCell {
  Formulation formulation = Formulation::Bilevel;
  std::optional<SolveStatus> status;  // empty when the run failed with an error
  double seconds = 0.0;
  std::optional<double> gap;
  std::optional<double> cost;
  int iterations = 0;
  std::string design;  // design file text
  std::string error;
};

struct BenchRow {
  std::string instance;
  int k = 0;
  int k_protected = 0;
  std::vector<BenchCell> cells;  // in BenchOptions::formulations order

  /// Every Optimal cell reports the same cost.
  bool consistent() const {
    std::optional<double> ref;
    for (const auto& c : cells)
      if (c.status == SolveStatus::Optimal) {
        if (ref && *ref != *c.cost) return false;
        ref = c.cost;
      }
    return true;
  }
};

struct BenchOptions {
  std::vector<Formulation> formulations{Formulation::Bilevel, Formulation::Cutset, Formulation::Flow};
  int k_min = 1, k_max = 1;
  int kp_min = 0, kp_max = 0;
  EngineOptions engine{};
  bool timings = true;  // false: report "n/a" instead of wall-clock values
};

struct NamedInstance {
  std::string label;
  Instance instance;
};

/// Runs every cell in order; a cell that throws records its message.
/// Iteration logs go to `log` when given.
inline std::vector<BenchRow> run_bench(const std::vector<NamedInstance>& instances, const BenchOptions& options,
                                       std::ostream* log = nullptr) {
  std::vector<BenchRow> rows;
  for (const auto& named : instances)
    for (int k = options.k_min; k <= options.k_max; ++k)
      for (int kp = options.kp_min; kp <= options.kp_max; ++kp) {
        BenchRow row{named.label, k, kp, {}};
        for (Formulation f : options.formulations) {
          BenchCell cell;
          cell.formulation = f;
          try {
            Instance inst = named.instance;
            inst.k = k;
            inst.k_protected = kp;
            const AugmentedInstance aug = augment(inst);
            Solution s = solve(aug, f, options.engine);
            cell.status = s.status;
            cell.seconds = s.seconds;
            cell.gap = s.gap;
            cell.iterations = s.iterations;
            if (s.has_design) {
              cell.cost = s.cost;
              cell.design = to_text(aug, s.design);
            }
            if (log) {
              for (const auto& rec : s.log)
                *log << "instance=" << named.label << " k=" << k << " kp=" << kp << ' '
                     << format_iteration(rec, f, options.timings) << '\n';
              *log << "instance=" << named.label << " k=" << k << " kp=" << kp << " formulation=" << to_string(f)
                   << " status=" << to_string(s.status) << " iterations=" << s.iterations;
              if (s.has_design) *log << " cost=" << detail::format_number(s.cost);
              *log << '\n';
            }
          } catch (const std::exception& e) {
            cell.error = e.what();
            if (log)
              *log << "instance=" << named.label << " k=" << k << " kp=" << kp << " formulation=" << to_string(f)
                   << " error=\"" << cell.error << "\"\n";
          }
          row.cells.push_back(std::move(cell));
        }
        rows.push_back(std::move(row));
      }
  return rows;
}

namespace detail {

inline const char* display_name(Formulation f) {
  switch (f) {
    case Formulation::Cutset: return "Cut-set";
    case Formulation::Flow: return "Flow";
    case Formulation::Bilevel: return "Bilevel";
  }
  return "?";
}

inline std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

inline std::string time_text(const BenchCell& c, bool timings) {
  if (!c.status) return "-";
  return timings ? fixed(c.seconds, 2) : "n/a";
}

inline std::string gap_text(const BenchCell& c) {
  if (!c.status || !c.gap) return "-";
  if (*c.status == SolveStatus::Optimal) return "0";
  return fixed(*c.gap, 2);
}

inline std::string status_text(const BenchCell& c) { return c.status ? to_string(*c.status) : "error"; }

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return out + "\"";
}

}  // namespace detail

inline void write_csv(std::ostream& out, const std::vector<BenchRow>& rows, const BenchOptions& options) {
  out << "instance,k,k'";
  for (Formulation f : options.formulations) out << ',' << to_string(f) << "_t," << to_string(f) << "_gap";
  for (Formulation f : options.formulations) out << ',' << to_string(f) << "_cost," << to_string(f) << "_status";
  out << ",consistent\n";
  for (const auto& row : rows) {
    out << detail::csv_field(row.instance) << ',' << row.k << ',' << row.k_protected;
    for (const auto& c : row.cells) out << ',' << detail::time_text(c, options.timings) << ',' << detail::gap_text(c);
    for (const auto& c : row.cells)
      out << ',' << (c.cost ? detail::format_number(*c.cost) : "-") << ',' << detail::status_text(c);
    out << ',' << (row.consistent() ? "yes" : "no") << '\n';
  }
}

/// Text table: a group header (Instance, one name per formulation) over the
/// column header (|V|-|T|-|A|, k, k', then t (s) and gap per formulation).
/// Repeated instance labels print as "-".
inline void write_table(std::ostream& out, const std::vector<BenchRow>& rows, const BenchOptions& options) {
  std::vector<std::vector<std::string>> body;
  std::string previous;
  for (const auto& row : rows) {
    std::vector<std::string> line{row.instance == previous ? "-" : row.instance, std::to_string(row.k),
                                  std::to_string(row.k_protected)};
    previous = row.instance;
    for (const auto& c : row.cells) {
      line.push_back(detail::time_text(c, options.timings));
      line.push_back(detail::gap_text(c));
    }
    body.push_back(std::move(line));
  }
  std::vector<std::string> header{"|V|-|T|-|A|", "k", "k'"};
  for (std::size_t i = 0; i < options.formulations.size(); ++i) {
    header.push_back("t (s)");
    header.push_back("gap");
  }
  std::vector<std::size_t> width(header.size(), 0);
  for (std::size_t j = 0; j < header.size(); ++j) width[j] = header[j].size();
  for (const auto& line : body)
    for (std::size_t j = 0; j < line.size(); ++j) width[j] = std::max(width[j], line[j].size());

  // Group header spans: Instance over the first three columns, then one per pair.
  std::vector<std::pair<std::string, std::size_t>> groups{{"Instance", width[0] + width[1] + width[2] + 6}};
  for (std::size_t i = 0; i < options.formulations.size(); ++i) {
    std::size_t& a = width[3 + 2 * i];
    std::size_t& b = width[4 + 2 * i];
    const std::string name = detail::display_name(options.formulations[i]);
    if (a + b + 3 < name.size()) a = name.size() - b - 3;
    groups.emplace_back(name, a + b + 3);
  }
  groups[0].second = std::max(groups[0].second, std::string("Instance").size());
  if (groups[0].second > width[0] + width[1] + width[2] + 6) width[0] = groups[0].second - width[1] - width[2] - 6;

  auto rule = [&] {
    out << '+';
    for (std::size_t w : width) out << std::string(w + 2, '-') << '+';
    out << '\n';
  };
  auto cells = [&](const std::vector<std::string>& line) {
    out << '|';
    for (std::size_t j = 0; j < line.size(); ++j) out << ' ' << line[j] << std::string(width[j] - line[j].size(), ' ') << " |";
    out << '\n';
  };
  rule();
  out << '|';
  for (const auto& [name, span] : groups) out << ' ' << name << std::string(span - name.size(), ' ') << " |";
  out << '\n';
  rule();
  cells(header);
  rule();
  for (const auto& line : body) cells(line);
  rule();
}

}  // namespace cprsnp

#endif
