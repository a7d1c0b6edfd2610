#ifndef CPRSNP_IO_HPP
#define CPRSNP_IO_HPP

// Plain-text instance and design files.
//
// Instance records, one per line:
//   c <comment>
//   p cprsnp <|V|> <|A|>
//   r <vertex>
//   t <vertex>                      (repeated)
//   a <tail> <head> <cost> <capacity>
//   b <k> <k'>
// Vertices are the integers 1..|V|. Design records: `y <tail> <head>` and
// `p <tail> <head>`.

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "cprsnp/error.hpp"
#include "cprsnp/graph.hpp"

namespace cprsnp {

namespace detail {

inline std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

template <class T>
T parse_number(std::string_view s, std::size_t line, const char* what) {
  T value{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw ParseError(line, std::string("invalid ") + what + " '" + std::string(s) + "'");
  return value;
}

inline std::string format_number(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace detail

struct ParseOptions {
  /// Reverses every arc at load time, for data whose flow runs from the terminals to the root.
  bool reverse_arcs = false;
};

inline Instance parse_instance(std::istream& in, const ParseOptions& options = {}) {
  Instance inst;
  std::optional<std::int64_t> declared_arcs;
  bool have_root = false, have_budget = false;
  std::size_t budget_line = 0;
  std::map<std::pair<VertexId, VertexId>, std::size_t> arc_lines;
  std::vector<char> is_terminal;

  std::string raw;
  std::size_t line_no = 0;
  auto vertex = [&](std::string_view s) {
    auto label = detail::parse_number<std::int64_t>(s, line_no, "vertex");
    if (label < 1 || label > inst.num_vertices())
      throw ParseError(line_no, "unknown vertex " + std::string(s));
    return static_cast<VertexId>(label - 1);
  };
  auto need = [&](const std::vector<std::string_view>& f, std::size_t n) {
    if (f.size() != n) throw ParseError(line_no, "'" + std::string(f[0]) + "' record expects " + std::to_string(n - 1) + " fields");
    if (!declared_arcs) throw ParseError(line_no, "'" + std::string(f[0]) + "' record before the problem line");
  };

  while (std::getline(in, raw)) {
    ++line_no;
    auto fields = detail::split_fields(raw);
    if (fields.empty() || fields[0] == "c") continue;
    const std::string_view tag = fields[0];
    if (tag == "p") {
      if (declared_arcs) throw ParseError(line_no, "duplicated problem line");
      if (fields.size() != 4 || fields[1] != "cprsnp") throw ParseError(line_no, "expected 'p cprsnp <|V|> <|A|>'");
      auto n = detail::parse_number<std::int64_t>(fields[2], line_no, "vertex count");
      auto m = detail::parse_number<std::int64_t>(fields[3], line_no, "arc count");
      if (n < 1 || n > 100'000'000) throw ParseError(line_no, "vertex count out of range");
      if (m < 0) throw ParseError(line_no, "arc count out of range");
      declared_arcs = m;
      for (std::int64_t v = 1; v <= n; ++v) inst.labels.push_back(v);
      is_terminal.assign(static_cast<std::size_t>(n), 0);
    } else if (tag == "r") {
      need(fields, 2);
      if (have_root) throw ParseError(line_no, "duplicated root line");
      inst.root = vertex(fields[1]);
      have_root = true;
    } else if (tag == "t") {
      need(fields, 2);
      VertexId t = vertex(fields[1]);
      if (is_terminal[static_cast<std::size_t>(t)]) throw ParseError(line_no, "duplicated terminal " + std::string(fields[1]));
      is_terminal[static_cast<std::size_t>(t)] = 1;
      inst.terminals.push_back(t);
    } else if (tag == "a") {
      need(fields, 5);
      Arc arc;
      arc.tail = vertex(fields[1]);
      arc.head = vertex(fields[2]);
      if (options.reverse_arcs) std::swap(arc.tail, arc.head);
      if (arc.tail == arc.head) throw ParseError(line_no, "self-loop");
      arc.cost = detail::parse_number<double>(fields[3], line_no, "cost");
      if (!std::isfinite(arc.cost) || arc.cost < 0) throw ParseError(line_no, "cost must be finite and nonnegative");
      arc.capacity = detail::parse_number<Capacity>(fields[4], line_no, "capacity");
      if (arc.capacity < 0) throw ParseError(line_no, "capacity must be nonnegative");
      auto [it, fresh] = arc_lines.emplace(std::pair{arc.tail, arc.head}, line_no);
      if (!fresh)
        throw ParseError(line_no, "duplicated arc " + std::string(fields[1]) + " " + std::string(fields[2]) + " (first on line " +
                                      std::to_string(it->second) + ")");
      inst.arcs.push_back(arc);
    } else if (tag == "b") {
      need(fields, 3);
      if (have_budget) throw ParseError(line_no, "duplicated budget line");
      inst.k = detail::parse_number<int>(fields[1], line_no, "k");
      inst.k_protected = detail::parse_number<int>(fields[2], line_no, "k'");
      if (inst.k < 0 || inst.k_protected < 0) throw ParseError(line_no, "budgets must be nonnegative");
      have_budget = true;
      budget_line = line_no;
    } else {
      throw ParseError(line_no, "unknown record '" + std::string(tag) + "'");
    }
  }
  if (!declared_arcs) throw ParseError(0, "missing problem line");
  if (!have_root) throw ParseError(0, "missing root line");
  if (!have_budget) throw ParseError(0, "missing budget line");
  if (static_cast<std::int64_t>(inst.arcs.size()) != *declared_arcs)
    throw ParseError(0, "problem line declares " + std::to_string(*declared_arcs) + " arcs, file has " +
                            std::to_string(inst.arcs.size()));
  if (is_terminal[static_cast<std::size_t>(inst.root)]) throw ParseError(0, "root cannot be a terminal");
  if (inst.k + inst.k_protected > inst.num_arcs())
    throw ParseError(budget_line, "k + k' = " + std::to_string(inst.k + inst.k_protected) + " exceeds |A| = " +
                                      std::to_string(inst.num_arcs()));
  try {
    inst.validate();
  } catch (const InstanceError& e) {
    throw ParseError(0, e.what());
  }
  return inst;
}

inline Instance read_instance(const std::string& path, const ParseOptions& options = {}) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return parse_instance(in, options);
}

inline void write_instance(std::ostream& out, const Instance& inst, std::string_view comment = {}) {
  if (!comment.empty()) out << "c " << comment << '\n';
  out << "p cprsnp " << inst.num_vertices() << ' ' << inst.num_arcs() << '\n';
  auto label = [&](VertexId v) { return inst.labels[static_cast<std::size_t>(v)]; };
  out << "r " << label(inst.root) << '\n';
  for (VertexId t : inst.terminals) out << "t " << label(t) << '\n';
  for (const Arc& a : inst.arcs)
    out << "a " << label(a.tail) << ' ' << label(a.head) << ' ' << detail::format_number(a.cost) << ' ' << a.capacity << '\n';
  out << "b " << inst.k << ' ' << inst.k_protected << '\n';
}

inline std::string to_text(const Instance& inst, std::string_view comment = {}) {
  std::ostringstream os;
  write_instance(os, inst, comment);
  return os.str();
}

/// Reads a design over the instance's initial arcs; the result is canonical.
inline Design parse_design(std::istream& in, const AugmentedInstance& aug) {
  std::map<std::pair<std::int64_t, std::int64_t>, ArcId> by_labels;
  for (ArcId a = 0; a < aug.num_initial; ++a) {
    const Arc& arc = aug.arcs[static_cast<std::size_t>(a)];
    by_labels.emplace(std::pair{aug.label(arc.tail), aug.label(arc.head)}, a);
  }
  Design design = Design::empty(aug);
  std::vector<std::size_t> protected_on(static_cast<std::size_t>(aug.num_arcs()), 0);
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    auto fields = detail::split_fields(raw);
    if (fields.empty() || fields[0] == "c") continue;
    if ((fields[0] != "y" && fields[0] != "p") || fields.size() != 3)
      throw ParseError(line_no, "expected 'y <tail> <head>' or 'p <tail> <head>'");
    auto tail = detail::parse_number<std::int64_t>(fields[1], line_no, "vertex");
    auto head = detail::parse_number<std::int64_t>(fields[2], line_no, "vertex");
    auto it = by_labels.find({tail, head});
    if (it == by_labels.end())
      throw ParseError(line_no, "unknown arc " + std::string(fields[1]) + " " + std::string(fields[2]));
    auto& slot = fields[0] == "y" ? design.selected : design.protection;
    if (slot[static_cast<std::size_t>(it->second)]) throw ParseError(line_no, "duplicated record");
    slot[static_cast<std::size_t>(it->second)] = 1;
    if (fields[0] == "p") protected_on[static_cast<std::size_t>(it->second)] = line_no;
  }
  for (ArcId a = 0; a < aug.num_initial; ++a)
    if (design.is_protected(a) && !design.is_selected(a))
      throw ParseError(protected_on[static_cast<std::size_t>(a)], "protected arc is not selected");
  return design;
}

inline Design read_design(const std::string& path, const AugmentedInstance& aug) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return parse_design(in, aug);
}

inline void write_design(std::ostream& out, const AugmentedInstance& aug, const Design& design) {
  for (ArcId a = 0; a < aug.num_initial; ++a)
    if (design.is_selected(a)) {
      const Arc& arc = aug.arcs[static_cast<std::size_t>(a)];
      out << "y " << aug.label(arc.tail) << ' ' << aug.label(arc.head) << '\n';
    }
  for (ArcId a = 0; a < aug.num_initial; ++a)
    if (design.is_protected(a)) {
      const Arc& arc = aug.arcs[static_cast<std::size_t>(a)];
      out << "p " << aug.label(arc.tail) << ' ' << aug.label(arc.head) << '\n';
    }
}

inline std::string to_text(const AugmentedInstance& aug, const Design& design) {
  std::ostringstream os;
  write_design(os, aug, design);
  return os.str();
}

}  // namespace cprsnp

#endif
