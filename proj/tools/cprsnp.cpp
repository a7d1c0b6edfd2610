// Command-line front end: solve, gen, verify, bench.
//
// Exit codes: 0 optimal / verified, 2 time limit reached, 3 infeasible
// (or design not survivable), 4 input error.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cprsnp/bench.hpp"
#include "cprsnp/engine.hpp"
#include "cprsnp/generator.hpp"
#include "cprsnp/io.hpp"
#include "cprsnp/verify.hpp"

namespace {

constexpr int kExitOptimal = 0;
constexpr int kExitTimeout = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitInput = 4;

using namespace cprsnp;

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
  if (!out) throw InputError("failed writing " + path);
}

int exit_code(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return kExitOptimal;
    case SolveStatus::TimeLimit: return kExitTimeout;
    case SolveStatus::Infeasible: return kExitInfeasible;
  }
  return kExitInput;
}

struct SolveArgs {
  std::string instance;
  std::string formulation = "bilevel";
  double time_limit = 2000;
  std::string strengthen = "on";
  std::string design_out;
  std::string log_out;
  int k = -1, kp = -1;
  bool reverse = false;
  bool no_timings = false;
  std::uint64_t seed = 0;
};

int run_solve(const SolveArgs& a) {
  auto formulation = parse_formulation(a.formulation);
  if (!formulation) throw InputError("unknown formulation '" + a.formulation + "'");
  Instance inst = read_instance(a.instance, ParseOptions{a.reverse});
  if (a.k >= 0) inst.k = a.k;
  if (a.kp >= 0) inst.k_protected = a.kp;
  const AugmentedInstance aug = augment(inst);

  EngineOptions opt;
  opt.time_limit_s = a.time_limit;
  opt.strengthen = a.strengthen == "on";
  opt.seed = a.seed;
  opt.log_timings = !a.no_timings;
  Solution s = solve(aug, *formulation, opt);

  std::ostringstream log;
  log << "instance=" << size_label(inst) << " k=" << inst.k << " kp=" << inst.k_protected << " formulation=" << a.formulation
      << " strengthen=" << a.strengthen << " seed=" << a.seed << '\n';
  for (const auto& rec : s.log) log << format_iteration(rec, *formulation, opt.log_timings) << '\n';
  if (a.log_out.empty())
    std::cerr << log.str();
  else
    write_file(a.log_out, log.str());

  std::cout << "status " << to_string(s.status) << '\n';
  if (s.has_design) std::cout << "cost " << detail::format_number(s.cost) << '\n';
  std::cout << "iterations " << s.iterations << '\n';
  std::cout << "gap " << (s.gap ? detail::fixed(*s.gap, 4) : std::string("-")) << '\n';
  if (opt.log_timings) std::cout << "seconds " << detail::fixed(s.seconds, 3) << '\n';
  if (!a.design_out.empty() && s.has_design) write_file(a.design_out, to_text(aug, s.design));
  return exit_code(s.status);
}

struct GenArgs {
  int nodes = 20, terminals = 5, arcs = 90;
  std::string capacities = "uniform";
  std::int64_t capacity = 0;
  std::uint64_t seed = 1;
  int k = 0, kp = 0;
  std::string out;
};

int run_gen(const GenArgs& a) {
  GeneratorOptions o;
  o.nodes = a.nodes;
  o.terminals = a.terminals;
  o.arcs = a.arcs;
  o.capacities = a.capacities == "random" ? CapacityMode::Random : CapacityMode::Uniform;
  o.uniform_capacity = a.capacity;
  o.seed = a.seed;
  o.k = a.k;
  o.k_protected = a.kp;
  Instance inst = generate(o);
  const std::string text =
      to_text(inst, "generated " + size_label(inst) + " capacities=" + a.capacities + " seed=" + std::to_string(a.seed));
  if (a.out.empty())
    std::cout << text;
  else
    write_file(a.out, text);
  return kExitOptimal;
}

int run_verify(const std::string& instance_path, const std::string& design_path, bool reverse) {
  const AugmentedInstance aug = augment(read_instance(instance_path, ParseOptions{reverse}));
  const Design design = read_design(design_path, aug);
  const int protections = protected_count(aug, design);
  std::cout << "cost " << detail::format_number(design_cost(aug, design)) << '\n';
  if (protections > aug.k_protected()) {
    std::cout << "verified no\nreason " << protections << " protected arcs exceed k' = " << aug.k_protected() << '\n';
    return kExitInfeasible;
  }
  SurvivabilityReport r = is_survivable(aug, design);
  std::cout << "scenarios " << r.scenarios << '\n';
  if (r.survivable) {
    std::cout << "verified yes\n";
    return kExitOptimal;
  }
  std::cout << "verified no\nwitness";
  for (ArcId a : r.witness) {
    const Arc& arc = aug.arcs[static_cast<std::size_t>(a)];
    std::cout << ' ' << aug.label(arc.tail) << "->" << aug.label(arc.head);
  }
  std::cout << "\nflow " << r.min_flow << '\n';
  return kExitInfeasible;
}

struct BenchArgs {
  std::string dir;
  int k_min = 1, k_max = 3, kp_min = 0, kp_max = 0;
  std::string out;
  std::string table_out;
  std::string log_out;
  std::string designs_out;
  std::vector<std::string> formulations{"bilevel", "cutset", "flow"};
  double time_limit = 2000;
  std::string strengthen = "on";
  bool no_timings = false;
};

int run_bench_command(const BenchArgs& a) {
  namespace fs = std::filesystem;
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(a.dir))
    if (entry.is_regular_file() && entry.path().extension() == ".cprsnp") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  if (files.empty()) throw InputError("no .cprsnp files in " + a.dir);

  std::vector<NamedInstance> instances;
  for (const auto& f : files) {
    Instance inst = read_instance(f.string());
    instances.push_back({size_label(inst), std::move(inst)});
  }
  BenchOptions opt;
  opt.formulations.clear();
  for (const auto& name : a.formulations) {
    auto f = parse_formulation(name);
    if (!f) throw InputError("unknown formulation '" + name + "'");
    opt.formulations.push_back(*f);
  }
  opt.k_min = a.k_min;
  opt.k_max = a.k_max;
  opt.kp_min = a.kp_min;
  opt.kp_max = a.kp_max;
  opt.engine.time_limit_s = a.time_limit;
  opt.engine.strengthen = a.strengthen == "on";
  opt.engine.log_timings = !a.no_timings;
  opt.timings = !a.no_timings;

  std::ostringstream log;
  auto rows = run_bench(instances, opt, &log);
  std::ostringstream csv, table;
  write_csv(csv, rows, opt);
  write_table(table, rows, opt);
  if (a.out.empty())
    std::cout << csv.str();
  else
    write_file(a.out, csv.str());
  if (!a.table_out.empty()) write_file(a.table_out, table.str());
  std::cout << table.str();
  if (!a.log_out.empty()) write_file(a.log_out, log.str());
  if (!a.designs_out.empty()) {
    std::ostringstream designs;
    for (const auto& row : rows)
      for (const auto& c : row.cells)
        designs << "c instance=" << row.instance << " k=" << row.k << " kp=" << row.k_protected
                << " formulation=" << to_string(c.formulation) << '\n'
                << c.design;
    write_file(a.designs_out, designs.str());
  }
  bool consistent = std::all_of(rows.begin(), rows.end(), [](const BenchRow& r) { return r.consistent(); });
  return consistent ? kExitOptimal : kExitInfeasible;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact solver toolkit for capacitated protected rooted survivable network design"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  auto* solve_cmd = app.add_subcommand("solve", "Solve an instance by constraints-and-columns generation");
  solve_cmd->add_option("--instance", solve_args.instance, "Instance file")->required()->check(CLI::ExistingFile);
  solve_cmd->add_option("--formulation", solve_args.formulation, "cutset | flow | bilevel")
      ->check(CLI::IsMember({"cutset", "flow", "bilevel"}));
  solve_cmd->add_option("--time-limit", solve_args.time_limit, "Time limit in seconds")->check(CLI::PositiveNumber);
  solve_cmd->add_option("--strengthen", solve_args.strengthen, "Extreme-point strengthening (bilevel)")
      ->check(CLI::IsMember({"on", "off"}));
  solve_cmd->add_option("--design-out", solve_args.design_out, "Write the design here");
  solve_cmd->add_option("--log", solve_args.log_out, "Write the iteration log here instead of stderr");
  solve_cmd->add_option("--k", solve_args.k, "Override the failure budget");
  solve_cmd->add_option("--kp", solve_args.kp, "Override the protection budget");
  solve_cmd->add_option("--seed", solve_args.seed, "Seed recorded in the log");
  solve_cmd->add_flag("--reverse", solve_args.reverse, "Reverse every arc on load");
  solve_cmd->add_flag("--no-timings", solve_args.no_timings, "Omit wall-clock values from the outputs");

  GenArgs gen_args;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a random instance");
  gen_cmd->add_option("--nodes", gen_args.nodes, "Number of vertices");
  gen_cmd->add_option("--terminals", gen_args.terminals, "Number of terminals");
  gen_cmd->add_option("--arcs", gen_args.arcs, "Number of arcs");
  gen_cmd->add_option("--capacities", gen_args.capacities, "uniform | random")->check(CLI::IsMember({"uniform", "random"}));
  gen_cmd->add_option("--capacity", gen_args.capacity, "Uniform capacity value (default ceil(|T|/2))");
  gen_cmd->add_option("--seed", gen_args.seed, "Random seed");
  gen_cmd->add_option("--k", gen_args.k, "Failure budget written to the file");
  gen_cmd->add_option("--kp", gen_args.kp, "Protection budget written to the file");
  gen_cmd->add_option("--out", gen_args.out, "Output file (default stdout)");

  std::string verify_instance, verify_design;
  bool verify_reverse = false;
  auto* verify_cmd = app.add_subcommand("verify", "Check a design by enumerating every failure scenario");
  verify_cmd->add_option("--instance", verify_instance, "Instance file")->required()->check(CLI::ExistingFile);
  verify_cmd->add_option("--design", verify_design, "Design file")->required()->check(CLI::ExistingFile);
  verify_cmd->add_flag("--reverse", verify_reverse, "Reverse every arc on load");

  BenchArgs bench_args;
  auto* bench_cmd = app.add_subcommand("bench", "Run every formulation over a directory of instances");
  bench_cmd->add_option("--dir", bench_args.dir, "Directory of .cprsnp files")->required()->check(CLI::ExistingDirectory);
  bench_cmd->add_option("--k-min", bench_args.k_min, "Smallest k");
  bench_cmd->add_option("--k-max", bench_args.k_max, "Largest k");
  bench_cmd->add_option("--kp-min", bench_args.kp_min, "Smallest k'");
  bench_cmd->add_option("--kp-max", bench_args.kp_max, "Largest k'");
  bench_cmd->add_option("--formulations", bench_args.formulations, "Formulations, in column order")
      ->check(CLI::IsMember({"cutset", "flow", "bilevel"}));
  bench_cmd->add_option("--time-limit", bench_args.time_limit, "Time limit per cell in seconds")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--strengthen", bench_args.strengthen, "Extreme-point strengthening (bilevel)")
      ->check(CLI::IsMember({"on", "off"}));
  bench_cmd->add_option("--out", bench_args.out, "CSV report (default stdout)");
  bench_cmd->add_option("--table", bench_args.table_out, "Aligned text table");
  bench_cmd->add_option("--log", bench_args.log_out, "Iteration log");
  bench_cmd->add_option("--designs", bench_args.designs_out, "Designs of every cell");
  bench_cmd->add_flag("--no-timings", bench_args.no_timings, "Report n/a instead of wall-clock values");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (*solve_cmd) return run_solve(solve_args);
    if (*gen_cmd) return run_gen(gen_args);
    if (*verify_cmd) return run_verify(verify_instance, verify_design, verify_reverse);
    if (*bench_cmd) return run_bench_command(bench_args);
  } catch (const cprsnp::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}
