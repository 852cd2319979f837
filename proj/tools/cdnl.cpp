// Command line front end: solve one instance (program or plain-nogood mode)
// or run the benchmark harness over a directory.
//
// Exit codes: 10 satisfiable, 20 unsatisfiable, 30 unknown (limit hit),
// 0 info commands, 1 usage or input errors, 2 oracle mismatch.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cdnl/cdnl.hpp"

namespace {

constexpr int kExitSat = 10;
constexpr int kExitUnsat = 20;
constexpr int kExitUnknown = 30;
constexpr int kExitInfo = 0;
constexpr int kExitUsage = 1;
constexpr int kExitOracleMismatch = 2;

struct SolveArgs {
  std::string file;
  std::string heuristic = "first";
  std::string mode = "program";
  std::string script;
  uint64_t seed = 0;
  bool stats = false;
  bool trace = false;
  bool oracle = false;
  std::string restarts = "off";
  uint64_t max_conflicts = 0;
  double time_limit = 0.0;
  std::string dump_graph;
  bool dump_nogoods = false;
};

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string format_nogood(const std::vector<cdnl::Lit>& lits,
                          const cdnl::VarNamer& names) {
  std::string out = "{";
  for (size_t i = 0; i < lits.size(); ++i) {
    if (i) out += ", ";
    out += cdnl::format_lit(lits[i], names);
  }
  return out + "}";
}

// "F p, T q, T r" -> literals; names resolved through the given lookup.
std::vector<cdnl::Lit> parse_script(
    const std::string& text,
    const std::function<std::optional<cdnl::Var>(const std::string&)>& lookup) {
  std::vector<cdnl::Lit> lits;
  size_t start = 0;
  while (start <= text.size()) {
    size_t comma = text.find(',', start);
    std::string piece = text.substr(
        start, comma == std::string::npos ? std::string::npos : comma - start);
    std::istringstream in(piece);
    std::string sign, name, extra;
    if (!(in >> sign >> name) || (sign != "T" && sign != "F") || (in >> extra))
      throw std::runtime_error("malformed script literal '" + piece + "'");
    auto var = lookup(name);
    if (!var) throw std::runtime_error("unknown script name '" + name + "'");
    lits.push_back(sign == "T" ? cdnl::Lit::T(*var) : cdnl::Lit::F(*var));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return lits;
}

bool parse_restarts(const std::string& text, cdnl::RestartPolicy& policy) {
  if (text == "off") {
    policy.enabled = false;
    return true;
  }
  if (text.rfind("geom:", 0) == 0) {
    double base, factor;
    if (std::sscanf(text.c_str() + 5, "%lf,%lf", &base, &factor) == 2 &&
        base >= 1 && factor >= 1) {
      policy = {true, base, factor};
      return true;
    }
  }
  return false;
}

void print_stats(const cdnl::ConflictStats& s) {
  std::cout << "stat conflicts=" << s.conflicts << "\n"
            << "stat decisions=" << s.decisions << "\n"
            << "stat propagations=" << s.propagations << "\n"
            << "stat restarts=" << s.restarts << "\n"
            << "stat loop_nogoods=" << s.loop_nogoods << "\n"
            << "stat avg_nogood_len=" << cdnl::format_avg(s.avg_nogood_len()) << "\n"
            << "stat avg_backjump=" << cdnl::format_avg(s.avg_backjump()) << "\n"
            << "stat avg_res_steps=" << cdnl::format_avg(s.avg_resolution_steps())
            << "\n";
}

int report(const cdnl::SolveOutcome& outcome, const SolveArgs& args,
           const std::vector<std::string>& answer_names,
           const cdnl::VarNamer& names) {
  switch (outcome.status) {
    case cdnl::SolveStatus::Sat: {
      std::cout << "ANSWER:";
      for (const auto& name : answer_names) std::cout << " " << name;
      std::cout << "\n";
      break;
    }
    case cdnl::SolveStatus::Unsat:
      std::cout << "UNSATISFIABLE\n";
      break;
    case cdnl::SolveStatus::Unknown:
      std::cout << "UNKNOWN\n";
      break;
  }
  if (args.stats) print_stats(outcome.stats);
  if (!args.dump_graph.empty()) {
    std::ofstream out(args.dump_graph);
    if (!out) {
      std::cerr << "cannot write " << args.dump_graph << "\n";
      return kExitUsage;
    }
    if (outcome.first_conflict_graph)
      out << outcome.first_conflict_graph->to_text(names);
    else
      out << "conflict-graph: none\n";
  }
  switch (outcome.status) {
    case cdnl::SolveStatus::Sat: return kExitSat;
    case cdnl::SolveStatus::Unsat: return kExitUnsat;
    default: return kExitUnknown;
  }
}

int run_solve_program(const SolveArgs& args, const std::string& text) {
  cdnl::Program prog;
  try {
    prog = cdnl::parse_program(text);
  } catch (const cdnl::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }
  cdnl::VarNamer names = [&prog](cdnl::Var v) { return prog.var_name(v); };

  if (args.dump_nogoods) {
    auto nogoods = cdnl::completion_nogoods(prog);
    for (size_t i = 0; i < nogoods.size(); ++i)
      std::cout << "#" << i << " " << format_nogood(nogoods[i], names) << "\n";
    return kExitInfo;
  }

  cdnl::SolverConfig cfg;
  cfg.heuristic = *cdnl::heuristic_from_name(args.heuristic);
  cfg.seed = args.seed;
  cfg.max_conflicts = args.max_conflicts;
  cfg.time_limit_s = args.time_limit;
  cfg.capture_first_conflict_graph = !args.dump_graph.empty();
  if (!parse_restarts(args.restarts, cfg.restarts)) {
    std::cerr << "bad --restarts value\n";
    return kExitUsage;
  }
  if (!args.script.empty()) {
    try {
      cfg.script = parse_script(args.script, [&](const std::string& n) {
        return prog.atom_id(n);
      });
    } catch (const std::exception& e) {
      std::cerr << e.what() << "\n";
      return kExitUsage;
    }
  }

  cdnl::Solver solver(prog, cfg);
  uint64_t conflict_no = 0;
  if (args.trace)
    solver.hooks.on_conflict = [&](const cdnl::ConflictEvent& ev) {
      std::cout << "conflict " << ++conflict_no << ": nogood="
                << format_nogood(ev.result.nogood, names)
                << " k=" << ev.result.backjump_level
                << " steps=" << ev.result.resolution_steps << "\n";
    };

  cdnl::SolveOutcome outcome;
  try {
    outcome = solver.solve();
  } catch (const cdnl::ScriptError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }

  std::vector<std::string> answer_names;
  for (cdnl::Var a : outcome.answer) answer_names.push_back(prog.atom_name(a));

  if (args.oracle) {
    std::vector<std::vector<cdnl::Var>> sets;
    try {
      sets = cdnl::oracle::answer_sets(prog);
    } catch (const cdnl::oracle::BoundExceeded& e) {
      std::cerr << e.what() << "\n";
      return kExitUsage;
    }
    if (outcome.status == cdnl::SolveStatus::Sat) {
      bool found = false;
      for (const auto& x : sets) {
        std::vector<std::string> visible;
        for (cdnl::Var a : x)
          if (!prog.atoms[a].hidden) visible.push_back(prog.atom_name(a));
        if (visible == answer_names) found = true;
      }
      if (!found) {
        std::cerr << "oracle mismatch: reported answer is not an answer set\n";
        return kExitOracleMismatch;
      }
    } else if (outcome.status == cdnl::SolveStatus::Unsat && !sets.empty()) {
      std::cerr << "oracle mismatch: program has answer sets\n";
      return kExitOracleMismatch;
    }
  }

  return report(outcome, args, answer_names, names);
}

int run_solve_nogoods(const SolveArgs& args, const std::string& text) {
  cdnl::NogoodFile file;
  try {
    file = cdnl::parse_nogood_file(text);
  } catch (const cdnl::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }
  cdnl::VarNamer names = [&file](cdnl::Var v) { return file.var_names[v]; };

  if (args.dump_nogoods) {
    for (size_t i = 0; i < file.nogoods.size(); ++i)
      std::cout << "#" << i << " " << format_nogood(file.nogoods[i], names) << "\n";
    return kExitInfo;
  }

  cdnl::SolverConfig cfg;
  cfg.heuristic = *cdnl::heuristic_from_name(args.heuristic);
  cfg.seed = args.seed;
  cfg.max_conflicts = args.max_conflicts;
  cfg.time_limit_s = args.time_limit;
  cfg.capture_first_conflict_graph = !args.dump_graph.empty();
  if (!parse_restarts(args.restarts, cfg.restarts)) {
    std::cerr << "bad --restarts value\n";
    return kExitUsage;
  }
  cfg.script = file.decisions;
  if (!args.script.empty()) {  // the flag overrides decide: lines
    try {
      cfg.script = parse_script(args.script,
                                [&](const std::string& n) -> std::optional<cdnl::Var> {
                                  for (cdnl::Var v = 0; v < file.var_names.size(); ++v)
                                    if (file.var_names[v] == n) return v;
                                  return std::nullopt;
                                });
    } catch (const std::exception& e) {
      std::cerr << e.what() << "\n";
      return kExitUsage;
    }
  }

  uint32_t num_vars = static_cast<uint32_t>(file.var_names.size());
  cdnl::Solver solver(num_vars, file.nogoods, cfg);
  uint64_t conflict_no = 0;
  if (args.trace)
    solver.hooks.on_conflict = [&](const cdnl::ConflictEvent& ev) {
      std::cout << "conflict " << ++conflict_no << ": nogood="
                << format_nogood(ev.result.nogood, names)
                << " k=" << ev.result.backjump_level
                << " steps=" << ev.result.resolution_steps << "\n";
    };

  cdnl::SolveOutcome outcome;
  try {
    outcome = solver.solve();
  } catch (const cdnl::ScriptError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }

  std::vector<std::string> answer_names;
  for (cdnl::Var v : outcome.answer) answer_names.push_back(file.var_names[v]);

  if (args.oracle) {
    if (num_vars > 20) {
      std::cerr << "oracle bound exceeded\n";
      return kExitUsage;
    }
    bool any_solution = false;
    for (uint64_t bits = 0; bits < (1ull << num_vars) && !any_solution; ++bits) {
      std::vector<bool> truth(num_vars);
      for (uint32_t v = 0; v < num_vars; ++v) truth[v] = (bits >> v) & 1;
      bool ok = true;
      for (const auto& ng : file.nogoods)
        if (cdnl::oracle::holds_in(ng, truth)) {
          ok = false;
          break;
        }
      any_solution = ok;
    }
    if (outcome.status == cdnl::SolveStatus::Sat && !any_solution) {
      std::cerr << "oracle mismatch: no solution exists\n";
      return kExitOracleMismatch;
    }
    if (outcome.status == cdnl::SolveStatus::Unsat && any_solution) {
      std::cerr << "oracle mismatch: a solution exists\n";
      return kExitOracleMismatch;
    }
  }

  return report(outcome, args, answer_names, names);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"conflict-driven nogood learning solver for ground normal programs"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  CLI::App* solve = app.add_subcommand("solve", "solve one instance");
  solve->add_option("file", solve_args.file, "instance file (.lp or .ng)")
      ->required();
  solve->add_option("--heuristic", solve_args.heuristic,
                    "antecedent selection: first|short|lex|avg|res|active|prop")
      ->check(CLI::IsMember(
          {"first", "short", "lex", "avg", "res", "active", "prop"}));
  solve->add_option("--mode", solve_args.mode, "input kind: program|nogoods")
      ->check(CLI::IsMember({"program", "nogoods"}));
  solve->add_option("--script", solve_args.script,
                    "scripted decisions, e.g. \"F p, T q, T r\"");
  solve->add_option("--seed", solve_args.seed, "seed (reserved; runs are deterministic)");
  solve->add_flag("--stats", solve_args.stats, "print a stat block");
  solve->add_flag("--trace", solve_args.trace, "print one line per conflict");
  solve->add_flag("--oracle", solve_args.oracle,
                  "cross-check the outcome against brute force");
  solve->add_option("--restarts", solve_args.restarts, "off|geom:BASE,FACTOR");
  solve->add_option("--max-conflicts", solve_args.max_conflicts,
                    "give up after this many conflicts");
  solve->add_option("--time-limit", solve_args.time_limit,
                    "wall-clock limit in seconds, checked at conflicts");
  solve->add_option("--dump-graph", solve_args.dump_graph,
                    "write the first conflict's graph to this file");
  solve->add_flag("--dump-nogoods", solve_args.dump_nogoods,
                  "print the input nogoods and exit");

  std::string bench_dir;
  cdnl::BenchOptions bench_opts;
  std::string bench_heuristics = "first,short,lex,avg,res,active,prop";
  std::string bench_time_mode = "virtual";
  std::string bench_out;
  CLI::App* bench = app.add_subcommand("bench", "run a directory of instances");
  bench->add_option("dir", bench_dir, "directory with .lp/.ng files")->required();
  bench->add_option("--heuristics", bench_heuristics, "comma separated list");
  bench->add_option("--shuffles", bench_opts.shuffles, "shuffled runs per instance");
  bench->add_option("--seed", bench_opts.seed, "base seed");
  bench->add_option("--time-limit", bench_opts.time_limit_s,
                    "per-run limit in seconds (also the timeout penalty)");
  bench->add_option("--max-conflicts", bench_opts.max_conflicts, "per-run limit");
  bench->add_option("--time-mode", bench_time_mode,
                    "virtual|wall (virtual is deterministic)")
      ->check(CLI::IsMember({"virtual", "wall"}));
  bench->add_option("--out", bench_out, "CSV output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? kExitInfo : kExitUsage;
  }

  if (solve->parsed()) {
    auto text = read_file(solve_args.file);
    if (!text) {
      std::cerr << "cannot read " << solve_args.file << "\n";
      return kExitUsage;
    }
    if (solve_args.mode == "program") return run_solve_program(solve_args, *text);
    return run_solve_nogoods(solve_args, *text);
  }

  // bench
  bench_opts.heuristics.clear();
  std::istringstream hs(bench_heuristics);
  std::string h;
  while (std::getline(hs, h, ',')) {
    auto kind = cdnl::heuristic_from_name(h);
    if (!kind) {
      std::cerr << "unknown heuristic '" << h << "'\n";
      return kExitUsage;
    }
    bench_opts.heuristics.push_back(*kind);
  }
  bench_opts.time_mode =
      bench_time_mode == "wall" ? cdnl::TimeMode::Wall : cdnl::TimeMode::Virtual;
  if (!std::filesystem::is_directory(bench_dir)) {
    std::cerr << "not a directory: " << bench_dir << "\n";
    return kExitUsage;
  }
  std::string csv = cdnl::run_suite(bench_dir, bench_opts);
  if (bench_out.empty()) {
    std::cout << csv;
  } else {
    std::ofstream out(bench_out);
    if (!out) {
      std::cerr << "cannot write " << bench_out << "\n";
      return kExitUsage;
    }
    out << csv;
  }
  return kExitInfo;
}
