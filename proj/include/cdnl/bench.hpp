#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "cdnl/nogood_file.hpp"
#include "cdnl/program.hpp"
#include "cdnl/rng.hpp"
#include "cdnl/shuffle.hpp"
#include "cdnl/solve.hpp"
#include "cdnl/stats.hpp"

namespace cdnl {

// Benchmark harness: every instance in a directory is run under each
// heuristic and a number of seeded shuffles; one CSV data row per run, then
// summary rows. Metric summaries only average runs whose (instance, shuffle)
// cell completed under every heuristic.
struct BenchOptions {
  std::vector<HeuristicKind> heuristics{kAllHeuristics,
                                        kAllHeuristics + std::size(kAllHeuristics)};
  uint32_t shuffles = 5;
  uint64_t seed = 0;
  double time_limit_s = 0.0;   // 0 = none; also the timeout penalty
  uint64_t max_conflicts = 0;  // 0 = none
  TimeMode time_mode = TimeMode::Virtual;  // virtual keeps the CSV reproducible
};

inline constexpr const char* kBenchCsvHeader =
    "instance,class,heuristic,shuffle,status,time_s,conflicts,avg_nogood_len,"
    "avg_backjump,avg_res_steps";

namespace detail {

// class.map lines: `<instance-filename> <class>`; '%' comments. Instances
// without an entry use their filename stem.
inline std::map<std::string, std::string> load_class_map(
    const std::filesystem::path& dir) {
  std::map<std::string, std::string> classes;
  std::ifstream in(dir / "class.map");
  std::string line;
  while (std::getline(in, line)) {
    if (auto cut = line.find('%'); cut != std::string::npos) line.resize(cut);
    std::istringstream fields(line);
    std::string instance, cls;
    if (fields >> instance >> cls) classes[instance] = cls;
  }
  return classes;
}

inline std::string csv_avg(uint64_t sum, uint64_t conflicts) {
  if (conflicts == 0) return "NA";
  return format_fixed(static_cast<double>(sum) / static_cast<double>(conflicts), 2);
}

inline std::string opt_fixed(std::optional<double> v, int decimals) {
  if (!v) return "NA";
  return format_fixed(*v, decimals);
}

}  // namespace detail

inline std::string run_suite(const std::filesystem::path& dir,
                             const BenchOptions& opts) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    auto ext = entry.path().extension();
    if (ext == ".lp" || ext == ".ng") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  auto classes = detail::load_class_map(dir);

  std::string csv = std::string(kBenchCsvHeader) + "\n";
  std::vector<RunRecord> records;

  struct Row {
    RunRecord record;
    std::string status;
  };
  std::vector<Row> rows;

  for (size_t fi = 0; fi < files.size(); ++fi) {
    const auto& path = files[fi];
    std::ifstream in(path);
    if (!std::filesystem::is_regular_file(path) || !in) {
      csv += "#warning," + path.filename().string() + ",unreadable\n";
      continue;
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    std::string text = buffer.str();
    std::string name = path.filename().string();
    std::string cls;
    if (auto it = classes.find(name); it != classes.end())
      cls = it->second;
    else
      cls = path.stem().string();

    bool is_program = path.extension() == ".lp";
    Program base;
    NogoodFile ngf;
    try {
      if (is_program)
        base = parse_program(text);
      else
        ngf = parse_nogood_file(text);
    } catch (const ParseError& e) {
      csv += "#warning," + name + "," + e.what() + "\n";
      continue;
    }

    for (uint32_t shuffle = 0; shuffle < opts.shuffles; ++shuffle) {
      uint64_t run_seed = mix_seed(opts.seed, mix_seed(fi + 1, shuffle));
      Program shuffled;
      if (is_program) shuffled = shuffle_instance(base, run_seed);
      for (HeuristicKind h : opts.heuristics) {
        SolverConfig cfg;
        cfg.heuristic = h;
        cfg.seed = run_seed;
        cfg.max_conflicts = opts.max_conflicts;
        cfg.time_limit_s = opts.time_limit_s;
        cfg.time_mode = opts.time_mode;
        SolveOutcome outcome;
        try {
          if (is_program) {
            Solver solver(shuffled, cfg);
            outcome = solver.solve();
          } else {
            cfg.script = ngf.decisions;
            Solver solver(static_cast<uint32_t>(ngf.var_names.size()),
                          ngf.nogoods, cfg);
            outcome = solver.solve();
          }
        } catch (const ScriptError& e) {
          csv += "#warning," + name + "," + e.what() + "\n";
          continue;  // the cell stays incomplete and out of metric means
        }
        Row row;
        row.status = status_name(outcome.status);
        row.record.instance = name;
        row.record.cls = cls;
        row.record.heuristic = std::string(heuristic_name(h));
        row.record.shuffle = shuffle;
        row.record.completed = outcome.status != SolveStatus::Unknown;
        row.record.time_s = outcome.stats.elapsed_s;
        row.record.conflicts = outcome.stats.conflicts;
        row.record.sum_nogood_len = outcome.stats.sum_nogood_len;
        row.record.sum_backjump_len = outcome.stats.sum_backjump_len;
        row.record.sum_resolution_steps = outcome.stats.sum_resolution_steps;
        rows.push_back(std::move(row));
      }
    }
  }

  // eligibility: the (instance, shuffle) cell completed under every heuristic
  size_t per_cell = opts.heuristics.size();
  std::map<std::pair<std::string, uint32_t>, uint32_t> cell_completed;
  for (const Row& row : rows)
    if (row.record.completed)
      ++cell_completed[{row.record.instance, row.record.shuffle}];
  for (Row& row : rows)
    row.record.eligible =
        cell_completed[{row.record.instance, row.record.shuffle}] == per_cell;

  for (const Row& row : rows) {
    const RunRecord& r = row.record;
    csv += r.instance + "," + r.cls + "," + r.heuristic + "," +
           std::to_string(r.shuffle) + "," + row.status + "," +
           format_fixed(r.time_s, 6) + "," + std::to_string(r.conflicts) + "," +
           detail::csv_avg(r.sum_nogood_len, r.conflicts) + "," +
           detail::csv_avg(r.sum_backjump_len, r.conflicts) + "," +
           detail::csv_avg(r.sum_resolution_steps, r.conflicts) + "\n";
    records.push_back(r);
  }

  SummaryTable table = summarize(records, opts.time_limit_s);
  for (const SummaryRow& s : table.classes) {
    csv += "#class," + s.cls + "," + s.heuristic + "," + std::to_string(s.eligible) +
           "," + std::to_string(s.timeouts) + "," +
           detail::opt_fixed(s.mean_time, 6) + "," +
           detail::opt_fixed(s.mean_conflicts, 2) + "," +
           detail::opt_fixed(s.mean_nogood_len, 2) + "," +
           detail::opt_fixed(s.mean_backjump, 2) + "," +
           detail::opt_fixed(s.mean_res_steps, 2) + "\n";
  }
  for (const SummaryRow& s : table.overall) {
    csv += "#overall,," + s.heuristic + "," + std::to_string(s.eligible) + "," +
           std::to_string(s.timeouts) + "," + detail::opt_fixed(s.mean_time, 6) +
           "," + detail::opt_fixed(s.mean_conflicts, 2) + "," +
           detail::opt_fixed(s.mean_nogood_len, 2) + "," +
           detail::opt_fixed(s.mean_backjump, 2) + "," +
           detail::opt_fixed(s.mean_res_steps, 2) + "\n";
  }
  for (const SummaryRow& s : table.overall) {
    csv += "#penalized,," + s.heuristic + "," +
           format_fixed(s.penalized_time, 6) + "\n";
  }
  return csv;
}

}  // namespace cdnl
