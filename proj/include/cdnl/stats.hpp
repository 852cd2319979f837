#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cdnl/analyze.hpp"

namespace cdnl {

// Per-run solver metrics. Averages are exact integer ratios internally and
// only defined once a conflict was analyzed; conflicts terminating the run at
// decision level 0 are not counted.
struct ConflictStats {
  uint64_t conflicts = 0;
  uint64_t sum_nogood_len = 0;
  uint64_t sum_backjump_len = 0;
  uint64_t sum_resolution_steps = 0;
  uint64_t decisions = 0;
  uint64_t propagations = 0;
  uint64_t restarts = 0;
  uint64_t loop_nogoods = 0;
  double elapsed_s = 0.0;

  void record_conflict(const AnalyzeResult& r, uint32_t conflict_level) {
    ++conflicts;
    sum_nogood_len += r.nogood.size();
    sum_backjump_len += conflict_level - r.backjump_level;
    sum_resolution_steps += r.resolution_steps;
  }

  std::optional<double> avg_nogood_len() const { return avg(sum_nogood_len); }
  std::optional<double> avg_backjump() const { return avg(sum_backjump_len); }
  std::optional<double> avg_resolution_steps() const {
    return avg(sum_resolution_steps);
  }

 private:
  std::optional<double> avg(uint64_t sum) const {
    if (conflicts == 0) return std::nullopt;
    return static_cast<double>(sum) / static_cast<double>(conflicts);
  }
};

inline std::string format_fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  return buf;
}

// "NA" when undefined (no conflicts), else two decimals.
inline std::string format_avg(std::optional<double> v) {
  if (!v) return "NA";
  return format_fixed(*v, 2);
}

// One benchmark run, as consumed by summarize().
struct RunRecord {
  std::string instance;
  std::string cls;
  std::string heuristic;
  uint32_t shuffle = 0;
  bool completed = false;  // finished with SAT or UNSAT within the limits
  bool eligible = false;   // counts towards metric means (completed under
                           // every heuristic in the comparison)
  double time_s = 0.0;
  uint64_t conflicts = 0;
  uint64_t sum_nogood_len = 0;
  uint64_t sum_backjump_len = 0;
  uint64_t sum_resolution_steps = 0;
};

struct SummaryRow {
  std::string cls;  // class label; "overall" for the per-heuristic mean row
  std::string heuristic;
  uint64_t runs = 0;      // all runs in the group
  uint64_t eligible = 0;  // runs counted in metric means
  uint64_t timeouts = 0;  // runs not completed
  std::optional<double> mean_time;       // over completed runs
  std::optional<double> mean_conflicts;  // over eligible runs
  std::optional<double> mean_nogood_len;
  std::optional<double> mean_backjump;
  std::optional<double> mean_res_steps;
  double penalized_time = 0.0;  // time limit substituted per timeout
};

struct SummaryTable {
  std::vector<SummaryRow> classes;             // per (class, heuristic)
  std::vector<SummaryRow> overall;             // per heuristic, classes
                                               // weighted equally
};

// Per-class means over runs, plus an overall row per heuristic that weights
// classes equally (mean of class means, regardless of per-class run counts).
// The penalized time substitutes time_limit for each timeout.
inline SummaryTable summarize(const std::vector<RunRecord>& runs,
                              double time_limit) {
  struct Acc {
    uint64_t runs = 0, eligible = 0, completed = 0, timeouts = 0;
    double time_sum = 0.0;
    uint64_t conflicts_sum = 0;
    uint64_t metric_runs = 0;  // eligible runs with at least one conflict
    double len_sum = 0.0, backjump_sum = 0.0, steps_sum = 0.0;
  };

  std::vector<std::string> heuristic_order;
  std::map<std::string, std::map<std::string, Acc>> groups;  // class -> heuristic
  for (const RunRecord& r : runs) {
    if (std::find(heuristic_order.begin(), heuristic_order.end(), r.heuristic) ==
        heuristic_order.end())
      heuristic_order.push_back(r.heuristic);
    Acc& acc = groups[r.cls][r.heuristic];
    ++acc.runs;
    if (r.completed) {
      ++acc.completed;
      acc.time_sum += r.time_s;
    } else {
      ++acc.timeouts;
    }
    if (r.eligible) {
      ++acc.eligible;
      acc.conflicts_sum += r.conflicts;
      if (r.conflicts > 0) {
        ++acc.metric_runs;
        double n = static_cast<double>(r.conflicts);
        acc.len_sum += static_cast<double>(r.sum_nogood_len) / n;
        acc.backjump_sum += static_cast<double>(r.sum_backjump_len) / n;
        acc.steps_sum += static_cast<double>(r.sum_resolution_steps) / n;
      }
    }
  }

  SummaryTable table;
  for (const auto& [cls, per_heuristic] : groups) {
    for (const std::string& h : heuristic_order) {
      auto it = per_heuristic.find(h);
      if (it == per_heuristic.end()) continue;
      const Acc& a = it->second;
      SummaryRow row;
      row.cls = cls;
      row.heuristic = h;
      row.runs = a.runs;
      row.eligible = a.eligible;
      row.timeouts = a.timeouts;
      if (a.completed > 0) row.mean_time = a.time_sum / a.completed;
      if (a.eligible > 0)
        row.mean_conflicts =
            static_cast<double>(a.conflicts_sum) / static_cast<double>(a.eligible);
      if (a.metric_runs > 0) {
        double n = static_cast<double>(a.metric_runs);
        row.mean_nogood_len = a.len_sum / n;
        row.mean_backjump = a.backjump_sum / n;
        row.mean_res_steps = a.steps_sum / n;
      }
      row.penalized_time =
          a.runs == 0
              ? 0.0
              : (a.time_sum + static_cast<double>(a.timeouts) * time_limit) /
                    static_cast<double>(a.runs);
      table.classes.push_back(std::move(row));
    }
  }

  for (const std::string& h : heuristic_order) {
    SummaryRow row;
    row.cls = "overall";
    row.heuristic = h;
    uint64_t classes = 0;
    double time = 0, conflicts = 0, len = 0, backjump = 0, steps = 0, penalized = 0;
    uint64_t time_classes = 0, conflict_classes = 0, metric_classes = 0;
    for (const SummaryRow& c : table.classes) {
      if (c.heuristic != h) continue;
      ++classes;
      row.runs += c.runs;
      row.eligible += c.eligible;
      row.timeouts += c.timeouts;
      penalized += c.penalized_time;
      if (c.mean_time) {
        time += *c.mean_time;
        ++time_classes;
      }
      if (c.mean_conflicts) {
        conflicts += *c.mean_conflicts;
        ++conflict_classes;
      }
      if (c.mean_nogood_len) {
        len += *c.mean_nogood_len;
        backjump += *c.mean_backjump;
        steps += *c.mean_res_steps;
        ++metric_classes;
      }
    }
    if (classes == 0) continue;
    if (time_classes) row.mean_time = time / time_classes;
    if (conflict_classes) row.mean_conflicts = conflicts / conflict_classes;
    if (metric_classes) {
      row.mean_nogood_len = len / metric_classes;
      row.mean_backjump = backjump / metric_classes;
      row.mean_res_steps = steps / metric_classes;
    }
    row.penalized_time = penalized / static_cast<double>(classes);
    table.overall.push_back(std::move(row));
  }
  return table;
}

}  // namespace cdnl
