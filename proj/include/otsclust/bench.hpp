#pragma once

// Monte-Carlo benchmark harness over the scenario catalog: repeated
// simulation trials, clustering per (metric, m) cell, and aggregation
// into mean ARIF/JIF (scenarios with a complete ground truth) or
// correct-classification rate curves plus AUFC (scenarios with an
// isolated series and a membership cutoff).

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "otsclust/core.hpp"
#include "otsclust/metrics.hpp"

namespace otsclust {

struct BenchConfig {
  int scenario = 1;
  std::optional<std::size_t> length;  // empty only for scenario 5
  std::vector<Metric> metrics = {Metric::d1};
  std::vector<double> m_grid = {1.2, 1.4, 1.6, 1.8, 2.0};
  int trials = 50;
  std::uint64_t seed = 0;
  int restarts = 5;
  int max_iter = 100;
  std::optional<LagSet> lags;      // defaults to the scenario's lag set
  std::optional<double> cutoff;    // enables the rate criterion (scenarios 6/7)
  unsigned threads = 0;

  void validate() const;
};

/// The scenario's canonical lag set ({1} for 3, {1,2,3} for 4/5, else {1,2}).
LagSet default_scenario_lags(int scenario_id);

/// Regular cluster count of a scenario (4, 6 or 2).
int scenario_cluster_count(int scenario_id);

struct TrialRecord {
  int trial = 0;
  Metric metric = Metric::d1;
  double fuzziness = 0.0;
  double arif = 0.0;
  double jif = 0.0;
  bool success = false;  // cutoff mode
};

struct BenchCell {
  Metric metric = Metric::d1;
  double fuzziness = 0.0;
  double mean_arif = 0.0;
  double mean_jif = 0.0;
  double rate = 0.0;  // cutoff mode
};

struct BenchResult {
  bool cutoff_mode = false;
  std::vector<BenchCell> cells;          // metric-major, then m-grid order
  std::map<std::string, double> aufc;    // per metric name, cutoff mode only
  std::vector<TrialRecord> trial_records;

  const BenchCell& cell(Metric metric, double fuzziness) const;
};

BenchResult run_bench(const BenchConfig& config);

}  // namespace otsclust
