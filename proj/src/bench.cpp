#include "otsclust/bench.hpp"

#include <cmath>

#include "otsclust/clustering.hpp"
#include "otsclust/estimation.hpp"
#include "otsclust/eval.hpp"
#include "otsclust/parallel.hpp"
#include "otsclust/simgen.hpp"

namespace otsclust {

void BenchConfig::validate() const {
  if (scenario < 1 || scenario > 7)
    raise(Errc::unknown_scenario, "scenario id must lie in 1..7");
  if (trials < 1) raise(Errc::config_error, "benchmark needs at least one trial");
  if (metrics.empty()) raise(Errc::config_error, "benchmark needs at least one metric");
  if (m_grid.empty()) raise(Errc::config_error, "benchmark needs a nonempty m-grid");
  for (double m : m_grid)
    if (!(m > 1.0)) raise(Errc::config_error, "every fuzziness value must exceed 1");
  if (cutoff && (*cutoff <= 0.0 || *cutoff >= 1.0))
    raise(Errc::config_error, "cutoff must lie in (0, 1)");
  const bool isolated = scenario == 6 || scenario == 7;
  if (isolated && !cutoff)
    raise(Errc::config_error, "scenarios 6 and 7 are evaluated with a membership cutoff");
  if (!isolated && cutoff)
    raise(Errc::config_error, "the cutoff criterion needs an isolated-series scenario (6 or 7)");
  if (scenario != 5 && !length)
    raise(Errc::config_error, "fixed-length scenarios need a series length");
}

LagSet default_scenario_lags(int scenario_id) {
  switch (scenario_id) {
    case 3: return LagSet::contiguous(1);
    case 4:
    case 5: return LagSet::contiguous(3);
    default: return LagSet::contiguous(2);
  }
}

int scenario_cluster_count(int scenario_id) {
  switch (scenario_id) {
    case 4:
    case 5: return 6;
    case 6:
    case 7: return 2;
    default: return 4;
  }
}

const BenchCell& BenchResult::cell(Metric metric, double fuzziness) const {
  for (const auto& c : cells)
    if (c.metric == metric && c.fuzziness == fuzziness) return c;
  raise(Errc::config_error, "no benchmark cell for the requested (metric, m)");
}

BenchResult run_bench(const BenchConfig& config) {
  config.validate();
  const LagSet lags = config.lags ? *config.lags : default_scenario_lags(config.scenario);
  const int clusters = scenario_cluster_count(config.scenario);
  const bool cutoff_mode = config.cutoff.has_value();

  const std::size_t n_cells = config.metrics.size() * config.m_grid.size();
  const std::size_t n_trials = static_cast<std::size_t>(config.trials);

  std::vector<TrialRecord> records(n_trials * n_cells);

  parallel_for(
      n_trials,
      [&](std::size_t t) {
        const auto data = scenario(config.scenario, config.length, config.seed + t);

        // Reference labels as integers by first appearance ("none" kept
        // out; it only exists in cutoff mode).
        std::vector<int> reference;
        reference.reserve(data.labels.size());
        std::map<std::string, int> label_ids;
        for (const auto& label : data.labels)
          reference.push_back(
              label_ids.emplace(label, static_cast<int>(label_ids.size())).first->second);

        const auto reprs = build_reprs(data.series, lags, 1);

        std::size_t cell = 0;
        for (const Metric metric : config.metrics) {
          const DistanceMatrix matrix = pairwise_matrix(reprs, metric, 1);
          for (const double m : config.m_grid) {
            ClusterConfig cc;
            cc.clusters = clusters;
            cc.fuzziness = m;
            cc.max_iter = config.max_iter;
            cc.seed = config.seed + t;
            const FuzzyPartition part = cluster_with_restarts(matrix, cc, config.restarts, 1);

            TrialRecord& rec = records[t * n_cells + cell];
            rec.trial = static_cast<int>(t);
            rec.metric = metric;
            rec.fuzziness = m;
            if (cutoff_mode) {
              rec.success = correct_classification(part, data.labels, *config.cutoff);
            } else {
              rec.arif = arif(reference, part).value;
              rec.jif = jif(reference, part).value;
            }
            ++cell;
          }
        }
      },
      config.threads);

  BenchResult result;
  result.cutoff_mode = cutoff_mode;
  result.trial_records = std::move(records);
  result.cells.resize(n_cells);

  std::size_t cell = 0;
  for (const Metric metric : config.metrics) {
    for (const double m : config.m_grid) {
      BenchCell& out = result.cells[cell];
      out.metric = metric;
      out.fuzziness = m;
      for (std::size_t t = 0; t < n_trials; ++t) {
        const TrialRecord& rec = result.trial_records[t * n_cells + cell];
        out.mean_arif += rec.arif;
        out.mean_jif += rec.jif;
        out.rate += rec.success ? 1.0 : 0.0;
      }
      out.mean_arif /= static_cast<double>(n_trials);
      out.mean_jif /= static_cast<double>(n_trials);
      out.rate /= static_cast<double>(n_trials);
      ++cell;
    }
  }

  if (cutoff_mode && config.m_grid.size() >= 2) {
    for (std::size_t mi = 0; mi < config.metrics.size(); ++mi) {
      std::vector<double> rates(config.m_grid.size());
      for (std::size_t k = 0; k < config.m_grid.size(); ++k)
        rates[k] = result.cells[mi * config.m_grid.size() + k].rate;
      result.aufc[metric_name(config.metrics[mi])] = aufc(config.m_grid, rates);
    }
  }
  return result;
}

}  // namespace otsclust
