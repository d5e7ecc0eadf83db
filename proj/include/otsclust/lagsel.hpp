#pragma once

// Automatic choice of the lag set: every series is tested for serial
// dependence at lags 1..L_max through an asymptotic test on the partial
// ordinal Cohen's kappa, the per-series maximum significant lags are
// combined by a max, and the result is the contiguous set {1..L*}.

#include <cstddef>
#include <string>
#include <vector>

#include "otsclust/core.hpp"

namespace otsclust {

enum class Correction { bonferroni, none };

struct LagSelectionConfig {
  double alpha = 0.05;  // global significance level
  int max_lag = 5;
  Correction correction = Correction::bonferroni;

  void validate() const;
};

struct LagSelectionReport {
  std::vector<int> per_series_max_lag;  // 0 when nothing is significant
  std::vector<std::string> skipped;     // constant series, excluded with a warning
  int chosen_max_lag = 0;               // L*
  LagSet lag_set;                       // {1..L*}, or {1} fallback
  bool fallback = false;                // no series had any significant lag
  double corrected_alpha = 0.0;
};

/// Quantile of the standard normal distribution; absolute error < 1e-9.
double normal_quantile(double theta);

/// Absolute standardized statistic for serial dependence at one lag,
///   | sqrt(T) disp (kappa_p(l) + 1/T) / (2 sqrt(sum_{k,l} (f_min - f_k f_l)^2)) |.
std::vector<double> kappa_test_statistics(const OrdinalSeries& series, int max_lag);

double kappa_test_statistic(const OrdinalSeries& series, int lag);

LagSelectionReport select_lags(const std::vector<OrdinalSeries>& data,
                               const LagSelectionConfig& config, unsigned threads = 0);

}  // namespace otsclust
