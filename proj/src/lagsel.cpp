#include "otsclust/lagsel.hpp"

#include <algorithm>
#include <cmath>

#include "otsclust/estimation.hpp"
#include "otsclust/parallel.hpp"

namespace otsclust {

void LagSelectionConfig::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0))
    raise(Errc::config_error, "significance level must lie in (0, 1)");
  if (max_lag < 1) raise(Errc::config_error, "maximum lag must be at least 1");
}

double normal_quantile(double theta) {
  if (!(theta > 0.0 && theta < 1.0))
    raise(Errc::config_error, "normal quantile argument must lie in (0, 1)");

  // Acklam's rational approximation, then one Halley step against erfc
  // to push the absolute error well below 1e-9.
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double p_low = 0.02425;

  double x;
  if (theta < p_low) {
    const double q = std::sqrt(-2.0 * std::log(theta));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (theta <= 1.0 - p_low) {
    const double q = theta - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log(1.0 - theta));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }

  const double e = 0.5 * std::erfc(-x / std::sqrt(2.0)) - theta;
  const double u = e * std::sqrt(2.0 * M_PI) * std::exp(x * x / 2.0);
  return x - u / (1.0 + x * u / 2.0);
}

std::vector<double> kappa_test_statistics(const OrdinalSeries& series, int max_lag) {
  if (static_cast<std::size_t>(max_lag) >= series.length())
    raise(Errc::lag_too_large, "max lag too large for series '" + series.id + "'");

  const auto marginal = estimate_cumulative_marginal(series);
  const auto features = marginal_features(marginal);
  if (features.disp <= 0.0)
    raise(Errc::zero_dispersion, "dependence test undefined on constant series '" + series.id +
                                     "'");

  std::vector<double> kappas(static_cast<std::size_t>(max_lag));
  for (int l = 1; l <= max_lag; ++l)
    kappas[static_cast<std::size_t>(l - 1)] = ordinal_kappa(series, l);
  const auto partial = partial_kappas(kappas);

  double denom_sq = 0.0;
  const int n = marginal.n;
  for (int k = 0; k < n; ++k) {
    for (int l = 0; l < n; ++l) {
      const double f_min = marginal.f[static_cast<std::size_t>(std::min(k, l))];
      const double term =
          f_min - marginal.f[static_cast<std::size_t>(k)] * marginal.f[static_cast<std::size_t>(l)];
      denom_sq += term * term;
    }
  }
  const double denom = 2.0 * std::sqrt(denom_sq);
  const double sqrt_t = std::sqrt(static_cast<double>(series.length()));
  const double shift = 1.0 / static_cast<double>(series.length());

  std::vector<double> stats(partial.size());
  for (std::size_t k = 0; k < partial.size(); ++k)
    stats[k] = std::abs(sqrt_t * features.disp * (partial[k] + shift) / denom);
  return stats;
}

double kappa_test_statistic(const OrdinalSeries& series, int lag) {
  return kappa_test_statistics(series, lag).back();
}

LagSelectionReport select_lags(const std::vector<OrdinalSeries>& data,
                               const LagSelectionConfig& config, unsigned threads) {
  config.validate();
  if (data.empty()) raise(Errc::config_error, "lag selection needs a nonempty data set");
  for (const auto& s : data) {
    if (s.length() <= static_cast<std::size_t>(config.max_lag))
      raise(Errc::lag_too_large,
            "series '" + s.id + "' shorter than the requested maximum lag window");
  }

  // s * L_max tests run simultaneously; Bonferroni divides by that count.
  const double divisor = config.correction == Correction::bonferroni
                             ? static_cast<double>(data.size() * static_cast<std::size_t>(config.max_lag))
                             : 1.0;
  const double corrected = config.alpha / divisor;
  const double critical = normal_quantile(1.0 - corrected / 2.0);

  LagSelectionReport report;
  report.corrected_alpha = corrected;
  report.per_series_max_lag.assign(data.size(), 0);
  std::vector<std::string> skipped(data.size());

  parallel_for(
      data.size(),
      [&](std::size_t i) {
        try {
          const auto stats = kappa_test_statistics(data[i], config.max_lag);
          int max_significant = 0;
          for (int l = 1; l <= config.max_lag; ++l)
            if (stats[static_cast<std::size_t>(l - 1)] > critical) max_significant = l;
          report.per_series_max_lag[i] = max_significant;
        } catch (const Error& e) {
          if (e.code() != Errc::zero_dispersion) throw;
          skipped[i] = data[i].id;
        }
      },
      threads);

  for (auto& id : skipped)
    if (!id.empty()) report.skipped.push_back(std::move(id));

  report.chosen_max_lag = 0;
  for (int l : report.per_series_max_lag) report.chosen_max_lag = std::max(report.chosen_max_lag, l);

  if (report.chosen_max_lag == 0) {
    report.fallback = true;
    report.lag_set = LagSet::contiguous(1);
  } else {
    report.lag_set = LagSet::contiguous(report.chosen_max_lag);
  }
  return report;
}

}  // namespace otsclust
