#include "otsclust/estimation.hpp"

#include <algorithm>
#include <cmath>

#include "otsclust/parallel.hpp"

namespace otsclust {

namespace {

void check_lag(const OrdinalSeries& series, int lag) {
  if (lag < 1 || static_cast<std::size_t>(lag) >= series.length())
    raise(Errc::lag_too_large, "lag " + std::to_string(lag) + " too large for series '" +
                                   series.id + "' of length " + std::to_string(series.length()));
}

/// Counts of lagged state pairs (x_k, x_{k+l}), (n+1) x (n+1) row-major.
std::vector<std::int64_t> pair_counts(const OrdinalSeries& series, int lag) {
  const int m = series.n() + 1;
  std::vector<std::int64_t> counts(static_cast<std::size_t>(m) * m, 0);
  const std::size_t pairs = series.length() - static_cast<std::size_t>(lag);
  for (std::size_t k = 0; k < pairs; ++k) {
    const int a = series.states[k];
    const int b = series.states[k + static_cast<std::size_t>(lag)];
    ++counts[static_cast<std::size_t>(a) * m + b];
  }
  return counts;
}

}  // namespace

CumulativeMarginal estimate_cumulative_marginal(const OrdinalSeries& series) {
  const int n = series.n();
  std::vector<std::int64_t> hist(static_cast<std::size_t>(n) + 1, 0);
  for (int s : series.states) ++hist[static_cast<std::size_t>(s)];

  CumulativeMarginal out;
  out.n = n;
  out.f.resize(static_cast<std::size_t>(n));
  const double inv_t = 1.0 / static_cast<double>(series.length());
  std::int64_t running = 0;
  for (int i = 0; i < n; ++i) {
    running += hist[static_cast<std::size_t>(i)];
    out.f[static_cast<std::size_t>(i)] = static_cast<double>(running) * inv_t;
  }
  return out;
}

CumulativeJoint estimate_cumulative_joint(const OrdinalSeries& series, int lag) {
  check_lag(series, lag);
  const int n = series.n();
  const int m = n + 1;
  const auto counts = pair_counts(series, lag);

  // 2-D prefix sums give f_ij(l) = #{x_k <= i, x_{k+l} <= j} / (T - l).
  std::vector<std::int64_t> prefix(static_cast<std::size_t>(m) * m, 0);
  for (int i = 0; i < m; ++i) {
    std::int64_t row = 0;
    for (int j = 0; j < m; ++j) {
      row += counts[static_cast<std::size_t>(i) * m + j];
      prefix[static_cast<std::size_t>(i) * m + j] =
          row + (i > 0 ? prefix[static_cast<std::size_t>(i - 1) * m + j] : 0);
    }
  }

  CumulativeJoint out;
  out.lag = lag;
  out.n = n;
  out.values.resize(static_cast<std::size_t>(n) * n);
  const double inv = 1.0 / static_cast<double>(series.length() - static_cast<std::size_t>(lag));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      out.values[static_cast<std::size_t>(i) * n + j] =
          static_cast<double>(prefix[static_cast<std::size_t>(i) * m + j]) * inv;
  return out;
}

MarginalPmf estimate_marginal_pmf(const OrdinalSeries& series) {
  const int n = series.n();
  std::vector<std::int64_t> hist(static_cast<std::size_t>(n) + 1, 0);
  for (int s : series.states) ++hist[static_cast<std::size_t>(s)];

  MarginalPmf out;
  out.n = n;
  out.p.resize(static_cast<std::size_t>(n) + 1);
  const double inv_t = 1.0 / static_cast<double>(series.length());
  for (int i = 0; i <= n; ++i)
    out.p[static_cast<std::size_t>(i)] = static_cast<double>(hist[static_cast<std::size_t>(i)]) * inv_t;
  return out;
}

JointPmf estimate_joint_pmf(const OrdinalSeries& series, int lag) {
  check_lag(series, lag);
  const auto counts = pair_counts(series, lag);

  JointPmf out;
  out.lag = lag;
  out.n = series.n();
  out.values.resize(counts.size());
  const double inv = 1.0 / static_cast<double>(series.length() - static_cast<std::size_t>(lag));
  for (std::size_t i = 0; i < counts.size(); ++i)
    out.values[i] = static_cast<double>(counts[i]) * inv;
  return out;
}

OrdinalFeatures marginal_features(const CumulativeMarginal& marginal) {
  const int n = marginal.n;
  const auto& f = marginal.f;

  OrdinalFeatures out;
  double sum_f = 0.0;
  for (int i = 0; i < n; ++i) {
    const double fi = f[static_cast<std::size_t>(i)];
    const double f_next = (i + 1 < n) ? f[static_cast<std::size_t>(i) + 1] : 1.0;
    const double f_mirror = f[static_cast<std::size_t>(n - i - 1)];
    out.loc += static_cast<double>(i + 1) * (f_next - fi);
    out.disp += fi * (1.0 - fi);
    out.asym += (1.0 - fi - f_mirror) * (1.0 - fi - f_mirror);
    sum_f += fi;
  }
  out.disp *= 2.0;
  out.skew = 2.0 * sum_f - static_cast<double>(n);
  return out;
}

double ordinal_kappa(const OrdinalSeries& series, int lag) {
  check_lag(series, lag);
  const auto marginal = estimate_cumulative_marginal(series);
  const auto joint = estimate_cumulative_joint(series, lag);

  double num = 0.0;
  double den = 0.0;
  for (int i = 0; i < marginal.n; ++i) {
    const double fi = marginal.f[static_cast<std::size_t>(i)];
    num += joint.at(i, i) - fi * fi;
    den += fi * (1.0 - fi);
  }
  if (den <= 0.0)
    raise(Errc::zero_dispersion, "ordinal kappa undefined on constant series '" + series.id + "'");
  return num / den;
}

std::vector<double> partial_kappas(std::span<const double> kappas) {
  const std::size_t max_lag = kappas.size();
  std::vector<double> partial(max_lag, 0.0);
  if (max_lag == 0) return partial;

  std::vector<double> phi(max_lag, 0.0);       // phi_{k,j}, 1-based j stored at j-1
  std::vector<double> phi_prev(max_lag, 0.0);  // previous order

  phi[0] = kappas[0];
  partial[0] = kappas[0];

  for (std::size_t k = 2; k <= max_lag; ++k) {
    std::swap(phi, phi_prev);
    double num = kappas[k - 1];
    double den = 1.0;
    for (std::size_t j = 1; j < k; ++j) {
      num -= phi_prev[j - 1] * kappas[k - 1 - j];
      den -= phi_prev[j - 1] * kappas[j - 1];
    }
    if (std::abs(den) < 1e-14)
      raise(Errc::singular_recursion,
            "Durbin-Levinson pivot vanished at lag " + std::to_string(k));
    const double reflect = num / den;
    for (std::size_t j = 1; j < k; ++j)
      phi[j - 1] = phi_prev[j - 1] - reflect * phi_prev[k - 1 - j];
    phi[k - 1] = reflect;
    partial[k - 1] = reflect;
  }
  return partial;
}

double count_acf(const OrdinalSeries& series, int lag) {
  if (lag == 0) return 1.0;
  check_lag(series, lag);

  const std::size_t t = series.length();
  double mean = 0.0;
  for (int s : series.states) mean += static_cast<double>(s);
  mean /= static_cast<double>(t);

  double denom = 0.0;
  for (int s : series.states) {
    const double d = static_cast<double>(s) - mean;
    denom += d * d;
  }
  if (denom <= 0.0)
    raise(Errc::zero_variance, "autocorrelation undefined on constant series '" + series.id + "'");

  double num = 0.0;
  for (std::size_t k = 0; k + static_cast<std::size_t>(lag) < t; ++k) {
    num += (static_cast<double>(series.states[k]) - mean) *
           (static_cast<double>(series.states[k + static_cast<std::size_t>(lag)]) - mean);
  }
  return num / denom;
}

SeriesRepr build_repr(const OrdinalSeries& series, const LagSet& lags) {
  if (static_cast<std::size_t>(lags.max_lag()) >= series.length())
    raise(Errc::lag_too_large, "max lag " + std::to_string(lags.max_lag()) +
                                   " too large for series '" + series.id + "'");

  const int n = series.n();
  const std::size_t nn = static_cast<std::size_t>(n) * n;
  const std::size_t mm = static_cast<std::size_t>(n + 1) * (n + 1);
  const std::size_t n_lags = lags.size();

  SeriesRepr repr;
  repr.id = series.id;
  repr.n = n;
  repr.length = series.length();
  repr.lags = lags;

  const auto marginal = estimate_cumulative_marginal(series);
  repr.cum_marginal = marginal.f;
  repr.pmf = estimate_marginal_pmf(series).p;
  repr.features = marginal_features(marginal);

  double disp_den = 0.0;
  for (double fi : marginal.f) disp_den += fi * (1.0 - fi);
  repr.degenerate = disp_den <= 0.0;

  repr.cum_joint.resize(n_lags * nn);
  repr.joint_pmf.resize(n_lags * mm);
  repr.features.kappas.resize(n_lags, 0.0);
  repr.acf.resize(n_lags, 0.0);

  for (std::size_t k = 0; k < n_lags; ++k) {
    const int lag = lags.lags()[k];
    const auto joint = estimate_cumulative_joint(series, lag);
    std::copy(joint.values.begin(), joint.values.end(), repr.cum_joint.begin() + k * nn);
    const auto jpmf = estimate_joint_pmf(series, lag);
    std::copy(jpmf.values.begin(), jpmf.values.end(), repr.joint_pmf.begin() + k * mm);

    if (!repr.degenerate) {
      double num = 0.0;
      for (int i = 0; i < n; ++i) {
        const double fi = marginal.f[static_cast<std::size_t>(i)];
        num += joint.at(i, i) - fi * fi;
      }
      repr.features.kappas[k] = num / disp_den;
      repr.acf[k] = count_acf(series, lag);
    }
  }
  return repr;
}

std::vector<SeriesRepr> build_reprs(const std::vector<OrdinalSeries>& data, const LagSet& lags,
                                    unsigned threads) {
  std::vector<SeriesRepr> reprs(data.size());
  parallel_for(
      data.size(), [&](std::size_t i) { reprs[i] = build_repr(data[i], lags); }, threads);
  return reprs;
}

}  // namespace otsclust
