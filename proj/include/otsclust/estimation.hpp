#pragma once

// Per-series feature estimation: cumulative marginal/joint probabilities,
// probability mass functions, block-distance features (location,
// dispersion, asymmetry, skewness), ordinal Cohen's kappa and its partial
// version, and the count-process autocorrelation. A SeriesRepr bundles
// everything the distance layer needs so that the O(s^2) matrix build
// reuses O(s) estimation work.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "otsclust/core.hpp"

namespace otsclust {

/// Cumulative marginal vector (f_0, ..., f_{n-1}); f_n == 1 is implicit.
struct CumulativeMarginal {
  int n = 0;
  std::vector<double> f;  // length n, non-decreasing, in [0, 1]
};

/// Cumulative joint matrix at one lag: entry (i, j) = f_ij(lag),
/// row-major n x n, normalized by T - lag.
struct CumulativeJoint {
  int lag = 0;
  int n = 0;
  std::vector<double> values;  // length n * n

  double at(int i, int j) const { return values[static_cast<std::size_t>(i) * n + j]; }
};

struct MarginalPmf {
  int n = 0;
  std::vector<double> p;  // length n + 1, sums to 1
};

/// Joint mass matrix at one lag, (n+1) x (n+1) row-major.
struct JointPmf {
  int lag = 0;
  int n = 0;
  std::vector<double> values;
};

/// Block-distance features plus serial-dependence measures.
struct OrdinalFeatures {
  double loc = 0.0;
  double disp = 0.0;
  double asym = 0.0;
  double skew = 0.0;
  std::vector<double> kappas;  // one per active lag
};

struct SeriesRepr {
  std::string id;
  int n = 0;
  std::size_t length = 0;
  LagSet lags;
  std::vector<double> cum_marginal;  // n entries
  std::vector<double> cum_joint;     // L * n * n, lag-major
  std::vector<double> pmf;           // n + 1 entries
  std::vector<double> joint_pmf;     // L * (n+1)^2, lag-major
  OrdinalFeatures features;
  std::vector<double> acf;  // count-process autocorrelations per lag
  bool degenerate = false;  // constant series: kappa/acf forced to 0
};

CumulativeMarginal estimate_cumulative_marginal(const OrdinalSeries& series);
CumulativeJoint estimate_cumulative_joint(const OrdinalSeries& series, int lag);

MarginalPmf estimate_marginal_pmf(const OrdinalSeries& series);
JointPmf estimate_joint_pmf(const OrdinalSeries& series, int lag);

/// Table of block-distance features from the cumulative marginal:
///   loc  = sum (i+1)(f_{i+1} - f_i)        (mean count index)
///   disp = 2 sum f_i (1 - f_i)
///   asym = sum (1 - f_i - f_{n-i-1})^2
///   skew = 2 sum f_i - n
/// kappas is left empty.
OrdinalFeatures marginal_features(const CumulativeMarginal& marginal);

/// Ordinal Cohen's kappa at a lag,
///   sum_i (f_ii(l) - f_i^2) / sum_i f_i (1 - f_i).
/// Throws Error(zero_dispersion) on constant series.
double ordinal_kappa(const OrdinalSeries& series, int lag);

/// Durbin-Levinson recursion treating the kappa sequence as an
/// autocorrelation function; returns partial kappas for lags 1..L.
std::vector<double> partial_kappas(std::span<const double> kappas);

/// Sample autocorrelation of the count indices at the given lag.
/// Throws Error(zero_variance) on constant series.
double count_acf(const OrdinalSeries& series, int lag);

/// Bundles every estimator above. Constant series do not fail here: their
/// kappa/acf entries are 0 and the repr is flagged degenerate.
SeriesRepr build_repr(const OrdinalSeries& series, const LagSet& lags);

/// Parallel build over a data set; output order matches input order.
std::vector<SeriesRepr> build_reprs(const std::vector<OrdinalSeries>& data, const LagSet& lags,
                                    unsigned threads = 0);

}  // namespace otsclust
