#pragma once

// Dissimilarities between series representations. Each metric splits into
// a marginal and a serial component; the cumulative-probability metric
// also has an equivalent probability-mass form used as a cross-check.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "otsclust/core.hpp"
#include "otsclust/estimation.hpp"

namespace otsclust {

enum class Metric { d1, d2, pmf, acf };

Metric metric_from_name(const std::string& name);
std::string metric_name(Metric metric);

struct DistanceRecord {
  double marginal = 0.0;
  double serial = 0.0;
  double total() const { return marginal + serial; }
};

/// Symmetric zero-diagonal component matrices over a data set.
class DistanceMatrix {
public:
  DistanceMatrix() = default;
  DistanceMatrix(std::vector<std::string> ids, Metric metric, LagSet lags);

  std::size_t size() const { return ids_.size(); }
  const std::vector<std::string>& ids() const { return ids_; }
  Metric metric() const { return metric_; }
  const LagSet& lags() const { return lags_; }

  double marginal(std::size_t i, std::size_t j) const { return marginal_[i * size() + j]; }
  double serial(std::size_t i, std::size_t j) const { return serial_[i * size() + j]; }
  double total(std::size_t i, std::size_t j) const {
    return marginal_[i * size() + j] + serial_[i * size() + j];
  }

  void set(std::size_t i, std::size_t j, const DistanceRecord& record);

  /// Flattened s x s matrix of totals (row-major copy).
  std::vector<double> totals() const;
  const std::vector<double>& marginals_flat() const { return marginal_; }
  const std::vector<double>& serials_flat() const { return serial_; }

private:
  std::vector<std::string> ids_;
  Metric metric_ = Metric::d1;
  LagSet lags_;
  std::vector<double> marginal_;
  std::vector<double> serial_;
};

/// Squared-Euclidean discrepancy of cumulative features:
/// marginal over (f_0..f_{n-1}), serial over all lagged joint matrices.
DistanceRecord d1_components(const SeriesRepr& a, const SeriesRepr& b);

/// Discrepancy of normalized block-distance features,
/// (loc, 2 disp, asym, skew)/n, plus kappa discrepancies per lag.
DistanceRecord d2_components(const SeriesRepr& a, const SeriesRepr& b);

/// Same shape as d1 but on probability masses (benchmark metric).
DistanceRecord d_pmf_components(const SeriesRepr& a, const SeriesRepr& b);

/// Squared-Euclidean distance between autocorrelation vectors; carried
/// entirely by the serial component.
DistanceRecord d_acf_components(const SeriesRepr& a, const SeriesRepr& b);

DistanceRecord distance_components(Metric metric, const SeriesRepr& a, const SeriesRepr& b);

/// Marginal d1 evaluated directly from probability masses,
///   sum_i (n-i)(p_i-q_i)^2 + 2 sum_{j<k<=n-1} (n-k)(p_j-q_j)(p_k-q_k),
/// algebraically equal to the cumulative form; kept as an independent
/// verification route.
double d1m_via_pmf(std::span<const double> p, std::span<const double> q);

/// Full pairwise matrix; pairs are computed in parallel.
DistanceMatrix pairwise_matrix(const std::vector<SeriesRepr>& reprs, Metric metric,
                               unsigned threads = 0);

/// Convenience: estimation plus matrix build from raw series.
DistanceMatrix pairwise_matrix(const std::vector<OrdinalSeries>& data, Metric metric,
                               const LagSet& lags, unsigned threads = 0);

}  // namespace otsclust
