#include "otsclust/metrics.hpp"

#include <array>

#include "otsclust/kernels.hpp"
#include "otsclust/parallel.hpp"

namespace otsclust {

namespace {

void check_compatible(const SeriesRepr& a, const SeriesRepr& b) {
  if (a.n != b.n)
    raise(Errc::range_mismatch, "series '" + a.id + "' and '" + b.id +
                                    "' have different range sizes (" + std::to_string(a.n) +
                                    " vs " + std::to_string(b.n) + ")");
  if (!(a.lags == b.lags))
    raise(Errc::lag_mismatch, "series '" + a.id + "' and '" + b.id + "' use different lag sets");
}

}  // namespace

Metric metric_from_name(const std::string& name) {
  if (name == "d1") return Metric::d1;
  if (name == "d2") return Metric::d2;
  if (name == "pmf" || name == "dpmf") return Metric::pmf;
  if (name == "acf" || name == "dacf") return Metric::acf;
  raise(Errc::config_error, "unknown metric '" + name + "' (expected d1, d2, pmf, acf)");
}

std::string metric_name(Metric metric) {
  switch (metric) {
    case Metric::d1: return "d1";
    case Metric::d2: return "d2";
    case Metric::pmf: return "pmf";
    case Metric::acf: return "acf";
  }
  return "?";
}

DistanceMatrix::DistanceMatrix(std::vector<std::string> ids, Metric metric, LagSet lags)
    : ids_(std::move(ids)),
      metric_(metric),
      lags_(std::move(lags)),
      marginal_(ids_.size() * ids_.size(), 0.0),
      serial_(ids_.size() * ids_.size(), 0.0) {}

void DistanceMatrix::set(std::size_t i, std::size_t j, const DistanceRecord& record) {
  marginal_[i * size() + j] = record.marginal;
  marginal_[j * size() + i] = record.marginal;
  serial_[i * size() + j] = record.serial;
  serial_[j * size() + i] = record.serial;
}

std::vector<double> DistanceMatrix::totals() const {
  std::vector<double> out(marginal_.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = marginal_[k] + serial_[k];
  return out;
}

DistanceRecord d1_components(const SeriesRepr& a, const SeriesRepr& b) {
  check_compatible(a, b);
  DistanceRecord rec;
  rec.marginal = kernels::sum_sq_diff(a.cum_marginal, b.cum_marginal);
  rec.serial = kernels::sum_sq_diff(a.cum_joint, b.cum_joint);
  return rec;
}

DistanceRecord d2_components(const SeriesRepr& a, const SeriesRepr& b) {
  check_compatible(a, b);
  const double inv_n = 1.0 / static_cast<double>(a.n);
  const std::array<double, 4> fa = {a.features.loc * inv_n, 2.0 * a.features.disp * inv_n,
                                    a.features.asym * inv_n, a.features.skew * inv_n};
  const std::array<double, 4> fb = {b.features.loc * inv_n, 2.0 * b.features.disp * inv_n,
                                    b.features.asym * inv_n, b.features.skew * inv_n};
  DistanceRecord rec;
  rec.marginal = kernels::sum_sq_diff(fa, fb);
  rec.serial = kernels::sum_sq_diff(a.features.kappas, b.features.kappas);
  return rec;
}

DistanceRecord d_pmf_components(const SeriesRepr& a, const SeriesRepr& b) {
  check_compatible(a, b);
  DistanceRecord rec;
  rec.marginal = kernels::sum_sq_diff(a.pmf, b.pmf);
  rec.serial = kernels::sum_sq_diff(a.joint_pmf, b.joint_pmf);
  return rec;
}

DistanceRecord d_acf_components(const SeriesRepr& a, const SeriesRepr& b) {
  check_compatible(a, b);
  DistanceRecord rec;
  rec.marginal = 0.0;
  rec.serial = kernels::sum_sq_diff(a.acf, b.acf);
  return rec;
}

DistanceRecord distance_components(Metric metric, const SeriesRepr& a, const SeriesRepr& b) {
  switch (metric) {
    case Metric::d1: return d1_components(a, b);
    case Metric::d2: return d2_components(a, b);
    case Metric::pmf: return d_pmf_components(a, b);
    case Metric::acf: return d_acf_components(a, b);
  }
  raise(Errc::config_error, "unreachable metric tag");
}

double d1m_via_pmf(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size())
    raise(Errc::length_mismatch, "probability vectors have different lengths");
  const int n = static_cast<int>(p.size()) - 1;
  double result = 0.0;
  for (int i = 0; i <= n - 1; ++i) {
    const double di = p[static_cast<std::size_t>(i)] - q[static_cast<std::size_t>(i)];
    result += static_cast<double>(n - i) * di * di;
  }
  for (int j = 0; j <= n - 2; ++j) {
    const double dj = p[static_cast<std::size_t>(j)] - q[static_cast<std::size_t>(j)];
    for (int k = j + 1; k <= n - 1; ++k) {
      const double dk = p[static_cast<std::size_t>(k)] - q[static_cast<std::size_t>(k)];
      result += 2.0 * static_cast<double>(n - k) * dj * dk;
    }
  }
  return result;
}

DistanceMatrix pairwise_matrix(const std::vector<SeriesRepr>& reprs, Metric metric,
                               unsigned threads) {
  std::vector<std::string> ids;
  ids.reserve(reprs.size());
  for (const auto& r : reprs) ids.push_back(r.id);

  LagSet lags = reprs.empty() ? LagSet() : reprs.front().lags;
  DistanceMatrix matrix(std::move(ids), metric, lags);

  const std::size_t s = reprs.size();
  if (s < 2) return matrix;

  // Unordered pairs, flattened; each task owns disjoint cells.
  const std::size_t n_pairs = s * (s - 1) / 2;
  parallel_for(
      n_pairs,
      [&](std::size_t k) {
        // Invert k -> (i, j) with i < j.
        std::size_t i = 0;
        std::size_t remaining = k;
        std::size_t row_len = s - 1;
        while (remaining >= row_len) {
          remaining -= row_len;
          --row_len;
          ++i;
        }
        const std::size_t j = i + 1 + remaining;
        matrix.set(i, j, distance_components(metric, reprs[i], reprs[j]));
      },
      threads);
  return matrix;
}

DistanceMatrix pairwise_matrix(const std::vector<OrdinalSeries>& data, Metric metric,
                               const LagSet& lags, unsigned threads) {
  return pairwise_matrix(build_reprs(data, lags, threads), metric, threads);
}

}  // namespace otsclust
