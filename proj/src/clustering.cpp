#include "otsclust/clustering.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <numeric>

#include "otsclust/kernels.hpp"
#include "otsclust/parallel.hpp"
#include "otsclust/rng.hpp"

namespace otsclust {

namespace {

std::vector<std::size_t> sample_initial_medoids(std::size_t size, int clusters, Rng& rng) {
  std::vector<std::size_t> indices(size);
  std::iota(indices.begin(), indices.end(), std::size_t{0});
  for (int k = 0; k < clusters; ++k) {
    const std::size_t j =
        static_cast<std::size_t>(k) + rng.uniform_int(size - static_cast<std::size_t>(k));
    std::swap(indices[static_cast<std::size_t>(k)], indices[j]);
  }
  indices.resize(static_cast<std::size_t>(clusters));
  return indices;
}

/// Memberships for all series against the given medoid columns.
std::vector<double> all_memberships(std::span<const double> distance, std::size_t size,
                                    const std::vector<std::size_t>& medoids, double fuzziness) {
  const int clusters = static_cast<int>(medoids.size());
  std::vector<double> memberships(size * static_cast<std::size_t>(clusters));
  std::vector<double> row(static_cast<std::size_t>(clusters));
  for (std::size_t i = 0; i < size; ++i) {
    for (int c = 0; c < clusters; ++c) row[static_cast<std::size_t>(c)] = distance[i * size + medoids[static_cast<std::size_t>(c)]];
    const auto u = update_memberships(row, fuzziness);
    std::copy(u.begin(), u.end(), memberships.begin() + i * static_cast<std::size_t>(clusters));
  }
  return memberships;
}

double objective_value(const std::vector<double>& memberships, std::span<const double> distance,
                       std::size_t size, const std::vector<std::size_t>& medoids,
                       double fuzziness) {
  const int clusters = static_cast<int>(medoids.size());
  double value = 0.0;
  for (std::size_t i = 0; i < size; ++i) {
    for (int c = 0; c < clusters; ++c) {
      const double u = memberships[i * static_cast<std::size_t>(clusters) + static_cast<std::size_t>(c)];
      value += std::pow(u, fuzziness) * distance[i * size + medoids[static_cast<std::size_t>(c)]];
    }
  }
  return value;
}

std::vector<double> combine_components(std::span<const double> marginal,
                                       std::span<const double> serial, double beta) {
  const double wm = beta * beta;
  const double wb = (1.0 - beta) * (1.0 - beta);
  std::vector<double> combined(marginal.size());
  for (std::size_t k = 0; k < combined.size(); ++k)
    combined[k] = wm * marginal[k] + wb * serial[k];
  return combined;
}

}  // namespace

void ClusterConfig::validate(std::size_t series_count) const {
  if (clusters < 2) raise(Errc::config_error, "cluster count must be at least 2");
  if (static_cast<std::size_t>(clusters) > series_count)
    raise(Errc::too_few_series, "cannot form " + std::to_string(clusters) + " clusters from " +
                                    std::to_string(series_count) + " series");
  if (!(fuzziness > 1.0)) raise(Errc::config_error, "fuzziness m must be greater than 1");
  if (max_iter < 1) raise(Errc::config_error, "max_iter must be positive");
  if (initial_beta < 0.0 || initial_beta > 1.0)
    raise(Errc::config_error, "initial beta must lie in [0, 1]");
}

std::vector<double> update_memberships(std::span<const double> dist_to_medoids, double fuzziness) {
  const std::size_t clusters = dist_to_medoids.size();
  std::vector<double> u(clusters, 0.0);

  std::size_t zero_count = 0;
  double min_dist = std::numeric_limits<double>::infinity();
  for (double d : dist_to_medoids) {
    if (d <= 0.0) ++zero_count;
    min_dist = std::min(min_dist, d);
  }
  if (zero_count > 0) {
    const double share = 1.0 / static_cast<double>(zero_count);
    for (std::size_t c = 0; c < clusters; ++c)
      if (dist_to_medoids[c] <= 0.0) u[c] = share;
    return u;
  }

  // Ratio form keeps the row stable for small m (large exponents).
  const double exponent = 1.0 / (fuzziness - 1.0);
  double sum = 0.0;
  for (std::size_t c = 0; c < clusters; ++c) {
    u[c] = std::pow(min_dist / dist_to_medoids[c], exponent);
    sum += u[c];
  }
  for (auto& v : u) v /= sum;
  return u;
}

std::vector<double> update_memberships_weighted(std::span<const double> marginal_to_medoids,
                                                std::span<const double> serial_to_medoids,
                                                double beta, double fuzziness) {
  if (marginal_to_medoids.size() != serial_to_medoids.size())
    raise(Errc::size_mismatch, "component rows have different lengths");
  const double wm = beta * beta;
  const double wb = (1.0 - beta) * (1.0 - beta);
  std::vector<double> combined(marginal_to_medoids.size());
  for (std::size_t c = 0; c < combined.size(); ++c)
    combined[c] = wm * marginal_to_medoids[c] + wb * serial_to_medoids[c];
  return update_memberships(combined, fuzziness);
}

std::vector<std::size_t> update_medoids(const std::vector<double>& memberships,
                                        std::span<const double> distance, std::size_t size,
                                        int clusters, double fuzziness) {
  // Weighted cost of candidate j for cluster c is sum_i u_ic^m d(i, j),
  // a dot product of the cluster's weight column with row j.
  std::vector<double> weights(size * static_cast<std::size_t>(clusters));
  for (std::size_t i = 0; i < size; ++i)
    for (int c = 0; c < clusters; ++c)
      weights[static_cast<std::size_t>(c) * size + i] =
          std::pow(memberships[i * static_cast<std::size_t>(clusters) + static_cast<std::size_t>(c)], fuzziness);

  std::vector<std::size_t> medoids(static_cast<std::size_t>(clusters));
  std::vector<bool> taken(size, false);
  for (int c = 0; c < clusters; ++c) {
    const double* w = &weights[static_cast<std::size_t>(c) * size];
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_j = size;
    for (std::size_t j = 0; j < size; ++j) {
      if (taken[j]) continue;
      const double cost = kernels::dot_impl(w, &distance[j * size], size);
      if (cost < best) {
        best = cost;
        best_j = j;
      }
    }
    medoids[static_cast<std::size_t>(c)] = best_j;
    taken[best_j] = true;
  }
  return medoids;
}

double update_beta(const std::vector<double>& memberships, std::span<const double> marginal,
                   std::span<const double> serial, std::size_t size, double fuzziness,
                   const std::vector<std::size_t>& medoids) {
  const int clusters = static_cast<int>(medoids.size());
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < size; ++i) {
    for (int c = 0; c < clusters; ++c) {
      const double u = std::pow(
          memberships[i * static_cast<std::size_t>(clusters) + static_cast<std::size_t>(c)], fuzziness);
      const std::size_t cell = i * size + medoids[static_cast<std::size_t>(c)];
      num += u * serial[cell];
      den += u * (marginal[cell] + serial[cell]);
    }
  }
  if (den <= 0.0)
    raise(Errc::degenerate_distances, "all medoid distances vanish; beta update undefined");
  return num / den;
}

FuzzyPartition fuzzy_cmedoids(std::span<const double> distance, std::size_t size,
                              const ClusterConfig& config) {
  config.validate(size);
  const int clusters = config.clusters;
  const double m = config.fuzziness;

  Rng rng(config.seed);
  std::vector<std::size_t> medoids = sample_initial_medoids(size, clusters, rng);

  FuzzyPartition part;
  part.size = size;
  part.clusters = clusters;

  [[maybe_unused]] double prev_objective = std::numeric_limits<double>::infinity();
  for (int iter = 1; iter <= config.max_iter; ++iter) {
    const auto old_medoids = medoids;
    part.memberships = all_memberships(distance, size, medoids, m);

    auto candidate = update_medoids(part.memberships, distance, size, clusters, m);
    const double candidate_obj = objective_value(part.memberships, distance, size, candidate, m);
    const double stay_obj = objective_value(part.memberships, distance, size, medoids, m);
    // The distinctness rule can force a later cluster off its argmin;
    // never accept a medoid set that worsens the objective.
    if (candidate_obj <= stay_obj) {
      medoids = std::move(candidate);
      part.objective = candidate_obj;
    } else {
      part.objective = stay_obj;
    }

    part.iterations = iter;
    part.objective_trace.push_back(part.objective);
    assert(part.objective <= prev_objective + 1e-9 * (1.0 + std::abs(prev_objective)));
    prev_objective = part.objective;

    if (medoids == old_medoids) {
      part.converged = true;
      break;
    }
  }

  if (!part.converged) {
    part.memberships = all_memberships(distance, size, medoids, m);
    part.objective = objective_value(part.memberships, distance, size, medoids, m);
    part.objective_trace.push_back(part.objective);
  }
  part.medoids = std::move(medoids);
  return part;
}

FuzzyPartition fuzzy_cmedoids(const DistanceMatrix& matrix, const ClusterConfig& config) {
  return fuzzy_cmedoids(matrix.totals(), matrix.size(), config);
}

FuzzyPartition weighted_fuzzy_cmedoids(std::span<const double> marginal,
                                       std::span<const double> serial, std::size_t size,
                                       const ClusterConfig& config) {
  if (marginal.size() != serial.size())
    raise(Errc::size_mismatch, "component matrices have different shapes");
  config.validate(size);
  const int clusters = config.clusters;
  const double m = config.fuzziness;

  Rng rng(config.seed);
  std::vector<std::size_t> medoids = sample_initial_medoids(size, clusters, rng);
  double beta = config.initial_beta;

  FuzzyPartition part;
  part.size = size;
  part.clusters = clusters;

  [[maybe_unused]] double prev_objective = std::numeric_limits<double>::infinity();
  std::vector<double> combined = combine_components(marginal, serial, beta);

  for (int iter = 1; iter <= config.max_iter; ++iter) {
    const auto old_medoids = medoids;
    part.memberships = all_memberships(combined, size, medoids, m);

    if (!config.freeze_beta) {
      try {
        beta = update_beta(part.memberships, marginal, serial, size, m, medoids);
      } catch (const Error& e) {
        if (e.code() != Errc::degenerate_distances) throw;
        // Keep the previous beta.
      }
      combined = combine_components(marginal, serial, beta);
    }

    auto candidate = update_medoids(part.memberships, combined, size, clusters, m);
    const double candidate_obj = objective_value(part.memberships, combined, size, candidate, m);
    const double stay_obj = objective_value(part.memberships, combined, size, medoids, m);
    if (candidate_obj <= stay_obj) {
      medoids = std::move(candidate);
      part.objective = candidate_obj;
    } else {
      part.objective = stay_obj;
    }

    part.iterations = iter;
    part.objective_trace.push_back(part.objective);
    assert(config.freeze_beta ||
           part.objective <= prev_objective + 1e-9 * (1.0 + std::abs(prev_objective)));
    prev_objective = part.objective;

    if (medoids == old_medoids) {
      part.converged = true;
      break;
    }
  }

  if (!part.converged) {
    part.memberships = all_memberships(combined, size, medoids, m);
    part.objective = objective_value(part.memberships, combined, size, medoids, m);
    part.objective_trace.push_back(part.objective);
  }
  part.medoids = std::move(medoids);
  part.beta = beta;
  return part;
}

FuzzyPartition weighted_fuzzy_cmedoids(const DistanceMatrix& matrix, const ClusterConfig& config) {
  return weighted_fuzzy_cmedoids(matrix.marginals_flat(), matrix.serials_flat(), matrix.size(),
                                 config);
}

FuzzyPartition cluster_with_restarts(const DistanceMatrix& matrix, const ClusterConfig& config,
                                     int restarts, unsigned threads) {
  if (restarts < 1) raise(Errc::config_error, "restarts must be at least 1");
  std::vector<FuzzyPartition> runs(static_cast<std::size_t>(restarts));
  parallel_for(
      static_cast<std::size_t>(restarts),
      [&](std::size_t r) {
        ClusterConfig cfg = config;
        cfg.seed = config.seed + r;
        runs[r] = cfg.weighted ? weighted_fuzzy_cmedoids(matrix, cfg)
                               : fuzzy_cmedoids(matrix, cfg);
      },
      threads);

  std::size_t best = 0;
  for (std::size_t r = 1; r < runs.size(); ++r)
    if (runs[r].objective < runs[best].objective) best = r;
  return runs[static_cast<std::size_t>(best)];
}

std::vector<int> crispify(const FuzzyPartition& partition) {
  std::vector<int> labels(partition.size);
  for (std::size_t i = 0; i < partition.size; ++i) {
    int best = 0;
    double best_u = partition.membership(i, 0);
    for (int c = 1; c < partition.clusters; ++c) {
      const double u = partition.membership(i, c);
      if (u > best_u) {
        best_u = u;
        best = c;
      }
    }
    labels[i] = best;
  }
  return labels;
}

}  // namespace otsclust
