#pragma once

// Standard and weighted fuzzy C-medoids over precomputed distance
// matrices. Both solvers alternate membership and medoid updates until
// the medoid set stops changing; the weighted variant additionally
// learns the convex weight beta between the marginal and serial
// distance components.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "otsclust/core.hpp"
#include "otsclust/metrics.hpp"

namespace otsclust {

struct ClusterConfig {
  int clusters = 2;          // C
  double fuzziness = 2.0;    // m > 1
  int max_iter = 100;
  std::uint64_t seed = 0;
  bool weighted = false;
  double initial_beta = 0.5;  // weighted only
  bool freeze_beta = false;   // keep initial_beta fixed (diagnostics)

  void validate(std::size_t series_count) const;
};

struct FuzzyPartition {
  std::size_t size = 0;                  // s
  int clusters = 0;                      // C
  std::vector<double> memberships;       // s x C row-major, rows on the simplex
  std::vector<std::size_t> medoids;      // C distinct series indices
  std::optional<double> beta;            // weighted solver only
  int iterations = 0;
  bool converged = false;
  double objective = 0.0;
  std::vector<double> objective_trace;   // value after each full iteration

  double membership(std::size_t i, int c) const {
    return memberships[i * static_cast<std::size_t>(clusters) + static_cast<std::size_t>(c)];
  }
};

/// Membership row for one series given its distances to the C medoids:
/// u_c = [sum_c' (d_c/d_c')^{1/(m-1)}]^{-1}. Rows with zero distances put
/// uniform mass on the zero-distance medoids.
std::vector<double> update_memberships(std::span<const double> dist_to_medoids, double fuzziness);

/// Medoid indices minimizing sum_i u_ic^m d(i, j) per cluster. Ties break
/// to the smallest index; a candidate already taken by an earlier cluster
/// falls through to the next-best one.
std::vector<std::size_t> update_medoids(const std::vector<double>& memberships,
                                        std::span<const double> distance, std::size_t size,
                                        int clusters, double fuzziness);

/// Membership row under the combined distance beta^2 d_M + (1-beta)^2 d_B.
std::vector<double> update_memberships_weighted(std::span<const double> marginal_to_medoids,
                                                std::span<const double> serial_to_medoids,
                                                double beta, double fuzziness);

/// Optimal weight beta = sum u^m d_B / sum u^m (d_M + d_B) over medoid
/// columns. Throws Error(degenerate_distances) when the denominator is 0.
double update_beta(const std::vector<double>& memberships, std::span<const double> marginal,
                   std::span<const double> serial, std::size_t size, double fuzziness,
                   const std::vector<std::size_t>& medoids);

/// Standard solver on a flattened s x s total-distance matrix.
FuzzyPartition fuzzy_cmedoids(std::span<const double> distance, std::size_t size,
                              const ClusterConfig& config);

FuzzyPartition fuzzy_cmedoids(const DistanceMatrix& matrix, const ClusterConfig& config);

/// Weighted solver on component matrices sharing the same ids.
FuzzyPartition weighted_fuzzy_cmedoids(std::span<const double> marginal,
                                       std::span<const double> serial, std::size_t size,
                                       const ClusterConfig& config);

FuzzyPartition weighted_fuzzy_cmedoids(const DistanceMatrix& matrix, const ClusterConfig& config);

/// Best-of-R restarts (seed, seed+1, ...), keeping the lowest objective.
FuzzyPartition cluster_with_restarts(const DistanceMatrix& matrix, const ClusterConfig& config,
                                     int restarts, unsigned threads = 0);

/// Hard labels by row argmax; ties go to the lowest cluster index.
std::vector<int> crispify(const FuzzyPartition& partition);

}  // namespace otsclust
