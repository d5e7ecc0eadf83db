#pragma once

// Partition quality: fuzzy extensions of the Adjusted Rand and Jaccard
// indices, cutoff-based correct-classification for data sets with an
// isolated series, the area under the fuzziness curve, two-dimensional
// scaling by stress majorization, internal validity indices, and joint
// (C, m) selection over a grid.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "otsclust/clustering.hpp"
#include "otsclust/core.hpp"
#include "otsclust/metrics.hpp"

namespace otsclust {

/// Same-cluster and different-cluster bond degrees for one object pair
/// under a fuzzy partition (max-min composition).
struct PairBonds {
  double same = 0.0;       // max_c min(u1c, u2c)
  double different = 0.0;  // max_{c != c'} min(u1c, u2c')
};

PairBonds pair_bonds(std::span<const double> row1, std::span<const double> row2);

struct AgreementResult {
  double value = 0.0;
  bool degenerate = false;  // zero denominator, value forced to 0
};

/// Fuzzy Adjusted Rand Index of a hard reference against a fuzzy
/// partition; reduces to classical ARI when both are hard.
AgreementResult arif(std::span<const int> reference, const FuzzyPartition& partition);

/// Fuzzy Jaccard Index; reduces to the classical Jaccard index.
AgreementResult jif(std::span<const int> reference, const FuzzyPartition& partition);

/// One trial of the cutoff criterion: every regular series must exceed the
/// cutoff in its own group's cluster (groups matched to clusters by an
/// exact max-mass assignment) and the isolated series, when present, must
/// stay at or below the cutoff everywhere. An ambiguous group-to-cluster
/// assignment counts as failure.
bool correct_classification(const FuzzyPartition& partition,
                            const std::vector<std::string>& truth_labels, double cutoff);

/// Trapezoidal area under a rate curve over a strictly increasing m-grid.
double aufc(std::span<const double> m_grid, std::span<const double> rates);

struct Embedding2D {
  std::vector<double> x;
  std::vector<double> y;
  double stress = 0.0;
  double r_squared = 1.0;
};

/// Metric two-dimensional scaling of a flattened s x s dissimilarity
/// matrix: classical-scaling start, then stress majorization.
Embedding2D mds_2d(std::span<const double> distance, std::size_t size);
Embedding2D mds_2d(const DistanceMatrix& matrix);

struct ValidityIndices {
  double xie_beni = 0.0;
  double kwon = 0.0;
  double tang = 0.0;
  double bensaid = 0.0;

  bool finite() const;
};

/// Medoid-based compactness/separation indices on the total distances;
/// coincident medoids yield +infinity sentinels.
ValidityIndices validity_indices(const FuzzyPartition& partition, std::span<const double> distance,
                                 std::size_t size, double fuzziness);

struct GridCell {
  int clusters = 0;
  double fuzziness = 0.0;
  ValidityIndices indices;
  double standardized_average = 0.0;
  bool valid = false;
};

struct GridSelection {
  std::vector<GridCell> cells;  // row-major over (C-grid) x (m-grid)
  int best_clusters = 0;
  double best_fuzziness = 0.0;
};

/// Runs the solver on every (C, m) cell, z-standardizes each index across
/// valid cells, averages, and picks the argmin cell.
GridSelection select_c_m(const DistanceMatrix& matrix, std::span<const int> c_grid,
                         std::span<const double> m_grid, std::uint64_t seed, int restarts = 1,
                         int max_iter = 100, unsigned threads = 0);

}  // namespace otsclust
