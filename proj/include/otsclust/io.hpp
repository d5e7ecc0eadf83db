#pragma once

// Stable file formats: series as JSON Lines (one object per series, with
// an optional header object carrying format/version/labels), ground-truth
// labels as a JSON sidecar, distance matrices as JSON plus CSV, fuzzy
// partitions and lag-selection reports as JSON, embeddings as CSV.

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "otsclust/clustering.hpp"
#include "otsclust/core.hpp"
#include "otsclust/eval.hpp"
#include "otsclust/lagsel.hpp"
#include "otsclust/metrics.hpp"

namespace otsclust {

// --- series ---------------------------------------------------------------

void write_series_jsonl(std::ostream& out, const std::vector<OrdinalSeries>& data);
void write_series_jsonl(const std::string& path, const std::vector<OrdinalSeries>& data);

std::vector<OrdinalSeries> read_series_jsonl(std::istream& in);
std::vector<OrdinalSeries> read_series_jsonl(const std::string& path);

/// CSV import with columns id,n,states (states space-separated).
std::vector<OrdinalSeries> read_series_csv(std::istream& in);

/// Dispatch on extension: .csv goes through the CSV reader, everything
/// else is treated as JSON Lines.
std::vector<OrdinalSeries> read_series_file(const std::string& path);

// --- ground-truth labels ---------------------------------------------------

void write_labels_json(const std::string& path, const std::vector<std::string>& ids,
                       const std::vector<std::string>& labels);

/// Returns labels aligned with `ids`; missing ids raise io_error.
std::vector<std::string> read_labels_json(const std::string& path,
                                          const std::vector<std::string>& ids);

// --- distance matrices -----------------------------------------------------

void write_matrix_json(const std::string& path, const DistanceMatrix& matrix);
DistanceMatrix read_matrix_json(const std::string& path);

/// Header row of ids, then rows of totals with 17 significant digits.
void write_matrix_csv(std::ostream& out, const DistanceMatrix& matrix);
void write_matrix_csv(const std::string& path, const DistanceMatrix& matrix);

// --- partitions, reports, embeddings ----------------------------------------

void write_partition_json(const std::string& path, const FuzzyPartition& partition,
                          const std::vector<std::string>& ids, const ClusterConfig& config,
                          Metric metric, const LagSet& lags);

struct PartitionFile {
  FuzzyPartition partition;
  std::vector<std::string> ids;
};

PartitionFile read_partition_json(const std::string& path);

void write_lag_report_json(const std::string& path, const LagSelectionReport& report,
                           const std::vector<std::string>& ids);

void write_embedding_csv(std::ostream& out, const Embedding2D& embedding,
                         const std::vector<std::string>& ids);
void write_embedding_csv(const std::string& path, const Embedding2D& embedding,
                         const std::vector<std::string>& ids);

}  // namespace otsclust
