#include "otsclust/eval.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "otsclust/parallel.hpp"
#include "otsclust/rng.hpp"

namespace otsclust {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

PairBonds pair_bonds(std::span<const double> row1, std::span<const double> row2) {
  const std::size_t clusters = row1.size();

  // Top two entries of row2 make max_{c' != c} row2[c'] an O(1) lookup.
  std::size_t arg_max2 = 0;
  double max2 = -1.0;
  double second2 = -1.0;
  for (std::size_t c = 0; c < clusters; ++c) {
    if (row2[c] > max2) {
      second2 = max2;
      max2 = row2[c];
      arg_max2 = c;
    } else if (row2[c] > second2) {
      second2 = row2[c];
    }
  }

  PairBonds bonds;
  for (std::size_t c = 0; c < clusters; ++c) {
    bonds.same = std::max(bonds.same, std::min(row1[c], row2[c]));
    const double other = (c == arg_max2) ? second2 : max2;
    if (clusters > 1) bonds.different = std::max(bonds.different, std::min(row1[c], other));
  }
  return bonds;
}

namespace {

struct PairAggregates {
  double a = 0.0;  // same-same
  double b = 0.0;  // same-different
  double c = 0.0;  // different-same
  double d = 0.0;  // different-different
};

PairAggregates aggregate_pairs(std::span<const int> reference, const FuzzyPartition& partition) {
  if (reference.size() != partition.size)
    raise(Errc::size_mismatch, "reference labels and partition have different sizes");

  const std::size_t s = partition.size;
  const std::size_t clusters = static_cast<std::size_t>(partition.clusters);
  PairAggregates agg;
  for (std::size_t i = 0; i + 1 < s; ++i) {
    const std::span<const double> row_i(&partition.memberships[i * clusters], clusters);
    for (std::size_t j = i + 1; j < s; ++j) {
      const std::span<const double> row_j(&partition.memberships[j * clusters], clusters);
      const PairBonds q = pair_bonds(row_i, row_j);
      const bool same_ref = reference[i] == reference[j];
      const double rho_r = same_ref ? 1.0 : 0.0;
      const double delta_r = same_ref ? 0.0 : 1.0;
      agg.a += std::min(rho_r, q.same);
      agg.b += std::min(rho_r, q.different);
      agg.c += std::min(delta_r, q.same);
      agg.d += std::min(delta_r, q.different);
    }
  }
  return agg;
}

}  // namespace

AgreementResult arif(std::span<const int> reference, const FuzzyPartition& partition) {
  const auto agg = aggregate_pairs(reference, partition);
  const double denom =
      (agg.a + agg.b) * (agg.b + agg.d) + (agg.a + agg.c) * (agg.c + agg.d);
  if (denom == 0.0) return {0.0, true};
  return {2.0 * (agg.a * agg.d - agg.b * agg.c) / denom, false};
}

AgreementResult jif(std::span<const int> reference, const FuzzyPartition& partition) {
  const auto agg = aggregate_pairs(reference, partition);
  const double denom = agg.a + agg.b + agg.c;
  if (denom == 0.0) return {0.0, true};
  return {agg.a / denom, false};
}

namespace {

/// Max-mass assignment of groups to clusters by bitmask DP; reports
/// whether the optimum is attained by more than one assignment.
struct Assignment {
  std::vector<int> group_to_cluster;
  bool ambiguous = false;
};

Assignment assign_groups(const std::vector<std::vector<double>>& mass) {
  const int c_count = static_cast<int>(mass.size());
  const std::size_t n_masks = std::size_t{1} << c_count;
  std::vector<double> best(n_masks, -kInf);
  std::vector<double> ways(n_masks, 0.0);
  best[0] = 0.0;
  ways[0] = 1.0;

  for (std::size_t mask = 0; mask < n_masks; ++mask) {
    if (ways[mask] == 0.0) continue;
    const int g = __builtin_popcountll(mask);
    if (g >= c_count) continue;
    for (int c = 0; c < c_count; ++c) {
      if (mask & (std::size_t{1} << c)) continue;
      const std::size_t next = mask | (std::size_t{1} << c);
      const double v = best[mask] + mass[static_cast<std::size_t>(g)][static_cast<std::size_t>(c)];
      if (v > best[next]) {
        best[next] = v;
        ways[next] = ways[mask];
      } else if (v == best[next]) {
        ways[next] += ways[mask];
      }
    }
  }

  Assignment out;
  const std::size_t full = n_masks - 1;
  out.ambiguous = ways[full] != 1.0;
  out.group_to_cluster.assign(static_cast<std::size_t>(c_count), -1);

  // Backtrack one optimal assignment.
  std::size_t mask = full;
  for (int g = c_count - 1; g >= 0; --g) {
    for (int c = 0; c < c_count; ++c) {
      if (!(mask & (std::size_t{1} << c))) continue;
      const std::size_t prev = mask & ~(std::size_t{1} << c);
      if (best[prev] + mass[static_cast<std::size_t>(g)][static_cast<std::size_t>(c)] == best[mask] &&
          ways[prev] > 0.0) {
        out.group_to_cluster[static_cast<std::size_t>(g)] = c;
        mask = prev;
        break;
      }
    }
  }
  return out;
}

}  // namespace

bool correct_classification(const FuzzyPartition& partition,
                            const std::vector<std::string>& truth_labels, double cutoff) {
  if (truth_labels.size() != partition.size)
    raise(Errc::size_mismatch, "truth labels and partition have different sizes");

  // Regular groups in order of first appearance; "none" marks isolation.
  std::unordered_map<std::string, int> group_index;
  std::vector<int> series_group(truth_labels.size(), -1);
  for (std::size_t i = 0; i < truth_labels.size(); ++i) {
    if (truth_labels[i] == "none") continue;
    auto [it, inserted] =
        group_index.emplace(truth_labels[i], static_cast<int>(group_index.size()));
    (void)inserted;
    series_group[i] = it->second;
  }
  const int groups = static_cast<int>(group_index.size());
  if (groups != partition.clusters)
    raise(Errc::size_mismatch, "cluster count must equal the number of regular groups");

  std::vector<std::vector<double>> mass(static_cast<std::size_t>(groups),
                                        std::vector<double>(static_cast<std::size_t>(groups), 0.0));
  for (std::size_t i = 0; i < truth_labels.size(); ++i) {
    if (series_group[i] < 0) continue;
    for (int c = 0; c < partition.clusters; ++c)
      mass[static_cast<std::size_t>(series_group[i])][static_cast<std::size_t>(c)] +=
          partition.membership(i, c);
  }

  const Assignment assignment = assign_groups(mass);
  if (assignment.ambiguous) return false;

  for (std::size_t i = 0; i < truth_labels.size(); ++i) {
    if (series_group[i] >= 0) {
      const int c = assignment.group_to_cluster[static_cast<std::size_t>(series_group[i])];
      if (!(partition.membership(i, c) > cutoff)) return false;
    } else {
      for (int c = 0; c < partition.clusters; ++c)
        if (partition.membership(i, c) > cutoff) return false;
    }
  }
  return true;
}

double aufc(std::span<const double> m_grid, std::span<const double> rates) {
  if (m_grid.size() < 2) raise(Errc::grid_too_small, "AUFC needs at least two grid points");
  if (m_grid.size() != rates.size())
    raise(Errc::size_mismatch, "m-grid and rate curve have different lengths");
  double area = 0.0;
  for (std::size_t k = 1; k < m_grid.size(); ++k) {
    const double dx = m_grid[k] - m_grid[k - 1];
    if (dx <= 0.0) raise(Errc::config_error, "m-grid must be strictly increasing");
    area += 0.5 * dx * (rates[k] + rates[k - 1]);
  }
  return area;
}

namespace {

double normalized_stress(std::span<const double> distance, const std::vector<double>& x,
                         const std::vector<double>& y, double denom_sq) {
  const std::size_t s = x.size();
  double num = 0.0;
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t j = i + 1; j < s; ++j) {
      const double dx = x[i] - x[j];
      const double dy = y[i] - y[j];
      const double fitted = std::sqrt(dx * dx + dy * dy);
      const double resid = fitted - distance[i * s + j];
      num += resid * resid;
    }
  }
  if (denom_sq <= 0.0) return 0.0;
  // Sums over ordered pairs halve both sides identically.
  return std::sqrt(num / denom_sq);
}

/// Leading eigenpair of the shifted matrix by power iteration; `prev`
/// holds already-found eigenvectors to deflate against.
std::vector<double> power_iteration(const std::vector<double>& matrix, std::size_t s, double shift,
                                    const std::vector<std::vector<double>>& prev,
                                    double& eigenvalue) {
  // A distinct start per deflation level: a shared start would lose its
  // entire dominant-eigenspace component when that eigenvalue repeats.
  Rng rng(0x0715C0DE + 0x9E3779B9ULL * (prev.size() + 1));
  std::vector<double> v(s);
  for (auto& e : v) e = rng.next_double() - 0.5;

  std::vector<double> next(s);
  for (int iter = 0; iter < 500; ++iter) {
    for (const auto& p : prev) {
      double proj = 0.0;
      for (std::size_t i = 0; i < s; ++i) proj += v[i] * p[i];
      for (std::size_t i = 0; i < s; ++i) v[i] -= proj * p[i];
    }
    for (std::size_t i = 0; i < s; ++i) {
      double sum = shift * v[i];
      for (std::size_t j = 0; j < s; ++j) sum += matrix[i * s + j] * v[j];
      next[i] = sum;
    }
    double norm = 0.0;
    for (double e : next) norm += e * e;
    norm = std::sqrt(norm);
    if (norm <= 0.0) break;
    double delta = 0.0;
    for (std::size_t i = 0; i < s; ++i) {
      next[i] /= norm;
      delta += std::abs(next[i] - v[i]);
    }
    std::swap(v, next);
    if (delta < 1e-13) break;
  }

  double quad = 0.0;
  for (std::size_t i = 0; i < s; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < s; ++j) sum += matrix[i * s + j] * v[j];
    quad += v[i] * sum;
  }
  eigenvalue = quad;
  return v;
}

}  // namespace

Embedding2D mds_2d(std::span<const double> distance, std::size_t size) {
  Embedding2D out;
  out.x.assign(size, 0.0);
  out.y.assign(size, 0.0);
  if (size < 2) return out;

  const std::size_t s = size;

  // Classical-scaling start: double-center the squared dissimilarities.
  std::vector<double> b(s * s);
  std::vector<double> row_mean(s, 0.0);
  double grand = 0.0;
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t j = 0; j < s; ++j) {
      const double d2 = distance[i * s + j] * distance[i * s + j];
      b[i * s + j] = d2;
      row_mean[i] += d2;
      grand += d2;
    }
    row_mean[i] /= static_cast<double>(s);
  }
  grand /= static_cast<double>(s * s);
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < s; ++j)
      b[i * s + j] = -0.5 * (b[i * s + j] - row_mean[i] - row_mean[j] + grand);

  // Gershgorin shift keeps the power iteration on the algebraically
  // largest eigenvalues.
  double shift = 0.0;
  for (std::size_t i = 0; i < s; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < s; ++j) row += std::abs(b[i * s + j]);
    shift = std::max(shift, row);
  }

  std::vector<std::vector<double>> found;
  double ev1 = 0.0;
  found.push_back(power_iteration(b, s, shift, found, ev1));
  double ev2 = 0.0;
  found.push_back(power_iteration(b, s, shift, found, ev2));

  const double scale1 = std::sqrt(std::max(ev1, 0.0));
  const double scale2 = std::sqrt(std::max(ev2, 0.0));
  for (std::size_t i = 0; i < s; ++i) {
    out.x[i] = scale1 * found[0][i];
    out.y[i] = scale2 * found[1][i];
  }

  double denom_sq = 0.0;
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = i + 1; j < s; ++j)
      denom_sq += distance[i * s + j] * distance[i * s + j];

  // Stress majorization (Guttman transform with unit weights).
  double stress = normalized_stress(distance, out.x, out.y, denom_sq);
  std::vector<double> bx(s), by(s);
  for (int iter = 0; iter < 300; ++iter) {
    std::fill(bx.begin(), bx.end(), 0.0);
    std::fill(by.begin(), by.end(), 0.0);
    for (std::size_t i = 0; i < s; ++i) {
      for (std::size_t j = i + 1; j < s; ++j) {
        const double dx = out.x[i] - out.x[j];
        const double dy = out.y[i] - out.y[j];
        const double fitted = std::sqrt(dx * dx + dy * dy);
        if (fitted <= 0.0) continue;
        const double w = distance[i * s + j] / fitted;
        bx[i] += w * dx;
        bx[j] -= w * dx;
        by[i] += w * dy;
        by[j] -= w * dy;
      }
    }
    // Guttman transform: X <- B(Z)Z/s with B(Z)Z accumulated pairwise in
    // bx/by as sum_j (D_ij / d_ij)(z_i - z_j).
    const double inv_s = 1.0 / static_cast<double>(s);
    for (std::size_t i = 0; i < s; ++i) {
      out.x[i] = bx[i] * inv_s;
      out.y[i] = by[i] * inv_s;
    }

    const double new_stress = normalized_stress(distance, out.x, out.y, denom_sq);
    assert(new_stress <= stress + 1e-12);
    const double improvement = stress - new_stress;
    stress = new_stress;
    if (improvement < 1e-8 * std::max(stress, 1e-30)) break;
  }
  out.stress = stress;

  // Squared Pearson correlation between input and fitted distances.
  double mean_d = 0.0, mean_f = 0.0;
  std::size_t n_pairs = 0;
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t j = i + 1; j < s; ++j) {
      const double dx = out.x[i] - out.x[j];
      const double dy = out.y[i] - out.y[j];
      mean_d += distance[i * s + j];
      mean_f += std::sqrt(dx * dx + dy * dy);
      ++n_pairs;
    }
  }
  mean_d /= static_cast<double>(n_pairs);
  mean_f /= static_cast<double>(n_pairs);
  double cov = 0.0, var_d = 0.0, var_f = 0.0;
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t j = i + 1; j < s; ++j) {
      const double dx = out.x[i] - out.x[j];
      const double dy = out.y[i] - out.y[j];
      const double dd = distance[i * s + j] - mean_d;
      const double df = std::sqrt(dx * dx + dy * dy) - mean_f;
      cov += dd * df;
      var_d += dd * dd;
      var_f += df * df;
    }
  }
  out.r_squared = (var_d > 0.0 && var_f > 0.0) ? (cov * cov) / (var_d * var_f) : 1.0;
  return out;
}

Embedding2D mds_2d(const DistanceMatrix& matrix) {
  return mds_2d(matrix.totals(), matrix.size());
}

bool ValidityIndices::finite() const {
  return std::isfinite(xie_beni) && std::isfinite(kwon) && std::isfinite(tang) &&
         std::isfinite(bensaid);
}

ValidityIndices validity_indices(const FuzzyPartition& partition, std::span<const double> distance,
                                 std::size_t size, double fuzziness) {
  const int clusters = partition.clusters;
  const auto& medoids = partition.medoids;

  double compact = 0.0;
  std::vector<double> cluster_compact(static_cast<std::size_t>(clusters), 0.0);
  std::vector<double> cluster_mass(static_cast<std::size_t>(clusters), 0.0);
  std::vector<double> cluster_mean_dist(static_cast<std::size_t>(clusters), 0.0);
  for (std::size_t i = 0; i < size; ++i) {
    for (int c = 0; c < clusters; ++c) {
      const double u = partition.membership(i, c);
      const double d = distance[i * size + medoids[static_cast<std::size_t>(c)]];
      const double term = std::pow(u, fuzziness) * d;
      compact += term;
      cluster_compact[static_cast<std::size_t>(c)] += term;
      cluster_mass[static_cast<std::size_t>(c)] += u;
      cluster_mean_dist[static_cast<std::size_t>(c)] += d;
    }
  }

  double sep_min = kInf;
  double sep_sum = 0.0;
  for (int c = 0; c < clusters; ++c) {
    for (int c2 = 0; c2 < clusters; ++c2) {
      if (c == c2) continue;
      const double d =
          distance[medoids[static_cast<std::size_t>(c)] * size + medoids[static_cast<std::size_t>(c2)]];
      sep_min = std::min(sep_min, d);
      sep_sum += d;
    }
  }

  ValidityIndices out;
  const double s_d = static_cast<double>(size);
  const double c_d = static_cast<double>(clusters);

  if (sep_min <= 0.0) {
    out.xie_beni = out.kwon = out.tang = out.bensaid = kInf;
    return out;
  }

  out.xie_beni = compact / (s_d * sep_min);

  double kwon_penalty = 0.0;
  for (int c = 0; c < clusters; ++c)
    kwon_penalty += cluster_mean_dist[static_cast<std::size_t>(c)] / s_d;
  kwon_penalty /= c_d;
  out.kwon = (compact + kwon_penalty) / (s_d * sep_min);

  const double tang_penalty = sep_sum / (c_d * (c_d - 1.0));
  out.tang = (compact + tang_penalty) / (s_d * sep_min + 1.0 / c_d);

  out.bensaid = 0.0;
  for (int c = 0; c < clusters; ++c) {
    double c_sep = 0.0;
    for (int c2 = 0; c2 < clusters; ++c2) {
      if (c2 == c) continue;
      c_sep +=
          distance[medoids[static_cast<std::size_t>(c)] * size + medoids[static_cast<std::size_t>(c2)]];
    }
    const double denom = cluster_mass[static_cast<std::size_t>(c)] * c_sep;
    if (denom <= 0.0) {
      out.bensaid = kInf;
      break;
    }
    out.bensaid += cluster_compact[static_cast<std::size_t>(c)] / denom;
  }
  return out;
}

GridSelection select_c_m(const DistanceMatrix& matrix, std::span<const int> c_grid,
                         std::span<const double> m_grid, std::uint64_t seed, int restarts,
                         int max_iter, unsigned threads) {
  if (c_grid.empty() || m_grid.empty())
    raise(Errc::config_error, "the (C, m) grid must be nonempty");
  const std::size_t s = matrix.size();
  for (int c : c_grid) {
    if (c < 2 || static_cast<std::size_t>(c) >= s)
      raise(Errc::config_error,
            "cluster grid values must lie in [2, s-1], got " + std::to_string(c));
  }

  GridSelection sel;
  sel.cells.resize(c_grid.size() * m_grid.size());
  const auto totals = matrix.totals();

  parallel_for(
      sel.cells.size(),
      [&](std::size_t cell) {
        const std::size_t ci = cell / m_grid.size();
        const std::size_t mi = cell % m_grid.size();
        GridCell& out = sel.cells[cell];
        out.clusters = c_grid[ci];
        out.fuzziness = m_grid[mi];

        ClusterConfig cfg;
        cfg.clusters = c_grid[ci];
        cfg.fuzziness = m_grid[mi];
        cfg.max_iter = max_iter;
        cfg.seed = seed + cell * 101;
        const FuzzyPartition part = cluster_with_restarts(matrix, cfg, restarts, 1);
        out.indices = validity_indices(part, totals, s, cfg.fuzziness);
        out.valid = out.indices.finite();
      },
      threads);

  // z-standardize each index over valid cells, then average.
  const auto component = [](const GridCell& cell, int k) {
    switch (k) {
      case 0: return cell.indices.xie_beni;
      case 1: return cell.indices.kwon;
      case 2: return cell.indices.tang;
      default: return cell.indices.bensaid;
    }
  };

  double mean[4] = {0, 0, 0, 0};
  double sd[4] = {0, 0, 0, 0};
  std::size_t n_valid = 0;
  for (const auto& cell : sel.cells) {
    if (!cell.valid) continue;
    ++n_valid;
    for (int k = 0; k < 4; ++k) mean[k] += component(cell, k);
  }
  if (n_valid == 0) raise(Errc::all_cells_degenerate, "every grid cell produced degenerate indices");
  for (int k = 0; k < 4; ++k) mean[k] /= static_cast<double>(n_valid);
  for (const auto& cell : sel.cells) {
    if (!cell.valid) continue;
    for (int k = 0; k < 4; ++k) {
      const double d = component(cell, k) - mean[k];
      sd[k] += d * d;
    }
  }
  for (int k = 0; k < 4; ++k) sd[k] = std::sqrt(sd[k] / static_cast<double>(n_valid));

  std::size_t best = sel.cells.size();
  double best_avg = kInf;
  for (std::size_t i = 0; i < sel.cells.size(); ++i) {
    auto& cell = sel.cells[i];
    if (!cell.valid) continue;
    double avg = 0.0;
    for (int k = 0; k < 4; ++k)
      avg += sd[k] > 0.0 ? (component(cell, k) - mean[k]) / sd[k] : 0.0;
    avg /= 4.0;
    cell.standardized_average = avg;
    if (avg < best_avg) {
      best_avg = avg;
      best = i;
    }
  }

  sel.best_clusters = sel.cells[best].clusters;
  sel.best_fuzziness = sel.cells[best].fuzziness;
  return sel;
}

}  // namespace otsclust
