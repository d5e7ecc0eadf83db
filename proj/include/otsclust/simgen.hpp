#pragma once

// Seeded simulators for three families of ordinal generating processes
// (binomial AR(p) via thinning, binomial INARCH(p), ordinal logit AR(1))
// and the catalog of benchmark scenarios built from them. All draws come
// from the fixed in-house generator so outputs are bit-identical across
// platforms for a given seed.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "otsclust/core.hpp"
#include "otsclust/rng.hpp"

namespace otsclust {

/// Binomial AR(p): C_t = alpha o C_{t-i*} + beta o (n - C_{t-i*}), where
/// i* is drawn from the mixing weights phi and o is binomial thinning.
struct BinomialArParams {
  int n = 1;
  double alpha = 0.5;
  double beta = 0.5;
  std::vector<double> phi = {1.0};  // order p = phi.size()

  int order() const { return static_cast<int>(phi.size()); }
  /// Stationary marginal success probability beta / (1 + beta - alpha).
  double stationary_pi() const { return beta / (1.0 + beta - alpha); }
  void validate() const;
};

/// Binomial INARCH(p): C_t | past ~ Bin(n, beta + (1/n) sum alpha_i C_{t-i}).
/// The per-step success probability is normalized by the range size so the
/// admissibility condition beta + sum alpha_i in (0,1) bounds it in (0,1).
struct BinomialInarchParams {
  int n = 1;
  std::vector<double> alphas = {0.0};
  double beta = 0.5;

  int order() const { return static_cast<int>(alphas.size()); }
  void validate() const;
};

/// Ordinal logit AR(1): C_t = j iff Q_t - alpha^T Y*_{t-1} lands in
/// [eta_{j-1}, eta_j), with Q_t standard logistic and Y*_{t-1} the reduced
/// binarization of the previous state.
struct OrdinalLogitParams {
  int n = 1;
  std::vector<double> alpha;       // length n
  std::vector<double> thresholds;  // eta_0 < ... < eta_{n-1}

  void validate() const;
};

/// y independent Bernoulli(a) successes: a draw from Bin(y, a).
int binomial_thinning(int y, double a, Rng& rng);

OrdinalSeries simulate_binomial_ar(const BinomialArParams& params, std::size_t length, Rng& rng,
                                   std::string id = "binar");
OrdinalSeries simulate_binomial_inarch(const BinomialInarchParams& params, std::size_t length,
                                       Rng& rng, std::string id = "inarch");
OrdinalSeries simulate_ordinal_logit_ar1(const OrdinalLogitParams& params, std::size_t length,
                                         Rng& rng, std::string id = "logit");

struct LabeledDataSet {
  std::vector<OrdinalSeries> series;
  std::vector<std::string> labels;  // ground-truth cluster per series; "none" = isolated
  int scenario = 0;
};

/// Benchmark scenario catalog (ids 1..7). Fixed-length scenarios require
/// `length`; scenario 5 draws range size, cluster sizes and lengths itself
/// when `length` is empty.
LabeledDataSet scenario(int id, std::optional<std::size_t> length, std::uint64_t seed);

}  // namespace otsclust
