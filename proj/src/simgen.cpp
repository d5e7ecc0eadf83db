#include "otsclust/simgen.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace otsclust {

namespace {

constexpr std::size_t kBurnIn = 500;

void require(bool ok, const std::string& what) {
  if (!ok) raise(Errc::invalid_params, what);
}

}  // namespace

void BinomialArParams::validate() const {
  require(n >= 1, "binomial AR range needs n >= 1");
  require(alpha > 0.0 && alpha < 1.0, "binomial AR alpha must lie in (0, 1)");
  require(beta > 0.0 && beta < 1.0, "binomial AR beta must lie in (0, 1)");
  require(!phi.empty(), "binomial AR needs at least one mixing weight");
  double sum = 0.0;
  for (double w : phi) {
    require(w >= 0.0, "mixing weights must be nonnegative");
    sum += w;
  }
  require(std::abs(sum - 1.0) < 1e-9, "mixing weights must sum to 1");
  const double pi = stationary_pi();
  require(pi > 0.0 && pi < 1.0, "implied stationary probability outside (0, 1)");
}

void BinomialInarchParams::validate() const {
  require(n >= 1, "binomial INARCH range needs n >= 1");
  require(beta > 0.0 && beta < 1.0, "binomial INARCH beta must lie in (0, 1)");
  require(!alphas.empty(), "binomial INARCH needs at least one alpha");
  double sum = beta;
  for (double a : alphas) {
    require(a >= 0.0, "INARCH alphas must be nonnegative");
    sum += a;
  }
  require(sum < 1.0, "beta + sum(alpha) must stay below 1");
}

void OrdinalLogitParams::validate() const {
  require(n >= 1, "ordinal logit range needs n >= 1");
  require(static_cast<int>(alpha.size()) == n, "alpha must have length n");
  require(static_cast<int>(thresholds.size()) == n, "thresholds must have length n");
  for (std::size_t i = 1; i < thresholds.size(); ++i)
    require(thresholds[i] > thresholds[i - 1], "thresholds must be strictly increasing");
}

int binomial_thinning(int y, double a, Rng& rng) {
  return rng.binomial(y, a);
}

OrdinalSeries simulate_binomial_ar(const BinomialArParams& params, std::size_t length, Rng& rng,
                                   std::string id) {
  params.validate();
  const int p = params.order();
  require(length > static_cast<std::size_t>(p), "series length must exceed the model order");

  const double pi = params.stationary_pi();
  std::vector<int> history(static_cast<std::size_t>(p));
  for (auto& h : history) h = rng.binomial(params.n, pi);

  auto step = [&]() {
    const int pick = (p == 1) ? 0 : rng.categorical(params.phi);
    const int prev = history[static_cast<std::size_t>(pick)];
    const int value = binomial_thinning(prev, params.alpha, rng) +
                      binomial_thinning(params.n - prev, params.beta, rng);
    // Shift the lag window: history[k] holds C_{t-1-k}.
    for (int k = p - 1; k > 0; --k)
      history[static_cast<std::size_t>(k)] = history[static_cast<std::size_t>(k - 1)];
    history[0] = value;
    return value;
  };

  for (std::size_t t = 0; t < kBurnIn; ++t) step();

  std::vector<int> states(length);
  for (auto& s : states) s = step();
  return validate_series(std::move(id), std::move(states), params.n);
}

OrdinalSeries simulate_binomial_inarch(const BinomialInarchParams& params, std::size_t length,
                                       Rng& rng, std::string id) {
  params.validate();
  const int p = params.order();
  require(length > static_cast<std::size_t>(p), "series length must exceed the model order");

  std::vector<int> history(static_cast<std::size_t>(p), 0);

  auto step = [&]() {
    double prob = params.beta;
    for (int k = 0; k < p; ++k)
      prob += params.alphas[static_cast<std::size_t>(k)] *
              static_cast<double>(history[static_cast<std::size_t>(k)]) /
              static_cast<double>(params.n);
    assert(prob >= 0.0 && prob <= 1.0);
    const int value = rng.binomial(params.n, prob);
    for (int k = p - 1; k > 0; --k)
      history[static_cast<std::size_t>(k)] = history[static_cast<std::size_t>(k - 1)];
    history[0] = value;
    return value;
  };

  for (std::size_t t = 0; t < kBurnIn; ++t) step();

  std::vector<int> states(length);
  for (auto& s : states) s = step();
  return validate_series(std::move(id), std::move(states), params.n);
}

OrdinalSeries simulate_ordinal_logit_ar1(const OrdinalLogitParams& params, std::size_t length,
                                         Rng& rng, std::string id) {
  params.validate();
  require(length >= 2, "series length must be at least 2");

  auto classify = [&](double value) {
    // C = j iff value in [eta_{j-1}, eta_j) with eta_{-1} = -inf, eta_n = +inf.
    const auto it = std::upper_bound(params.thresholds.begin(), params.thresholds.end(), value);
    return static_cast<int>(it - params.thresholds.begin());
  };
  auto regression = [&](int prev) {
    // alpha^T Y*: the reduced binarization drops the last state.
    return prev < params.n ? params.alpha[static_cast<std::size_t>(prev)] : 0.0;
  };

  int current = classify(rng.logistic());
  for (std::size_t t = 0; t < kBurnIn; ++t) current = classify(rng.logistic() - regression(current));

  std::vector<int> states(length);
  for (auto& s : states) {
    current = classify(rng.logistic() - regression(current));
    s = current;
  }
  return validate_series(std::move(id), std::move(states), params.n);
}

namespace {

struct ClusterGen {
  enum class Kind { binomial_ar, binomial_inarch, ordinal_logit } kind;
  BinomialArParams ar;
  BinomialInarchParams inarch;
  OrdinalLogitParams logit;

  static ClusterGen binomial(BinomialArParams p) {
    return ClusterGen{Kind::binomial_ar, std::move(p), {}, {}};
  }
  static ClusterGen inarch_model(BinomialInarchParams p) {
    return ClusterGen{Kind::binomial_inarch, {}, std::move(p), {}};
  }
  static ClusterGen logit_model(OrdinalLogitParams p) {
    return ClusterGen{Kind::ordinal_logit, {}, {}, std::move(p)};
  }

  OrdinalSeries simulate(std::size_t length, Rng& rng, std::string id) const {
    switch (kind) {
      case Kind::binomial_ar: return simulate_binomial_ar(ar, length, rng, std::move(id));
      case Kind::binomial_inarch:
        return simulate_binomial_inarch(inarch, length, rng, std::move(id));
      case Kind::ordinal_logit:
        return simulate_ordinal_logit_ar1(logit, length, rng, std::move(id));
    }
    raise(Errc::invalid_params, "unreachable generator kind");
  }
};

/// Step-1 thresholds centered at zero: for n = 5 this is (-2,-1,0,1,2).
std::vector<double> centered_thresholds(int n) {
  std::vector<double> eta(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    eta[static_cast<std::size_t>(i)] = static_cast<double>(i) - 0.5 * static_cast<double>(n - 1);
  return eta;
}

/// Linear ramp scale*(i+1)/n with the second entry negated; reproduces the
/// catalog coefficient vectors at n = 5 (e.g. scale 5 -> (1,-2,3,4,5)).
std::vector<double> ramp_alpha(int n, double scale) {
  std::vector<double> alpha(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    alpha[static_cast<std::size_t>(i)] = scale * static_cast<double>(i + 1) / static_cast<double>(n);
  if (n >= 2) alpha[1] = -alpha[1];
  return alpha;
}

OrdinalLogitParams logit_cluster(int n, double scale) {
  return OrdinalLogitParams{n, ramp_alpha(n, scale), centered_thresholds(n)};
}

std::vector<ClusterGen> scenario_generators(int id, int n) {
  switch (id) {
    case 1:
      return {ClusterGen::binomial({n, 0.70, 0.20, {1.0}}),
              ClusterGen::binomial({n, 0.72, 0.12, {1.0}}),
              ClusterGen::binomial({n, 0.76, 0.06, {0.5, 0.5}}),
              ClusterGen::binomial({n, 0.91, 0.01, {0.5, 0.5}})};
    case 2:
      return {ClusterGen::inarch_model({n, {0.30}, 0.35}),
              ClusterGen::inarch_model({n, {0.30}, 0.40}),
              ClusterGen::inarch_model({n, {0.1, 0.1}, 0.2}),
              ClusterGen::inarch_model({n, {0.1, 0.1}, 0.4})};
    case 3:
      return {ClusterGen::logit_model(logit_cluster(n, 2.0)),
              ClusterGen::logit_model(logit_cluster(n, 3.0)),
              ClusterGen::logit_model(logit_cluster(n, 4.0)),
              ClusterGen::logit_model(logit_cluster(n, 5.0))};
    case 4:
    case 5:
      return {ClusterGen::binomial({n, 0.70, 0.20, {1.0}}),
              ClusterGen::binomial({n, 0.72, 0.12, {1.0}}),
              ClusterGen::logit_model(logit_cluster(n, 5.0)),
              ClusterGen::inarch_model({n, {0.1, 0.3, 0.2}, 0.2}),
              ClusterGen::inarch_model({n, {0.1, 0.2, 0.3}, 0.2}),
              ClusterGen::inarch_model({n, {0.1, 0.25, 0.25}, 0.2})};
    case 6:
      return {ClusterGen::binomial({n, 0.52, 0.12, {1.0}}),
              ClusterGen::binomial({n, 0.42, 0.07, {0.1, 0.9}}),
              ClusterGen::logit_model(
                  OrdinalLogitParams{n, {0.5, -1.0, 1.5, 2.0, 2.5}, centered_thresholds(n)})};
    case 7:
      return {ClusterGen::inarch_model({n, {0.1, 0.1}, 0.1}),
              ClusterGen::inarch_model({n, {0.5, 0.1}, 0.1}),
              ClusterGen::logit_model(
                  OrdinalLogitParams{n, {0.5, -1.0, 1.5, 2.0, 2.5}, centered_thresholds(n)})};
    default:
      raise(Errc::unknown_scenario, "scenario id must lie in 1..7, got " + std::to_string(id));
  }
}

}  // namespace

LabeledDataSet scenario(int id, std::optional<std::size_t> length, std::uint64_t seed) {
  if (id < 1 || id > 7)
    raise(Errc::unknown_scenario, "scenario id must lie in 1..7, got " + std::to_string(id));

  const bool isolated = (id == 6 || id == 7);
  int n = 5;
  std::vector<std::size_t> cluster_sizes;
  std::vector<std::size_t> lengths;

  // Stream 0 drives the scenario-level draws; series i uses stream i + 1.
  Rng config_rng = Rng::derive(seed, 0);

  if (id == 5) {
    n = static_cast<int>(config_rng.uniform_int(10)) + 1;
    const std::size_t clusters = 6;
    std::size_t total = 0;
    for (std::size_t c = 0; c < clusters; ++c) {
      cluster_sizes.push_back(config_rng.uniform_int(9) + 2);  // {2..10}
      total += cluster_sizes.back();
    }
    lengths.resize(total);
    for (auto& t : lengths) {
      if (length) {
        t = *length;
      } else {
        t = 100 * (config_rng.uniform_int(5) + 1);  // {100,...,500}
      }
    }
  } else {
    if (!length)
      raise(Errc::config_error, "scenario " + std::to_string(id) + " needs a fixed series length");
    const std::size_t regular_clusters = isolated ? 2 : (id == 4 ? 6 : 4);
    cluster_sizes.assign(regular_clusters, 5);
    std::size_t total = regular_clusters * 5 + (isolated ? 1 : 0);
    lengths.assign(total, *length);
  }

  const auto generators = scenario_generators(id, n);

  LabeledDataSet out;
  out.scenario = id;
  std::size_t series_index = 0;
  for (std::size_t c = 0; c < cluster_sizes.size(); ++c) {
    for (std::size_t k = 0; k < cluster_sizes[c]; ++k) {
      Rng rng = Rng::derive(seed, series_index + 1);
      const std::string sid = "c" + std::to_string(c + 1) + "_" + std::to_string(k + 1);
      out.series.push_back(generators[c].simulate(lengths[series_index], rng, sid));
      out.labels.push_back(std::to_string(c + 1));
      ++series_index;
    }
  }
  if (isolated) {
    Rng rng = Rng::derive(seed, series_index + 1);
    out.series.push_back(generators.back().simulate(lengths[series_index], rng, "iso"));
    out.labels.push_back("none");
    ++series_index;
  }
  return out;
}

}  // namespace otsclust
