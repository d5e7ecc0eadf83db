#include <doctest.h>

#include <cmath>
#include <vector>

#include "otsclust/core.hpp"
#include "otsclust/estimation.hpp"
#include "otsclust/metrics.hpp"
#include "otsclust/rng.hpp"

using namespace otsclust;

namespace {

/// Repr with prescribed cumulative marginal / pmf; joint blocks are the
/// independence products so the object stays internally consistent.
SeriesRepr repr_from_pmf(const std::vector<double>& pmf, const LagSet& lags, std::string id) {
  SeriesRepr r;
  r.id = std::move(id);
  r.n = static_cast<int>(pmf.size()) - 1;
  r.length = 1000;
  r.lags = lags;
  r.pmf = pmf;
  double acc = 0.0;
  for (int i = 0; i < r.n; ++i) {
    acc += pmf[static_cast<std::size_t>(i)];
    r.cum_marginal.push_back(acc);
  }
  for (std::size_t k = 0; k < lags.size(); ++k) {
    for (int i = 0; i < r.n; ++i)
      for (int j = 0; j < r.n; ++j)
        r.cum_joint.push_back(r.cum_marginal[static_cast<std::size_t>(i)] *
                              r.cum_marginal[static_cast<std::size_t>(j)]);
    for (int i = 0; i <= r.n; ++i)
      for (int j = 0; j <= r.n; ++j)
        r.joint_pmf.push_back(pmf[static_cast<std::size_t>(i)] * pmf[static_cast<std::size_t>(j)]);
  }
  CumulativeMarginal cm;
  cm.n = r.n;
  cm.f = r.cum_marginal;
  r.features = marginal_features(cm);
  r.features.kappas.assign(lags.size(), 0.0);
  r.acf.assign(lags.size(), 0.0);
  return r;
}

std::vector<double> random_pmf(int n, Rng& rng) {
  std::vector<double> p(static_cast<std::size_t>(n) + 1);
  double sum = 0.0;
  for (auto& v : p) {
    v = rng.next_double() + 1e-3;
    sum += v;
  }
  for (auto& v : p) v /= sum;
  return p;
}

OrdinalSeries random_series(int n, std::size_t length, Rng& rng, std::string id) {
  std::vector<int> states(length);
  for (auto& s : states) s = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(n) + 1));
  return validate_series(std::move(id), std::move(states), n);
}

}  // namespace

TEST_SUITE("metrics") {

// Marginal pmfs of the three-process toy comparison; the cumulative
// metric separates adjacent-category mass moves from distant ones.
const std::vector<double> kToy1 = {0.4, 0.1, 0.1, 0.4};
const std::vector<double> kToy2 = {0.1, 0.4, 0.1, 0.4};
const std::vector<double> kToy3 = {0.1, 0.1, 0.4, 0.4};

TEST_CASE("toy three-process marginal distances") {
  const LagSet lags({1});
  const auto r1 = repr_from_pmf(kToy1, lags, "p1");
  const auto r2 = repr_from_pmf(kToy2, lags, "p2");
  const auto r3 = repr_from_pmf(kToy3, lags, "p3");

  CHECK(d1_components(r1, r2).marginal == doctest::Approx(0.09).epsilon(1e-12));
  CHECK(d1_components(r2, r3).marginal == doctest::Approx(0.09).epsilon(1e-12));
  CHECK(d1_components(r1, r3).marginal == doctest::Approx(0.18).epsilon(1e-12));

  // The mass metric sees the three processes as equidistant.
  CHECK(d_pmf_components(r1, r2).marginal == doctest::Approx(0.18).epsilon(1e-12));
  CHECK(d_pmf_components(r2, r3).marginal == doctest::Approx(0.18).epsilon(1e-12));
  CHECK(d_pmf_components(r1, r3).marginal == doctest::Approx(0.18).epsilon(1e-12));

  // Moving mass to an adjacent category costs less than to a distant one.
  CHECK(d1_components(r1, r2).total() < d1_components(r1, r3).total());
}

TEST_CASE("identity distances vanish") {
  const LagSet lags({1, 2});
  Rng rng(17);
  const auto series = random_series(4, 150, rng, "x");
  const auto repr = build_repr(series, lags);
  for (const Metric metric : {Metric::d1, Metric::d2, Metric::pmf, Metric::acf}) {
    const auto rec = distance_components(metric, repr, repr);
    CHECK(rec.marginal == 0.0);
    CHECK(rec.serial == 0.0);
    CHECK(rec.total() == 0.0);
  }
}

TEST_CASE("d2 direct formula pieces") {
  const LagSet lags({1});
  auto a = repr_from_pmf({0.25, 0.25, 0.25, 0.25}, lags, "a");
  auto b = a;
  b.features.kappas[0] = a.features.kappas[0] + 0.5;
  const auto rec = d2_components(a, b);
  CHECK(rec.marginal == doctest::Approx(0.0));
  CHECK(rec.serial == doctest::Approx(0.25).epsilon(1e-12));

  // Location differing by n contributes exactly 1 after normalization.
  auto c = a;
  c.features.kappas = a.features.kappas;
  c.features.loc = a.features.loc + a.n;
  const auto loc_rec = d2_components(a, c);
  CHECK(loc_rec.marginal == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("d_acf direct formula") {
  const LagSet lags({1});
  auto a = repr_from_pmf({0.5, 0.5}, lags, "a");
  auto b = a;
  a.acf[0] = 0.5;
  b.acf[0] = 0.1;
  const auto rec = d_acf_components(a, b);
  CHECK(rec.marginal == 0.0);
  CHECK(rec.serial == doctest::Approx(0.16).epsilon(1e-12));
}

TEST_CASE("proposition form equals the cumulative form") {
  const LagSet lags({1});
  Rng rng(23);
  for (int rep = 0; rep < 200; ++rep) {
    const int n = 1 + static_cast<int>(rng.uniform_int(8));
    const auto p = random_pmf(n, rng);
    const auto q = random_pmf(n, rng);
    const auto rp = repr_from_pmf(p, lags, "p");
    const auto rq = repr_from_pmf(q, lags, "q");
    const double via_cumulative = d1_components(rp, rq).marginal;
    const double via_pmf = d1m_via_pmf(p, q);
    CHECK(std::abs(via_cumulative - via_pmf) < 1e-12);
  }
  CHECK(d1m_via_pmf(kToy1, kToy1) == doctest::Approx(0.0));
  CHECK(d1m_via_pmf(kToy1, kToy2) == doctest::Approx(0.09).epsilon(1e-12));
  const std::vector<double> two_states = {0.5, 0.5};
  CHECK_THROWS_AS(d1m_via_pmf(kToy1, two_states), Error);
}

TEST_CASE("range and lag mismatches are rejected") {
  const auto a = repr_from_pmf({0.5, 0.5}, LagSet({1}), "a");
  const auto b = repr_from_pmf({0.3, 0.3, 0.4}, LagSet({1}), "b");
  CHECK_THROWS_AS(d1_components(a, b), Error);
  const auto c = repr_from_pmf({0.5, 0.5}, LagSet({1, 2}), "c");
  try {
    d2_components(a, c);
    FAIL("expected lag_mismatch");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::lag_mismatch);
  }
}

TEST_CASE("metrics are symmetric, nonnegative and label-shift invariant") {
  const LagSet lags({1, 2});
  Rng rng(29);
  for (int rep = 0; rep < 10; ++rep) {
    const int n = 2 + static_cast<int>(rng.uniform_int(4));
    auto s1 = random_series(n, 120, rng, "s1");
    auto s2 = random_series(n, 90, rng, "s2");
    const auto r1 = build_repr(s1, lags);
    const auto r2 = build_repr(s2, lags);
    for (const Metric metric : {Metric::d1, Metric::d2, Metric::pmf, Metric::acf}) {
      const auto ab = distance_components(metric, r1, r2);
      const auto ba = distance_components(metric, r2, r1);
      CHECK(ab.marginal == doctest::Approx(ba.marginal).epsilon(1e-12));
      CHECK(ab.serial == doctest::Approx(ba.serial).epsilon(1e-12));
      CHECK(ab.marginal >= 0.0);
      CHECK(ab.serial >= 0.0);
      CHECK(ab.total() == doctest::Approx(ab.marginal + ab.serial));
    }

    // Relabeling states in an order-preserving way changes nothing: the
    // metrics only see count indices, so two series with identical index
    // sequences but different display labels are equidistant.
    std::vector<std::string> labels(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) labels[static_cast<std::size_t>(i)] = "L" + std::to_string(i);
    const auto relabeled = validate_series("s1r", s1.states, n, labels);
    const auto r1r = build_repr(relabeled, lags);
    for (const Metric metric : {Metric::d1, Metric::d2, Metric::pmf, Metric::acf}) {
      const auto base = distance_components(metric, r1, r2);
      const auto shifted = distance_components(metric, r1r, r2);
      CHECK(base.marginal == shifted.marginal);
      CHECK(base.serial == shifted.serial);
    }
  }
}

TEST_CASE("pairwise matrix honors contracts") {
  const LagSet lags({1});
  Rng rng(37);
  std::vector<OrdinalSeries> data;
  data.push_back(random_series(3, 80, rng, "a"));
  data.push_back(random_series(3, 100, rng, "b"));
  data.push_back(random_series(3, 120, rng, "c"));
  data.push_back(data[0]);
  data.back().id = "a_copy";

  const auto matrix = pairwise_matrix(data, Metric::d1, lags);
  CHECK(matrix.size() == 4);
  CHECK(matrix.ids()[0] == "a");

  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(matrix.total(i, i) == 0.0);
    for (std::size_t j = 0; j < 4; ++j) {
      CHECK(matrix.total(i, j) == matrix.total(j, i));
      CHECK(matrix.total(i, j) >= 0.0);
    }
  }
  // Identical series sit at distance zero.
  CHECK(matrix.total(0, 3) == 0.0);

  // Single series: 1x1 zero matrix.
  const auto single = pairwise_matrix({data[0]}, Metric::d2, lags);
  CHECK(single.size() == 1);
  CHECK(single.total(0, 0) == 0.0);

  // Parallel build equals the serial build.
  const auto par = pairwise_matrix(data, Metric::d1, lags, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) CHECK(par.total(i, j) == matrix.total(i, j));
}

TEST_CASE("mixed ranges are rejected in matrix builds") {
  const LagSet lags({1});
  Rng rng(41);
  std::vector<OrdinalSeries> data;
  data.push_back(random_series(3, 80, rng, "a"));
  data.push_back(random_series(4, 80, rng, "b"));
  CHECK_THROWS_AS(pairwise_matrix(data, Metric::d1, lags), Error);
}

}  // TEST_SUITE
