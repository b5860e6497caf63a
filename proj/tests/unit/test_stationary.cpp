#include <doctest.h>

#include <cmath>
#include <functional>
#include <sstream>

#include "kpzlab/common/errors.hpp"
#include "kpzlab/common/rng.hpp"
#include "kpzlab/stationary/stationary.hpp"

using namespace kpzlab;
using namespace kpzlab::stationary;

namespace {

double combined(double a, double b) { return std::sqrt(a * a + b * b); }

}  // namespace

TEST_SUITE("bm drift") {
  TEST_CASE("drift and variance of the endpoint") {
    const SampleEnsemble e = sample_bm_drift(0.5, 64, 10000, 4);
    for (const auto& r : e.rows) REQUIRE(r.values[0] == 0.0);
    const MarginalMoments m = sample_moments(e.column(64), 1.0);
    CHECK(std::abs(m.mean.value - 0.5) < 3.0 / 100.0);
    CHECK(std::abs(m.variance.value - 1.0) < 3.0 * m.variance.se);
    CHECK(e.get("source") == "bm-drift");
  }
}

TEST_SUITE("rn weight") {
  TEST_CASE("closed forms") {
    CHECK(rn_log_weight(std::vector<double>(65, 0.0), 1.0 / 64, 1.0, 1.0) == 0.0);
    const int n = 4096;
    std::vector<double> line(n + 1);
    for (int j = 0; j <= n; ++j) line[j] = double(j) / n;
    const double expect = -2.0 - 2.0 * std::log((1.0 - std::exp(-2.0)) / 2.0);
    CHECK(rn_log_weight(line, 1.0 / n, 1.0, 1.0) == doctest::Approx(expect).epsilon(1e-7));
  }

  TEST_CASE("grid halving") {
    auto smooth = [](int n) {
      std::vector<double> b(n + 1);
      for (int j = 0; j <= n; ++j) b[j] = 0.8 * std::sin(2.0 * double(j) / n) - 0.3 * double(j) * j / n / n;
      return b;
    };
    auto line = [](int n) {
      std::vector<double> b(n + 1);
      for (int j = 0; j <= n; ++j) b[j] = double(j) / n;
      return b;
    };
    for (const auto& beta : {std::function<std::vector<double>(int)>(smooth), std::function<std::vector<double>(int)>(line)}) {
      const double w64 = rn_log_weight(beta(64), 1.0 / 64, 1.0, 1.0);
      const double w128 = rn_log_weight(beta(128), 1.0 / 128, 1.0, 1.0);
      const double w256 = rn_log_weight(beta(256), 1.0 / 256, 1.0, 1.0);
      CHECK(std::abs(w128 - w256) < 1e-4);
      // trapezoid rule: second order
      CHECK((w64 - w128) / (w128 - w256) == doctest::Approx(4.0).epsilon(0.02));
    }
  }
}

TEST_SUITE("mcmc") {
  TEST_CASE("configuration and regime guard") {
    McmcConfig c;
    c.rho = 1.0;
    CHECK_THROWS_WITH_AS(c.validate(), doctest::Contains("rho"), ConfigError);
    c.rho = 0.5;
    c.burn_in = c.length;
    CHECK_THROWS_WITH_AS(c.validate(), doctest::Contains("burn_in"), ConfigError);
    c = McmcConfig{};
    c.length = 3000;
    CHECK_THROWS_WITH_AS(sample_stationary_mcmc(0.5, -0.5, c), doctest::Contains("outside proven regime"), RegimeError);
    CHECK_THROWS_AS(sample_stationary_mcmc(-1.5, 2.0, c), RegimeError);
    CHECK_THROWS_AS(estimate_normalization(0.0, 0.0, 100, 1), RegimeError);
    c.allow_outside_regime = true;
    CHECK_NOTHROW(sample_stationary_mcmc(0.5, -0.5, c));
  }

  TEST_CASE("pCN proposal is reversible for the reference") {
    auto rng = make_stream(1, 0, StreamTag::experiment);
    std::normal_distribution<double> nd;
    for (double rho : {0.1, 0.5, 0.9}) {
      std::vector<double> a(64), b(64);
      for (auto& z : a) z = nd(rng);
      for (std::size_t k = 0; k < b.size(); ++k) b[k] = std::sqrt(1 - rho * rho) * a[k] + rho * nd(rng);
      CHECK(pcn_log_joint(a, b, rho) == doctest::Approx(pcn_log_joint(b, a, rho)).epsilon(1e-12));
    }
  }

  TEST_CASE("neutral weight reproduces the reference covariance") {
    McmcConfig c;
    c.neutral_weight = true;
    c.seed = 3;
    c.length = 102000;  // 10^4 kept states
    const McmcResult r = sample_stationary_mcmc(0.0, 0.0, c);
    CHECK(r.samples.rows.size() == 10000u);
    CHECK(r.acceptance_rate == 1.0);
    CHECK(!r.warnings.empty());
    const int nodes[] = {8, 16, 32, 48, 64};
    const std::size_t n = r.betas.size();
    for (int i : nodes) {
      for (int j : nodes) {
        std::vector<double> prod(n);
        for (std::size_t k = 0; k < n; ++k) prod[k] = r.betas[k][i] * r.betas[k][j];
        const MarginalMoments m = sample_moments(prod, 0.0, integrated_autocorrelation(prod));
        const double expect = 0.5 * std::min(i, j) / 64.0;
        INFO("x = " << i / 64.0 << ", y = " << j / 64.0);
        CHECK(std::abs(m.mean.value - expect) < 3.0 * m.mean.se);
      }
    }
    for (int j : {16, 32, 64}) {
      const MarginalMoments m = sample_moments(r.samples.column(j), j / 64.0, 1.0);
      CHECK(std::abs(m.variance.value - j / 64.0) < 3.0 * m.variance.se);
    }
    for (const auto& row : r.samples.rows) REQUIRE(row.values[0] == 0.0);
  }

  TEST_CASE("mcmc and importance sampling agree") {
    for (auto [u, v] : {std::pair{1.0, 1.0}, std::pair{2.0, -0.5}}) {
      McmcConfig c;
      c.seed = 8;
      const McmcResult r = sample_stationary_mcmc(u, v, c);
      CHECK(r.acceptance_rate > 0.05);
      CHECK(r.acceptance_rate < 0.95);
      CHECK(r.warnings.empty());
      const ImportanceResult is = importance_moments(u, v, {0.25, 0.5, 1.0}, 100000, 9);
      for (const auto& o : is.marginals) {
        const int j = static_cast<int>(std::lround(o.x * 64));
        const MarginalMoments m = sample_moments(r.samples.column(j), o.x, r.autocorrelation_time);
        INFO("u = " << u << ", v = " << v << ", x = " << o.x);
        CHECK(std::abs(m.mean.value - o.mean.value) < 3.0 * combined(m.mean.se, o.mean.se));
        CHECK(std::abs(m.variance.value - o.variance.value) < 3.0 * combined(m.variance.se, o.variance.se));
      }
      if (u == v) {
        // the weight is invariant under beta(x) -> beta(1 - x) - beta(1), so E h(1) = 0
        CHECK(std::abs(is.marginals[2].mean.value) < 3.0 * is.marginals[2].mean.se);
      } else {
        CHECK(is.marginals[2].mean.value > 0.5);
      }
    }
  }
}

TEST_SUITE("normalisation") {
  TEST_CASE("neutral, positive, seed consistent") {
    const Estimate one = estimate_normalization(1.0, 1.0, 1000, 1, 64, true);
    CHECK(std::abs(one.value - 1.0) <= 3.0 * one.se + 1e-15);
    const Estimate a = estimate_normalization(1.0, 1.0, 20000, 1);
    const Estimate b = estimate_normalization(1.0, 1.0, 20000, 2);
    CHECK(a.value > 0.0);
    CHECK(b.value > 0.0);
    CHECK(std::abs(a.value - b.value) < 3.0 * combined(a.se, b.se));
  }
}

TEST_SUITE("laplace") {
  TEST_CASE("trivial coefficients and the domain guard") {
    const SampleEnsemble e = sample_bm_drift(0.0, 64, 20000, 6);
    const Estimate zero = empirical_laplace(e, {0.5, 1.0}, {0.0, 0.0}, BoundaryParams{0.0, 0.0, 0.0});
    CHECK(zero.value == 1.0);
    const Estimate half = empirical_laplace(e, {1.0}, {0.5}, BoundaryParams{0.0, 0.0, 0.0});
    CHECK(std::abs(half.value - std::exp(0.125)) < 3.0 * half.se);
    // u = 1/2, v = 1: C = 2u = 1
    CHECK_THROWS_WITH_AS(empirical_laplace(e, {0.5, 1.0}, {0.6, 0.4}, BoundaryParams{0.5, 1.0, 0.0}),
                         doctest::Contains("C_{u,v}"), ConfigError);
    CHECK_NOTHROW(empirical_laplace(e, {0.5, 1.0}, {0.5, 0.4}, BoundaryParams{0.5, 1.0, 0.0}));
    CHECK_THROWS_AS(empirical_laplace(e, {0.3}, {0.1}, BoundaryParams{}), ConfigError);
  }

  TEST_CASE("boundary constant") {
    CHECK(BoundaryParams{0.0, 1.0, 0.0}.c_uv() == 2.0);
    CHECK(BoundaryParams{1.0, 1.0, 0.0}.c_uv() == 2.0);
    CHECK(BoundaryParams{0.25, 1.0, 0.0}.c_uv() == 0.5);
    const BoundaryParams p{0.3, 0.7, 0.1};
    for (double x : {0.0, 0.4, 1.0}) {
      const double l = -2.0 * (p.v + p.a) * x + p.u + p.a;
      CHECK(p.a1(x) == doctest::Approx(2.0 * l));
      CHECK(p.a2(x) == doctest::Approx(0.5 * (l * l - p.v - p.a)));
    }
  }
}

TEST_SUITE("autocorrelation") {
  TEST_CASE("iid and AR(1)") {
    auto rng = make_stream(2, 0, StreamTag::experiment);
    std::normal_distribution<double> nd;
    std::vector<double> iid(20000), ar(20000);
    double x = 0.0;
    for (std::size_t i = 0; i < iid.size(); ++i) {
      iid[i] = nd(rng);
      x = 0.9 * x + nd(rng);
      ar[i] = x;
    }
    CHECK(integrated_autocorrelation(iid) == doctest::Approx(1.0).epsilon(0.15));
    CHECK(integrated_autocorrelation(ar) == doctest::Approx(19.0).epsilon(0.25));
  }
}

TEST_SUITE("sample ensemble") {
  TEST_CASE("text round trip is exact") {
    SampleEnsemble e = sample_bm_drift(0.3, 16, 5, 1);
    e.set("note", "a b");
    e.rows[2].time = 0.1;
    std::stringstream ss;
    e.write(ss);
    const SampleEnsemble back = SampleEnsemble::read(ss);
    CHECK(back.cells == 16);
    CHECK(back.header == e.header);
    REQUIRE(back.rows.size() == e.rows.size());
    for (std::size_t i = 0; i < e.rows.size(); ++i) {
      CHECK(back.rows[i].values == e.rows[i].values);
      CHECK(back.rows[i].time == e.rows[i].time);
    }
    CHECK(back.at_time(0.1).rows.size() == 1u);
    std::stringstream bad("garbage\n");
    CHECK_THROWS_AS(SampleEnsemble::read(bad), ConfigError);
  }
}
