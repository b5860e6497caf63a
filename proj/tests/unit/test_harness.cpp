#include <doctest.h>

#include <cmath>
#include <numbers>

#include "kpzlab/common/errors.hpp"
#include "kpzlab/common/rng.hpp"
#include "kpzlab/harness/experiments.hpp"
#include "kpzlab/harness/stats.hpp"

using namespace kpzlab;
using namespace kpzlab::harness;

namespace {

std::vector<double> normals(int n, double mu, std::uint64_t seed) {
  auto rng = make_stream(seed, 0, StreamTag::experiment);
  std::normal_distribution<double> nd(mu, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = nd(rng);
  return v;
}

}  // namespace

TEST_SUITE("ks") {
  TEST_CASE("Kolmogorov tail against reference values") {
    // scipy.special.kolmogorov
    const std::pair<double, double> ref[] = {{0.2, 0.999999999999495},      {0.5, 0.9639452436648751},
                                             {0.9, 0.3927307079406543},     {1.0, 0.26999967167735456},
                                             {1.36, 0.049485876755377876},  {2.0, 0.0006709252557796953},
                                             {3.0, 3.045995948942526e-08}};
    for (auto [l, q] : ref) CHECK(kolmogorov_q(l) == doctest::Approx(q).epsilon(1e-10));
    CHECK(kolmogorov_q(0.0) == 1.0);
  }

  TEST_CASE("two sample test") {
    const auto a = normals(1000, 0.0, 1);
    const KsResult same = ks_two_sample(a, a);
    CHECK(same.statistic == 0.0);
    CHECK(same.p_value == 1.0);
    CHECK(ks_two_sample(a, normals(1000, 0.0, 2)).p_value > 0.01);
    CHECK(ks_two_sample(a, normals(1000, 1.0, 3)).p_value < 1e-6);
    CHECK_THROWS_AS(ks_two_sample(normals(49, 0.0, 1), a), ConfigError);
  }

  TEST_CASE("statistic on a hand example") {
    std::vector<double> a, b;
    for (int i = 0; i < 50; ++i) {
      a.push_back(i);
      b.push_back(i + 10);
    }
    CHECK(ks_two_sample(a, b).statistic == doctest::Approx(0.2));
  }
}

TEST_SUITE("batch means") {
  TEST_CASE("iid series") {
    const auto x = normals(20000, 0.3, 4);
    const BatchMeans bm = batch_means(x, 20);
    CHECK(bm.se == doctest::Approx(1.0 / std::sqrt(20000.0)).epsilon(0.4));
    CHECK(std::abs(bm.mean - 0.3) < 3.0 * bm.se);
    CHECK_THROWS_AS(batch_means(x, 1), ConfigError);
  }
}

TEST_SUITE("report") {
  TEST_CASE("checks and serialisation") {
    TestReport r;
    r.id = "demo";
    r.parameters["u"] = 0.5;
    r.checks.push_back(make_check("p", 0.2, ">", 0.01));
    CHECK(r.passed());
    r.checks.push_back(make_check("q", 2.0, "<", 1.0));
    CHECK(!r.passed());
    const std::string text = r.json_text();
    CHECK(text == r.json_text());
    CHECK(text.find("\"experiment\": \"demo\"") != std::string::npos);
    CHECK(text.find("\"threshold\": 0.01") != std::string::npos);
    r.table = {{"a", "b"}, {"1", "2"}};
    CHECK(r.csv_text() == "a,b\n1,2\n");
  }
}

TEST_SUITE("experiments") {
  TEST_CASE("stationarity, small") {
    StationarityConfig c;
    c.paths = 200;
    c.cells = 32;
    c.horizon = 0.25;
    c.seed = 3;
    const TestReport ok = stationarity_experiment(c);
    CHECK(ok.passed());
    CHECK(ok.statistics["marginals"].size() == 4u);
    c.initial = InitialLaw::flat;
    c.horizon = 0.02;
    const TestReport control = stationarity_experiment(c);
    CHECK(control.id == "stationarity-control");
    CHECK(control.passed());
    CHECK(control.statistics["min_p_adjusted"].get<double>() < 0.01);
  }

  TEST_CASE("stationarity from the pCN ensemble") {
    StationarityConfig c;
    c.u = 1.0;
    c.v = 1.0;
    c.paths = 500;
    c.seed = 12;
    const TestReport r = stationarity_experiment(c);
    CHECK(r.parameters["sampler"] == "pcn");
    CHECK(r.passed());
  }

  TEST_CASE("ergodic average") {
    ErgodicConfig c;
    c.cells = 32;
    c.functional = Functional::constant;
    c.horizon = 2.0;
    const TestReport k = ergodic_average(c);
    CHECK(k.statistics["time_average"].get<double>() == 1.0);
    CHECK(k.statistics["difference"].get<double>() == 0.0);
    CHECK(k.passed());

    c.functional = Functional::endpoint;
    c.horizon = 50.0;
    const TestReport full = ergodic_average(c);
    CHECK(full.passed());
    c.horizon = 25.0;
    const TestReport half = ergodic_average(c);
    const double ratio = half.statistics["batch_means_se"].get<double>() / full.statistics["batch_means_se"].get<double>();
    INFO("SE ratio " << ratio);
    CHECK(ratio > 1.0);
    CHECK(ratio < 2.0);
  }

  TEST_CASE("functionals") {
    std::vector<double> z = {2.0, 2.0 * std::exp(0.5), 2.0 * std::exp(-1.0)};
    CHECK(apply_functional(Functional::endpoint, z, 0.5) == doctest::Approx(-1.0));
    CHECK(apply_functional(Functional::maximum, z, 0.5) == doctest::Approx(0.5));
    CHECK(apply_functional(Functional::integral, z, 0.5) == doctest::Approx(0.5 * (0.5 - 0.5)));
    CHECK(parse_functional("max") == Functional::maximum);
    CHECK_THROWS_AS(parse_functional("median"), ConfigError);
  }

  TEST_CASE("coupling") {
    CouplingConfig c;
    c.cells = 32;
    c.realizations = 3;
    c.horizon = 0.5;
    const she::GridField h0 = she::GridField::sample(32, [](double x) { return 0.3 * x * (1 - x); });
    she::GridField shifted = h0;
    for (double& v : shifted.values) v += 1.7;
    for (const she::GridField* other : std::initializer_list<const she::GridField*>{&h0, &shifted}) {
      const TestReport r = coupling_experiment(h0, *other, c);
      CHECK(r.exploratory);
      CHECK(r.checks.empty());
      // adding 1.7 rounds each value, so the shifted input is only equal up to that
      for (double d : r.statistics["mean_curve"]) CHECK(d <= (other == &h0 ? 0.0 : 1e-12));
    }
    c.realizations = 20;
    c.horizon = 1.0;
    const she::GridField flat = she::GridField::nodes(32, 0.0);
    const she::GridField bump = she::GridField::sample(32, [](double x) { return std::sin(std::numbers::pi * x); });
    const TestReport r = coupling_experiment(flat, bump, c);
    const auto curve = r.statistics["mean_curve"];
    CHECK(curve.front().get<double>() == doctest::Approx(1.0).epsilon(0.01));
    CHECK(curve.back().get<double>() < curve.front().get<double>());
  }
}
