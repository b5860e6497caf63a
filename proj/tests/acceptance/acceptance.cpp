// Acceptance run: one [PASS]/[FAIL] line per criterion, exit status 1 if any fails.
#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "kpzlab/cli/cli.hpp"
#include "kpzlab/harness/experiments.hpp"
#include "kpzlab/kernels/constant_a.hpp"
#include "kpzlab/kernels/robin.hpp"
#include "kpzlab/shesolver/she.hpp"
#include "kpzlab/stationary/stationary.hpp"
#include "kpzlab/treealg/kpz_equation.hpp"
#include "kpzlab/treealg/verification.hpp"

using namespace kpzlab;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double v, int digits = 3) {
  std::ostringstream os;
  os.precision(digits);
  os << v;
  return os.str();
}

// ---- algebra -------------------------------------------------------------

Outcome ac1() {
  const auto t0 = Clock::now();
  const treealg::AlgebraReport r = treealg::verify_algebra();
  const double dt = seconds_since(t0);
  bool rows = r.tables.size() == 4;
  std::string detail;
  for (const auto& t : r.tables) {
    rows = rows && t.rows_checked >= 14;
    detail += t.table + " " + std::to_string(t.rows_checked) + " rows, ";
  }
  return {r.exact_tables() == 4 && rows && dt < 1.0, detail + r.summary() + ", " + fmt(dt) + " s"};
}

Outcome ac2() {
  using treealg::parse_polynomial;
  const auto t0 = Clock::now();
  const treealg::RenormConstants c = treealg::renorm_constants(treealg::RenormParams::symbolic());
  const double dt = seconds_since(t0);
  const bool ok = c.c1 == parse_polynomial("C0") && c.c2 == parse_polynomial("2 C0") &&
                  c.c3 == parse_polynomial("1/4 C2 + 1/2 C3 + 2 a10 C0 + C1");
  return {ok && dt < 1.0, "(" + c.c1.to_string() + ", " + c.c2.to_string() + ", " + c.c3.to_string() + "), " +
                              fmt(dt) + " s"};
}

Outcome ac3() {
  const treealg::Basis& b = treealg::Basis::standard();
  const treealg::TreeCombination want = treealg::parse_combination(
      "wt^2 <one> + 1/4 <tree2> + wt <2d1d> + 2 wt <1d> + <2d2d> + 1/2 <tree1> + (2 a10 + wt) <1d2d> + <2d>",
      b.resolver());
  const treealg::TreeCombination got = treealg::q_leq0_nonlinearity();
  return {got == want && got.size() == 8, std::to_string(got.size()) + " terms: " + got.to_string()};
}

Outcome ac4() {
  using treealg::parse_degree;
  // (eta_i, sigma_i, mu_i) for the six right-hand side sectors.
  const char* want[6][3] = {{"2k - 2", "4k - 1", "2k - 2"},     {"-3/2", "k - 1", "-3/2"},
                            {"-1 - 2k", "-1 - 2k", "-1 - 2k"}, {"k - 1", "-1/2 + 2k", "k - 1"},
                            {"-1/2 - k", "-1/2 - k", "-1/2 - k"}, {"0", "0", "0"}};
  const auto got = treealg::sector_exponents();
  int matched = 0;
  std::string bad;
  for (const auto& s : got) {
    if (s.index < 0 || s.index > 5) continue;
    const treealg::ExactDegree* v[3] = {&s.eta, &s.sigma, &s.mu};
    for (int k = 0; k < 3; ++k) {
      if (*v[k] == parse_degree(want[s.index][k]))
        ++matched;
      else
        bad += " sector " + std::to_string(s.index) + " got " + v[k]->to_string();
    }
  }
  return {matched == 18 && got.size() == 6, std::to_string(matched) + "/18 exponents exact" + bad};
}

// ---- kernels -------------------------------------------------------------

/// Cosine series of the Neumann kernel for d/dt = 1/2 d^2/dx^2.
double spectral_neumann(double t, double x, double y) {
  const double pi = std::numbers::pi;
  double s = 1.0;
  for (int k = 1; k < 2000; ++k) {
    const double e = std::exp(-0.5 * pi * pi * k * k * t);
    if (e < 1e-20) break;
    s += 2.0 * e * std::cos(k * pi * x) * std::cos(k * pi * y);
  }
  return s;
}

Outcome ac5() {
  const auto t0 = Clock::now();
  double sup = 0.0, mass = 0.0;
  for (double t : {0.05, 0.1, 0.5, 1.0}) {
    for (int i = 0; i <= 32; ++i) {
      const double x = i / 32.0;
      for (int j = 0; j <= 32; ++j) {
        const double y = j / 32.0;
        sup = std::max(sup, std::abs(kernels::neumann_kernel(t, x, y, 20).value - spectral_neumann(t, x, y)));
      }
      const double m = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
          [&](double y) { return kernels::neumann_kernel(t, x, y, 20).value; }, 0.0, 1.0, 15, 1e-14);
      mass = std::max(mass, std::abs(m - 1.0));
    }
  }
  const double dt = seconds_since(t0);
  return {sup < 1e-8 && mass < 1e-8 && dt < 10.0,
          "sup error " + fmt(sup) + ", mass error " + fmt(mass) + ", " + fmt(dt) + " s"};
}

Outcome ac6() {
  const BoundaryParams p{0.5, 0.5, 0.0};
  const kernels::GridSpec grid{256, 0.0};
  double sup = 0.0;
  for (int j = 0; j <= 256; j += 8) {
    const double y = j / 256.0;
    const std::vector<double> col = kernels::robin_kernel_column(0.1, y, p, grid);
    for (int i = 0; i <= 256; ++i) sup = std::max(sup, std::abs(col[i] - kernels::neumann_kernel(0.1, i / 256.0, y).value));
  }
  return {sup < 1e-4, "sup |robin - neumann| = " + fmt(sup) + " over 257 x 33 points"};
}

Outcome ac7() {
  // Independent Cartesian adaptive quadrature of the same integral.
  const double oracle = 0.116412895948748;
  const kernels::ConstantA base = kernels::constant_a();
  const kernels::ConstantA twice = kernels::constant_a(kernels::Mollifier::bump(), {256, 256, true});
  const double stab = std::abs(base.value - twice.value);
  const double err = std::abs(base.value - oracle);
  return {stab < 1e-6 && err < 1e-6, "a = " + fmt(base.value, 15) + ", doubling change " + fmt(stab) +
                                         ", oracle distance " + fmt(err)};
}

// ---- SPDE and stationary law ---------------------------------------------

Outcome ac8() {
  const auto t0 = Clock::now();
  const BoundaryParams p{0.5, -0.5, 0.0};
  she::SimConfig c;
  c.cells = 64;
  c.paths = 2000;
  c.seed = 2024;
  c.record_times = {0.1, 0.5, 1.0};
  const she::GridField z0 = she::GridField::sample(64, [](double x) { return 1.0 + 0.5 * std::cos(std::numbers::pi * x); });
  const she::Ensemble e = she::simulate_she(z0, p, c);
  const auto rows = she::summarize(e, she::Observable::z);
  const kernels::RobinSemigroup sg(p, kernels::GridSpec{64, e.time.dt});
  double worst = 0.0;
  for (std::size_t k = 0; k < 3; ++k) {
    const std::vector<double> det = sg.evolve(z0.values, e.time.record_times[k]);
    for (int j : {0, 32, 64}) {
      const she::SummaryRow& r = rows[k * 65 + j];
      worst = std::max(worst, std::abs(r.mean - det[j]) / std::sqrt(r.variance / r.n_effective));
    }
  }
  const double dt = seconds_since(t0);
  return {worst < 3.0 && e.excluded() == 0 && dt < 300.0,
          "max |mean - semigroup| / SE = " + fmt(worst) + " over 9 points, excluded " + std::to_string(e.excluded()) +
              ", " + fmt(dt) + " s"};
}

Outcome ac9() {
  const auto t0 = Clock::now();
  harness::StationarityConfig c;  // u = 1/2, v = -1/2, N = 1000, T = 1
  const harness::TestReport main = harness::stationarity_experiment(c);
  c.initial = harness::InitialLaw::flat;
  c.horizon = 0.1;
  const harness::TestReport control = harness::stationarity_experiment(c);
  const double dt = seconds_since(t0);
  const double p_main = main.statistics["min_p_adjusted"].get<double>();
  const double p_control = control.statistics["min_p_adjusted"].get<double>();
  return {main.passed() && control.passed() && p_control < 0.01 && dt < 900.0,
          "min adjusted p " + fmt(p_main) + " (need > 0.01), control " + fmt(p_control) + " (need < 0.01), " +
              fmt(dt) + " s"};
}

Outcome ac10() {
  const auto t0 = Clock::now();
  const harness::TestReport r = harness::cross_sampler_experiment({});
  const double dt = seconds_since(t0);
  double worst = 0.0;
  for (const auto& ch : r.checks) worst = std::max(worst, ch.value);
  return {r.passed() && r.checks.size() == 12 && dt < 1800.0,
          std::to_string(r.checks.size()) + " pairwise checks, max z " + fmt(worst) + ", " + fmt(dt) + " s"};
}

Outcome ac11() {
  stationary::McmcConfig c;
  c.neutral_weight = true;
  c.seed = 7;
  const stationary::McmcResult r = stationary::sample_stationary_mcmc(0.0, 0.0, c);
  const int nodes[] = {8, 16, 32, 48, 64};
  const std::size_t n = r.betas.size();
  double worst = 0.0;
  for (int i : nodes) {
    for (int j : nodes) {
      std::vector<double> prod(n);
      for (std::size_t k = 0; k < n; ++k) prod[k] = r.betas[k][i] * r.betas[k][j];
      const stationary::MarginalMoments m =
          stationary::sample_moments(prod, 0.0, stationary::integrated_autocorrelation(prod));
      worst = std::max(worst, std::abs(m.mean.value - 0.5 * std::min(i, j) / 64.0) / m.mean.se);
    }
  }
  stationary::McmcConfig prod_cfg;
  prod_cfg.seed = 7;
  const double acc = stationary::sample_stationary_mcmc(1.0, 1.0, prod_cfg).acceptance_rate;
  return {worst < 3.0 && acc > 0.05 && acc < 0.95,
          "max covariance z " + fmt(worst) + " on 5 x 5 points, acceptance " + fmt(acc) + " at u = v = 1"};
}

// ---- determinism ---------------------------------------------------------

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

Outcome ac12() {
  const std::vector<std::vector<std::string>> commands = {
      {"verify-algebra"},
      {"kernel"},
      {"kernel", "--set", "kernel.kind=robin"},
      {"constant-a"},
      {"simulate", "--set", "sim.paths=200", "--set", "sim.initial=stationary"},
      {"sample-stationary", "--u", "1", "--v", "1"},
      {"experiment", "stationarity", "--u", "0.5", "--v", "-0.5", "--seed", "7"},
      {"experiment", "coupling"},
  };
  const fs::path root = fs::temp_directory_path() / "kpzlab_acceptance_rerun";
  int compared = 0, differing = 0, failed = 0;
  for (const auto& cmd : commands) {
    std::vector<fs::path> dirs = {root / "a", root / "b"};
    for (const fs::path& d : dirs) {
      fs::remove_all(d);
      std::vector<std::string> args = cmd;
      args.insert(args.end(), {"--workers", "1", "--out-dir", d.string()});
      std::ostringstream out, err;
      if (cli::run(args, out, err) != 0) ++failed;
    }
    for (const auto& entry : fs::directory_iterator(dirs[0])) {
      ++compared;
      if (slurp(entry.path()) != slurp(dirs[1] / entry.path().filename())) ++differing;
    }
  }
  fs::remove_all(root);
  return {failed == 0 && differing == 0 && compared >= 12,
          std::to_string(commands.size()) + " commands, " + std::to_string(compared) + " artifacts compared, " +
              std::to_string(differing) + " differ"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"AC1 algebra golden tables", ac1},
      {"AC2 renormalisation constants", ac2},
      {"AC3 Q<=0 expansion", ac3},
      {"AC4 sector exponents", ac4},
      {"AC5 Neumann kernel vs spectral series", ac5},
      {"AC6 Robin kernel at u = v = 1/2", ac6},
      {"AC7 constant a", ac7},
      {"AC8 SHE ensemble mean vs semigroup", ac8},
      {"AC9 stationarity for u + v = 0", ac9},
      {"AC10 cross-sampler agreement at u = v = 1", ac10},
      {"AC11 pCN calibration", ac11},
      {"AC12 byte-identical reruns", ac12},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += o.pass ? 0 : 1;
    std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << name << ": " << o.detail << std::endl;
  }
  std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failures == 0 ? 0 : 1;
}
