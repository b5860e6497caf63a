#include "kpzlab/shesolver/she.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>

#include "kpzlab/common/errors.hpp"
#include "kpzlab/common/rng.hpp"
#include "kpzlab/kernels/robin.hpp"

namespace kpzlab::she {

namespace {

constexpr double kRescaleHigh = 1e150;
constexpr double kRescaleLow = 1e-150;

template <class T>
std::string str(const T& v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

double transform(const GridField& z, int j, Observable obs) {
  switch (obs) {
    case Observable::z:
      return z.value(j);
    case Observable::h:
      return std::log(z.values[j]) + z.log_scale;
    case Observable::anchored_h:
      return std::log(z.values[j] / z.values[0]);
  }
  return 0.0;
}

template <class Job>
void run_indexed(int count, int workers, Job&& job) {
  workers = std::max(1, std::min(workers, count));
  if (workers == 1) {
    for (int i = 0; i < count; ++i) job(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next++; i < count; i = next++) job(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace

void SimConfig::validate() const {
  if (cells < 2) throw ConfigError("cells must be at least 2, got " + str(cells));
  if (!(horizon > 0.0)) throw ConfigError("horizon must be positive, got " + str(horizon));
  if (paths < 1) throw ConfigError("paths must be at least 1, got " + str(paths));
  if (workers < 1) throw ConfigError("workers must be at least 1, got " + str(workers));
  if (dt < 0.0) throw ConfigError("dt must be positive, got " + str(dt));
  if (dt_cap() > 0.5 * dx() * dx() * (1.0 + 1e-12))
    throw ConfigError("dt = " + str(dt) + " violates the stability bound dt <= dx^2/2 = " + str(0.5 * dx() * dx()));
  for (double t : record_times) {
    if (!(t >= 0.0 && t <= horizon * (1.0 + 1e-12)))
      throw ConfigError("record time " + str(t) + " outside [0, horizon]");
  }
}

TimeGrid plan_time_grid(const SimConfig& cfg) {
  cfg.validate();
  TimeGrid g;
  g.record_times = cfg.record_times.empty() ? std::vector<double>{cfg.horizon} : cfg.record_times;
  std::sort(g.record_times.begin(), g.record_times.end());
  const long lo = static_cast<long>(std::ceil(cfg.horizon / cfg.dt_cap() - 1e-9));
  for (long n = lo; n <= 2 * lo + 1000; ++n) {
    const double dt = cfg.horizon / n;
    std::vector<long> at;
    bool ok = true;
    for (double t : g.record_times) {
      const double k = t / dt;
      const long r = std::lround(k);
      if (std::abs(k - r) > 1e-6) {
        ok = false;
        break;
      }
      at.push_back(r);
    }
    if (ok) {
      g.dt = dt;
      g.steps = n;
      g.record_steps = std::move(at);
      return g;
    }
  }
  throw ConfigError("record_times are not commensurate with the horizon");
}

int Ensemble::excluded() const {
  return static_cast<int>(std::count_if(paths.begin(), paths.end(), [](const PathResult& r) { return r.positivity_lost; }));
}

double Ensemble::exclusion_rate() const { return paths.empty() ? 0.0 : double(excluded()) / paths.size(); }

PathResult simulate_path(const GridField& z0, const BoundaryParams& p, const SimConfig& cfg, std::uint64_t index,
                         const StepObserver& observer) {
  const TimeGrid tg = plan_time_grid(cfg);
  z0.validate();
  if (z0.cells() != cfg.cells) throw ConfigError("initial field has " + str(z0.cells()) + " cells, config has " + str(cfg.cells));
  for (std::size_t j = 0; j < z0.values.size(); ++j) {
    if (!(z0.values[j] > 0.0)) throw ConfigError("initial Z must be positive; Z0[" + str(j) + "] = " + str(z0.values[j]));
  }

  const kernels::RobinSemigroup sg(p, kernels::GridSpec{cfg.cells, tg.dt});
  const int n = cfg.cells;
  std::vector<double> scale(n + 1);
  for (int j = 0; j <= n; ++j) scale[j] = cfg.noise ? std::sqrt(tg.dt / (sg.weights()[j] * sg.dx())) : 0.0;

  auto rng = make_stream(cfg.seed, index, StreamTag::noise);
  std::normal_distribution<double> normal;

  PathResult out;
  out.index = index;
  std::vector<double> z = z0.values;
  std::vector<double> rhs(n + 1);
  double log_scale = z0.log_scale;
  std::size_t next_record = 0;
  auto record = [&](long step) {
    while (next_record < tg.record_steps.size() && tg.record_steps[next_record] == step) {
      GridField snap;
      snap.values = z;
      snap.dx = sg.dx();
      snap.time = tg.record_times[next_record];
      snap.log_scale = log_scale;
      out.snapshots.push_back(std::move(snap));
      ++next_record;
    }
  };
  record(0);

  for (long s = 1; s <= tg.steps; ++s) {
    sg.explicit_half(z, rhs);
    if (cfg.noise) {
      for (int j = 0; j <= n; ++j) rhs[j] += z[j] * scale[j] * normal(rng);
    }
    sg.implicit_solve(rhs);
    z.swap(rhs);

    double zmax = 0.0;
    bool positive = true;
    for (double v : z) {
      if (!(v > 0.0) || !std::isfinite(v)) positive = false;
      zmax = std::max(zmax, v);
    }
    if (!positive) {
      const double t = s * tg.dt;
      if (cfg.positivity == PositivityPolicy::fail)
        throw PositivityLost("path " + str(index) + " lost positivity at t = " + str(t));
      out.positivity_lost = true;
      out.lost_at = t;
      out.snapshots.clear();
      return out;
    }
    if (zmax > kRescaleHigh || zmax < kRescaleLow) {
      for (double& v : z) v /= zmax;
      log_scale += std::log(zmax);
    }
    if (observer) observer(s, s * tg.dt, z);
    record(s);
  }
  return out;
}

Ensemble simulate_she(const GridField& z0, const BoundaryParams& p, const SimConfig& cfg) {
  return simulate_she([&](std::uint64_t) { return z0; }, p, cfg);
}

Ensemble simulate_she(const std::function<GridField(std::uint64_t)>& initial, const BoundaryParams& p,
                      const SimConfig& cfg) {
  Ensemble e;
  e.params = p;
  e.config = cfg;
  e.time = plan_time_grid(cfg);
  e.paths.resize(cfg.paths);
  // Initial data are drawn in index order before the parallel part, so the
  // result does not depend on the worker count.
  std::vector<GridField> starts;
  starts.reserve(cfg.paths);
  for (int i = 0; i < cfg.paths; ++i) starts.push_back(initial(static_cast<std::uint64_t>(i)));
  run_indexed(cfg.paths, cfg.workers, [&](int i) { e.paths[i] = simulate_path(starts[i], p, cfg, i); });
  return e;
}

double pairwise_sum(const double* v, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += v[i];
    return s;
  }
  const std::size_t h = n / 2;
  return pairwise_sum(v, h) + pairwise_sum(v + h, n - h);
}

std::vector<SummaryRow> summarize(const Ensemble& e, Observable obs) {
  std::vector<const PathResult*> kept;
  for (const auto& r : e.paths)
    if (!r.positivity_lost) kept.push_back(&r);
  std::vector<SummaryRow> rows;
  const int n = e.config.cells;
  std::vector<double> buf(kept.size());
  for (std::size_t k = 0; k < e.time.record_times.size(); ++k) {
    for (int j = 0; j <= n; ++j) {
      for (std::size_t i = 0; i < kept.size(); ++i) buf[i] = transform(kept[i]->snapshots[k], j, obs);
      SummaryRow row;
      row.t = e.time.record_times[k];
      row.x = j * e.config.dx();
      row.n_effective = static_cast<int>(kept.size());
      if (!kept.empty()) {
        row.mean = pairwise_sum(buf.data(), buf.size()) / kept.size();
        for (double& b : buf) b = (b - row.mean) * (b - row.mean);
        row.variance = kept.size() > 1 ? pairwise_sum(buf.data(), buf.size()) / (kept.size() - 1) : 0.0;
      }
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace kpzlab::she
