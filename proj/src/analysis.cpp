#include "hcr/analysis.hpp"

#include <algorithm>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>

#include "hcr/parallel.hpp"
#include "hcr/rng.hpp"

namespace hcr {

namespace {

// Stream tags for derive_seed; every sub-experiment draws its own paths.
enum SeedTag : std::uint64_t {
  kSurvivalTag = 10,
  kAbsorptionTag = 11,
  kSemigroupConditionedTag = 20,
  kSemigroupWeightedTag = 21,
  kSemigroupNConditionedTag = 22,
  kSemigroupNWeightedTag = 23,
  kErgodicTag = 30,
  kFullMomentsTag = 40,
  kRadialMomentsTag = 41,
  kCayleyPreimageTag = 50,
  kCayleyDirectTag = 51,
  kKelvinPreimageTag = 60,
  kKelvinDirectTag = 61,
};

constexpr double kInf = std::numeric_limits<double>::infinity();

std::size_t grid_index(double t, double step) {
  if (t < 0.0) throw std::invalid_argument("negative time " + std::to_string(t));
  const auto k = static_cast<std::size_t>(std::llround(t / step));
  if (std::abs(static_cast<double>(k) * step - t) > 1e-9 * std::max(1.0, t)) {
    throw std::invalid_argument("time " + std::to_string(t) + " is not on the simulation grid");
  }
  return k;
}

std::vector<std::size_t> grid_indices(std::span<const double> ts, double step) {
  std::vector<std::size_t> out;
  out.reserve(ts.size());
  for (double t : ts) out.push_back(grid_index(t, step));
  return out;
}

SimConfig with_horizon(SimConfig cfg, double horizon, std::uint64_t tag) {
  cfg.horizon = std::max(horizon, cfg.step);
  cfg.seed = derive_seed(cfg.seed, tag);
  return cfg;
}

double max_of(std::span<const double> xs) {
  if (xs.empty()) throw std::invalid_argument("empty time grid");
  return *std::max_element(xs.begin(), xs.end());
}

// h^{-n/2} with h floored at the absorption level.
double south_green_weight(const SCyl& q, int n, double level) {
  return std::pow(std::max(south_weight(q), level), -0.5 * n);
}

}  // namespace

MCEstimate mc_estimate(std::span<const double> samples) {
  MCEstimate e;
  e.paths = samples.size();
  if (samples.empty()) return e;
  double sum = 0.0;
  for (double x : samples) sum += x;
  const double mean = sum / static_cast<double>(samples.size());
  double ss = 0.0;
  for (double x : samples) ss += (x - mean) * (x - mean);
  e.value = mean;
  if (samples.size() > 1) {
    const double var = ss / static_cast<double>(samples.size() - 1);
    e.std_error = std::sqrt(var / static_cast<double>(samples.size()));
  }
  return e;
}

double green_constant(int n) {
  if (n < 1) throw std::invalid_argument("dimension n must be >= 1");
  const double g = std::tgamma(0.5 * n);
  return g * g / (8.0 * std::pow(std::numbers::pi, n + 1));
}

double green_heisenberg_pole(const HRadial& v, int n) {
  const double gauge4 = koranyi(v);
  if (!(gauge4 > 0.0)) throw DomainError("green_heisenberg_pole: evaluated at the pole");
  return green_constant(n) * std::pow(gauge4, -0.5 * n);
}

double green_heisenberg(const HPoint& u, const HPoint& v, int n) {
  const HRadial d = radial_projection(group_mul(group_inv(u), v));
  if (!(koranyi(d) > 0.0)) throw DomainError("green_heisenberg: coincident points");
  return green_heisenberg_pole(d, n);
}

double green_sphere_pole(const SCyl& y, int n) {
  const double w = north_weight(y);
  if (w < kPoleTolerance) throw DomainError("green_sphere_pole: evaluated at the pole");
  return green_constant(n) * std::pow(w, -0.5 * n);
}

double green_relation_ratio(const SCyl& y, int n) {
  const SCyl north{0.0, 0.0};
  const double heis = green_heisenberg_pole(cayley_chart_inverse(y), n);
  const double weights = std::pow(south_weight(north), -0.5 * n) * std::pow(south_weight(y), -0.5 * n);
  return green_sphere_pole(y, n) / (heis * weights);
}

KsResult ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
  std::vector<double> x(a.begin(), a.end()), y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double na = static_cast<double>(x.size()), nb = static_cast<double>(y.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == v) ++i;
    while (j < y.size() && y[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  KsResult r;
  r.statistic = d;
  r.size_a = x.size();
  r.size_b = y.size();
  const double ne = na * nb / (na + nb);
  r.p_value = kolmogorov_tail(std::sqrt(ne) * d);
  return r;
}

double kolmogorov_tail(double lambda) {
  if (lambda <= 0.0) return 1.0;
  if (lambda < 1.0) {
    // small-lambda form of the same series, via Jacobi theta inversion
    const double pi2 = std::numbers::pi * std::numbers::pi;
    double sum = 0.0;
    for (int k = 1; k <= 50; ++k) {
      const double m = 2.0 * k - 1.0;
      sum += std::exp(-m * m * pi2 / (8.0 * lambda * lambda));
    }
    return std::clamp(1.0 - std::sqrt(2.0 * std::numbers::pi) / lambda * sum, 0.0, 1.0);
  }
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += (k % 2 == 1 ? term : -term);
    if (term < 1e-18) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

double ks_critical_value(std::size_t size_a, std::size_t size_b, double alpha) {
  const double na = static_cast<double>(size_a), nb = static_cast<double>(size_b);
  return std::sqrt(-0.5 * std::log(0.5 * alpha)) * std::sqrt((na + nb) / (na * nb));
}

double killing_rate(int n) { return 0.5 * n * n; }

double pole_cutoff(double w) {
  auto psi = [](double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; };
  const double y = (w - 0.05) / 0.05;
  if (y <= 0.0) return 0.0;
  if (y >= 1.0) return 1.0;
  return psi(y) / (psi(y) + psi(1.0 - y));
}

SurvivalCurve survival_curve(const SCyl& x, std::span<const double> ts, const SimConfig& cfg) {
  cfg.validate();
  const SimConfig sim = with_horizon(cfg, max_of(ts), kSurvivalTag);
  const auto idx = grid_indices(ts, sim.step);
  const double level = h_absorption_level(sim);
  const double w0 = south_green_weight(x, sim.n, level);

  std::vector<double> ratio(sim.paths * ts.size(), 0.0);
  std::vector<unsigned char> truncated(sim.paths * ts.size(), 0);
  parallel_for(sim.paths, sim.workers, [&](std::size_t p) {
    run_radial_sphere(x, sim, p, [&](std::size_t k, double, const SCyl& q) {
      for (std::size_t j = 0; j < idx.size(); ++j) {
        if (idx[j] != k) continue;
        ratio[p * ts.size() + j] = south_green_weight(q, sim.n, level) / w0;
        truncated[p * ts.size() + j] = south_weight(q) < level;
      }
      return true;
    });
  });

  SurvivalCurve curve;
  curve.paths = sim.paths;
  curve.ts.assign(ts.begin(), ts.end());
  std::size_t n_trunc = 0;
  for (unsigned char c : truncated) n_trunc += c;
  curve.truncated_fraction = static_cast<double>(n_trunc) / static_cast<double>(truncated.size());
  std::vector<double> column(sim.paths);
  for (std::size_t j = 0; j < ts.size(); ++j) {
    for (std::size_t p = 0; p < sim.paths; ++p) column[p] = ratio[p * ts.size() + j];
    const MCEstimate e = mc_estimate(column);
    const double decay = std::exp(-killing_rate(sim.n) * ts[j]);
    curve.s_hat.push_back(decay * e.value);
    curve.se.push_back(decay * e.std_error);
  }
  return curve;
}

std::vector<double> absorption_times(const SCyl& x, const SimConfig& cfg) {
  cfg.validate();
  SimConfig sim = cfg;
  sim.seed = derive_seed(cfg.seed, kAbsorptionTag);
  std::vector<double> out(sim.paths, kInf);
  parallel_for(sim.paths, sim.workers, [&](std::size_t p) {
    const auto outcome = run_h_process(x, sim, p, {});
    if (outcome.absorption_time) out[p] = *outcome.absorption_time;
  });
  return out;
}

double empirical_cdf(std::span<const double> samples, double t) {
  if (samples.empty()) return 0.0;
  const auto hits = std::count_if(samples.begin(), samples.end(), [t](double s) { return s <= t; });
  return static_cast<double>(hits) / static_cast<double>(samples.size());
}

TLawReport t_law_check(const SCyl& x, std::span<const double> ts, const SimConfig& cfg,
                       std::size_t survival_paths) {
  TLawReport report;
  SimConfig weighted = cfg;
  if (survival_paths > 0) weighted.paths = survival_paths;
  report.survival = survival_curve(x, ts, weighted);
  SimConfig sim = cfg;
  sim.horizon = std::max(max_of(ts), cfg.step);
  const std::vector<double> times = absorption_times(x, sim);
  for (std::size_t j = 0; j < ts.size(); ++j) {
    TLawPoint pt;
    pt.t = ts[j];
    pt.absorbed_fraction = empirical_cdf(times, ts[j]);
    pt.one_minus_survival = 1.0 - report.survival.s_hat[j];
    pt.distance = std::abs(pt.absorbed_fraction - pt.one_minus_survival);
    report.sup_distance = std::max(report.sup_distance, pt.distance);
    report.points.push_back(pt);
  }
  return report;
}

namespace {

std::vector<SemigroupResult> assemble_semigroup(const std::vector<TestFunction>& basket, std::span<const double> ts,
                                                std::size_t paths, const std::vector<double>& conditioned,
                                                const std::vector<double>& weighted, double allowance) {
  const std::size_t width = basket.size() * ts.size();
  std::vector<SemigroupResult> out;
  std::vector<double> a(paths), b(paths);
  for (std::size_t fi = 0; fi < basket.size(); ++fi) {
    for (std::size_t j = 0; j < ts.size(); ++j) {
      const std::size_t col = fi * ts.size() + j;
      for (std::size_t p = 0; p < paths; ++p) {
        a[p] = conditioned[p * width + col];
        b[p] = weighted[p * width + col];
      }
      SemigroupResult r;
      r.function = basket[fi].name();
      r.t = ts[j];
      r.conditioned = mc_estimate(a);
      r.weighted = mc_estimate(b);
      const double se = std::hypot(r.conditioned.std_error, r.weighted.std_error);
      r.tolerance = 3.0 * se + allowance;
      r.pass = std::abs(r.conditioned.value - r.weighted.value) <= r.tolerance;
      out.push_back(std::move(r));
    }
  }
  return out;
}

}  // namespace

std::vector<SemigroupResult> doob_semigroup_check(const std::vector<TestFunction>& basket, const SCyl& x,
                                                  std::span<const double> ts, const SimConfig& cfg,
                                                  double allowance) {
  cfg.validate();
  const SimConfig cond = with_horizon(cfg, max_of(ts), kSemigroupConditionedTag);
  const SimConfig free = with_horizon(cfg, max_of(ts), kSemigroupWeightedTag);
  const auto idx = grid_indices(ts, cfg.step);
  const std::size_t width = basket.size() * ts.size();
  const double level = h_absorption_level(cfg);
  const double w0 = south_green_weight(x, cfg.n, level);
  auto cut = [](const TestFunction& f, const SCyl& q) {
    return f.value(q.r, q.theta) * pole_cutoff(south_weight(q));
  };

  std::vector<double> conditioned(cfg.paths * width, 0.0), weighted(cfg.paths * width, 0.0);
  parallel_for(cfg.paths, cfg.workers, [&](std::size_t p) {
    run_h_process(x, cond, p, [&](std::size_t k, double, const SCyl& q) {
      for (std::size_t j = 0; j < idx.size(); ++j) {
        if (idx[j] != k) continue;
        for (std::size_t fi = 0; fi < basket.size(); ++fi) conditioned[p * width + fi * ts.size() + j] = cut(basket[fi], q);
      }
      return true;
    });
    run_radial_sphere(x, free, p, [&](std::size_t k, double t, const SCyl& q) {
      for (std::size_t j = 0; j < idx.size(); ++j) {
        if (idx[j] != k) continue;
        const double weight = std::exp(-killing_rate(cfg.n) * t) * south_green_weight(q, cfg.n, level) / w0;
        for (std::size_t fi = 0; fi < basket.size(); ++fi) {
          weighted[p * width + fi * ts.size() + j] = weight * cut(basket[fi], q);
        }
      }
      return true;
    });
  });
  return assemble_semigroup(basket, ts, cfg.paths, conditioned, weighted, allowance);
}

std::vector<SemigroupResult> doob_semigroup_check_n(const std::vector<TestFunction>& basket, const HRadial& x,
                                                    std::span<const double> ts, const SimConfig& cfg,
                                                    double allowance) {
  cfg.validate();
  const SimConfig cond = with_horizon(cfg, max_of(ts), kSemigroupNConditionedTag);
  const SimConfig free = with_horizon(cfg, max_of(ts), kSemigroupNWeightedTag);
  const auto idx = grid_indices(ts, cfg.step);
  const std::size_t width = basket.size() * ts.size();
  const double w0 = std::pow(koranyi(x), -0.5 * cfg.n);
  auto cut = [](const TestFunction& f, const HRadial& p) { return f.value(p.r, p.t) * pole_cutoff(koranyi(p)); };

  std::vector<double> conditioned(cfg.paths * width, 0.0), weighted(cfg.paths * width, 0.0);
  parallel_for(cfg.paths, cfg.workers, [&](std::size_t p) {
    run_n_process(x, cond, p, [&](std::size_t k, double, const HRadial& s) {
      for (std::size_t j = 0; j < idx.size(); ++j) {
        if (idx[j] != k) continue;
        for (std::size_t fi = 0; fi < basket.size(); ++fi) conditioned[p * width + fi * ts.size() + j] = cut(basket[fi], s);
      }
      return true;
    });
    run_radial_heisenberg(x, free, p, [&](std::size_t k, double, const HRadial& s) {
      for (std::size_t j = 0; j < idx.size(); ++j) {
        if (idx[j] != k) continue;
        const double gauge4 = koranyi(s);
        const double weight = gauge4 > 0.0 ? std::pow(gauge4, -0.5 * cfg.n) / w0 : 0.0;
        for (std::size_t fi = 0; fi < basket.size(); ++fi) {
          const double f = cut(basket[fi], s);
          weighted[p * width + fi * ts.size() + j] = f == 0.0 ? 0.0 : weight * f;
        }
      }
      return true;
    });
  });
  return assemble_semigroup(basket, ts, cfg.paths, conditioned, weighted, allowance);
}

MCEstimate ergodic_cos2_average(const SCyl& x0, const SimConfig& cfg, double burn_in) {
  cfg.validate();
  SimConfig sim = cfg;
  sim.seed = derive_seed(cfg.seed, kErgodicTag);
  std::vector<double> averages(sim.paths, 0.0);
  parallel_for(sim.paths, sim.workers, [&](std::size_t p) {
    double sum = 0.0;
    std::size_t count = 0;
    run_radial_sphere(x0, sim, p, [&](std::size_t, double t, const SCyl& q) {
      if (t > burn_in) {
        const double c = std::cos(q.r);
        sum += c * c;
        ++count;
      }
      return true;
    });
    averages[p] = count > 0 ? sum / static_cast<double>(count) : 0.0;
  });
  return mc_estimate(averages);
}

MomentReport heisenberg_moments(const SimConfig& cfg) {
  cfg.validate();
  SimConfig full = cfg, radial = cfg;
  full.seed = derive_seed(cfg.seed, kFullMomentsTag);
  radial.seed = derive_seed(cfg.seed, kRadialMomentsTag);
  std::vector<double> full_r(cfg.paths), full_t(cfg.paths), rad_r(cfg.paths), rad_t(cfg.paths);
  const HPoint origin = HPoint::identity(static_cast<std::size_t>(cfg.n));
  parallel_for(cfg.paths, cfg.workers, [&](std::size_t p) {
    const HRadial a = radial_projection(run_full_heisenberg(origin, full, p, {}).last_state);
    full_r[p] = a.r;
    full_t[p] = a.t;
    const HRadial b = run_radial_heisenberg({0.0, 0.0}, radial, p, {}).last_state;
    rad_r[p] = b.r;
    rad_t[p] = b.t;
  });
  auto squares = [](const std::vector<double>& v) {
    std::vector<double> s(v.size());
    std::transform(v.begin(), v.end(), s.begin(), [](double x) { return x * x; });
    return s;
  };
  MomentReport m;
  m.z_norm2 = mc_estimate(squares(full_r));
  m.t2 = mc_estimate(squares(full_t));
  m.radial_r2 = mc_estimate(squares(rad_r));
  m.radial_t2 = mc_estimate(squares(rad_t));
  m.ks_r = ks_two_sample(full_r, rad_r);
  m.ks_t = ks_two_sample(full_t, rad_t);
  return m;
}

bool PushforwardReport::pass() const {
  return std::all_of(points.begin(), points.end(), [](const PushforwardPoint& p) { return p.ks_pass && p.drop_pass; });
}

namespace {

using Sample = std::array<double, 2>;
using MaybeSample = std::optional<Sample>;

struct PushforwardSpec {
  std::array<std::string, 3> marginal_names;
  // scalar used as the third marginal
  std::function<double(const Sample&)> gauge;
  // preimage path run up to the first clock value above u_max
  std::function<std::vector<MaybeSample>(std::size_t path)> mapped;
  std::function<std::vector<MaybeSample>(std::size_t path)> direct;
};

PushforwardReport run_pushforward(const PushforwardSpec& spec, std::span<const double> u_grid, const SimConfig& cfg,
                                  ClockOrientation orientation, const PushforwardOptions& opts) {
  const std::size_t m = u_grid.size();
  std::vector<MaybeSample> mapped(cfg.paths * m), direct(cfg.paths * m);
  parallel_for(cfg.paths, cfg.workers, [&](std::size_t p) {
    const auto a = spec.mapped(p);
    const auto b = spec.direct(p);
    std::copy(a.begin(), a.end(), mapped.begin() + static_cast<std::ptrdiff_t>(p * m));
    std::copy(b.begin(), b.end(), direct.begin() + static_cast<std::ptrdiff_t>(p * m));
  });

  PushforwardReport report;
  report.orientation = orientation;
  report.paths = cfg.paths;
  for (std::size_t j = 0; j < m; ++j) {
    PushforwardPoint pt;
    pt.u = u_grid[j];
    std::vector<double> drop_a(cfg.paths), drop_b(cfg.paths);
    for (std::size_t p = 0; p < cfg.paths; ++p) {
      const auto& a = mapped[p * m + j];
      const auto& b = direct[p * m + j];
      drop_a[p] = a ? 0.0 : 1.0;
      drop_b[p] = b ? 0.0 : 1.0;
      if (a) pt.mapped.push_back(*a);
      if (b) pt.direct.push_back(*b);
    }
    pt.drop_mapped = mc_estimate(drop_a);
    pt.drop_direct = mc_estimate(drop_b);
    pt.drop_tolerance = 3.0 * std::hypot(pt.drop_mapped.std_error, pt.drop_direct.std_error) + opts.drop_allowance;
    pt.drop_pass = std::abs(pt.drop_mapped.value - pt.drop_direct.value) <= pt.drop_tolerance;

    pt.ks_pass = !pt.mapped.empty() && !pt.direct.empty();
    if (pt.ks_pass) {
      const double critical = ks_critical_value(pt.mapped.size(), pt.direct.size(), opts.alpha);
      for (int c = 0; c < 3; ++c) {
        auto column = [&](const std::vector<Sample>& v) {
          std::vector<double> out(v.size());
          for (std::size_t i = 0; i < v.size(); ++i) out[i] = c < 2 ? v[i][c] : spec.gauge(v[i]);
          return out;
        };
        MarginalKs mk;
        mk.name = spec.marginal_names[c];
        mk.ks = ks_two_sample(column(pt.mapped), column(pt.direct));
        mk.critical = critical;
        mk.pass = mk.ks.statistic <= critical + opts.ks_allowance;
        pt.max_statistic = std::max(pt.max_statistic, mk.ks.statistic);
        pt.ks_pass = pt.ks_pass && mk.pass;
        pt.marginals.push_back(std::move(mk));
      }
    }
    report.points.push_back(std::move(pt));
  }
  return report;
}

// Runs a radial Heisenberg path until its clock passes u_max, then reads
// the mapped state at sigma_u for every u in the grid.
template <class MapToSample>
std::vector<MaybeSample> mapped_samples(const HRadial& x0, const SimConfig& pre, double growth, std::size_t path,
                                        std::span<const double> u_grid, double u_max,
                                        const std::function<double(const HRadial&)>& rate,
                                        const std::function<Clock(const Path<HRadial>&)>& clock_of, MapToSample&& map) {
  Path<HRadial> y;
  double acc = 0.0, prev_rate = 0.0, prev_time = 0.0;
  run_radial_heisenberg_graded(x0, pre, growth, path, [&](std::size_t k, double t, const HRadial& s) {
    y.times.push_back(t);
    y.states.push_back(s);
    const double r = rate(s);
    if (k > 0) acc += 0.5 * (prev_rate + r) * (t - prev_time);
    prev_rate = r;
    prev_time = t;
    return acc <= u_max;
  });
  const Clock clock = clock_of(y);
  std::vector<MaybeSample> out(u_grid.size());
  for (std::size_t j = 0; j < u_grid.size(); ++j) {
    if (u_grid[j] > clock.terminal()) continue;
    out[j] = map(state_at(y, invert_clock(clock, u_grid[j])));
  }
  return out;
}

template <class State, class Runner, class ToSample>
std::vector<MaybeSample> direct_samples(const std::vector<std::size_t>& idx, Runner&& run, ToSample&& to_sample) {
  std::vector<MaybeSample> out(idx.size());
  run([&](std::size_t k, double, const State& s) {
    for (std::size_t j = 0; j < idx.size(); ++j) {
      if (idx[j] == k) out[j] = to_sample(s);
    }
    return true;
  });
  return out;
}

}  // namespace

PushforwardReport pushforward_cayley(const HRadial& x0, std::span<const double> u_grid, const SimConfig& cfg,
                                     ClockOrientation orientation, const PushforwardOptions& opts) {
  cfg.validate();
  const double u_max = max_of(u_grid);
  const auto idx = grid_indices(u_grid, cfg.step);
  const SimConfig pre = with_horizon(cfg, std::max(opts.preimage_horizon, u_max), kCayleyPreimageTag);
  const SimConfig dir = with_horizon(cfg, u_max, kCayleyDirectTag);
  const SCyl start = cayley_chart(x0);
  auto to_sample = [](const SCyl& q) { return Sample{q.r, q.theta}; };

  PushforwardSpec spec;
  spec.marginal_names = {"r_s", "theta", "north_weight"};
  spec.gauge = [](const Sample& s) { return north_weight(s[0], s[1]); };
  spec.mapped = [&](std::size_t p) {
    return mapped_samples(
        x0, pre, opts.preimage_growth, p, u_grid, u_max,
        [orientation](const HRadial& s) {
          const double h = cayley_factor(s);
          return orientation == ClockOrientation::image ? h : 1.0 / h;
        },
        [orientation](const Path<HRadial>& y) { return clock_cayley(y, orientation); },
        [&](const HRadial& s) { return to_sample(cayley_chart(s)); });
  };
  spec.direct = [&](std::size_t p) {
    return direct_samples<SCyl>(idx, [&](const PathVisitor<SCyl>& v) { run_h_process(start, dir, p, v); }, to_sample);
  };
  return run_pushforward(spec, u_grid, cfg, orientation, opts);
}

PushforwardReport pushforward_kelvin(const HRadial& x0, std::span<const double> u_grid, const SimConfig& cfg,
                                     ClockOrientation orientation, const PushforwardOptions& opts) {
  cfg.validate();
  if (!(koranyi(x0) > 0.0)) throw DomainError("pushforward_kelvin: start point is the origin");
  const double u_max = max_of(u_grid);
  const auto idx = grid_indices(u_grid, cfg.step);
  const SimConfig pre = with_horizon(cfg, std::max(opts.preimage_horizon, u_max), kKelvinPreimageTag);
  const SimConfig dir = with_horizon(cfg, u_max, kKelvinDirectTag);
  const HRadial start = kelvin_radial(x0);
  auto to_sample = [](const HRadial& s) { return Sample{s.r, s.t}; };

  PushforwardSpec spec;
  spec.marginal_names = {"r", "t", "gauge"};
  spec.gauge = [](const Sample& s) { return std::sqrt(std::sqrt(koranyi(HRadial{s[0], s[1]}))); };
  spec.mapped = [&](std::size_t p) {
    return mapped_samples(
        x0, pre, opts.preimage_growth, p, u_grid, u_max,
        [orientation](const HRadial& s) {
          const double gauge4 = koranyi(s);
          return orientation == ClockOrientation::image ? 1.0 / gauge4 : gauge4;
        },
        [orientation](const Path<HRadial>& y) { return clock_kelvin(y, orientation); },
        [&](const HRadial& s) { return to_sample(kelvin_radial(s)); });
  };
  spec.direct = [&](std::size_t p) {
    return direct_samples<HRadial>(idx, [&](const PathVisitor<HRadial>& v) { run_n_process(start, dir, p, v); },
                                   to_sample);
  };
  return run_pushforward(spec, u_grid, cfg, orientation, opts);
}

}  // namespace hcr
