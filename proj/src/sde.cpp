#include "hcr/sde.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "hcr/rng.hpp"

namespace hcr {

void SimConfig::validate() const {
  auto fail = [](const std::string& what) { throw std::invalid_argument("SimConfig: " + what); };
  if (n < 1) fail("n must be >= 1");
  if (!(step > 0.0) || !std::isfinite(step)) fail("step must be positive");
  if (!(horizon > 0.0) || !std::isfinite(horizon)) fail("horizon must be positive");
  if (step > horizon) fail("step must not exceed horizon");
  if (paths < 1) fail("paths must be >= 1");
  if (!(pole_eps > 0.0)) fail("pole_eps must be positive");
  if (!(r_floor >= 0.0) || r_floor >= 0.5) fail("r_floor must lie in [0, 0.5)");
  if (!(pole_substep > 0.0)) fail("pole_substep must be positive");
}

std::size_t SimConfig::steps() const { return static_cast<std::size_t>(std::llround(horizon / step)); }

double h_absorption_level(const SimConfig& cfg) { return 4.0 * cfg.pole_eps * cfg.pole_eps; }

double n_absorption_level(const SimConfig& cfg) {
  const double e2 = cfg.pole_eps * cfg.pole_eps;
  return e2 * e2;
}

namespace {

// g = sin^2 r_S with the angle theta.
struct SphereState {
  double g = 0.0;
  double theta = 0.0;

  SCyl chart() const { return SCyl{std::atan2(std::sqrt(g), std::sqrt(1.0 - g)), theta}; }
  double south() const {
    const double c = std::sqrt(std::max(0.0, 1.0 - g));
    return 1.0 + 2.0 * c * std::cos(theta) + c * c;
  }
};

// rho = r_H^2 with the vertical coordinate t.
struct HeisState {
  double rho = 0.0;
  double t = 0.0;

  HRadial chart() const { return HRadial{std::sqrt(rho), t}; }
  double gauge4() const { return rho * rho + 4.0 * t * t; }
};

double reflect(double x, double lo, double hi) {
  if (x < lo) x = 2.0 * lo - x;
  if (x > hi) x = 2.0 * hi - x;
  return std::clamp(x, lo, hi);
}

// One Euler step for g and theta under L_S/2, plus the Doob drift of L^h/2
// when `conditioned`. With c = cos r:
//   dg     = (2n - (2n+2) g + [2n g c (cos th + c) / h]) ds + 2 sqrt(g(1-g)) dB1
//   dtheta = [n g sin th / (c h)] ds + sqrt(g / (1-g)) dB2
void sphere_step(SphereState& s, double dt, double z1, double z2, int n, bool conditioned, double g_lo,
                 double g_hi) {
  const double g = s.g;
  const double one_minus = 1.0 - g;
  const double c = std::sqrt(one_minus);
  double drift_g = 2.0 * n - (2.0 * n + 2.0) * g;
  double drift_th = 0.0;
  if (conditioned) {
    const double cos_th = std::cos(s.theta);
    const double h = 1.0 + 2.0 * c * cos_th + c * c;
    drift_g += 2.0 * n * g * c * (cos_th + c) / h;
    drift_th = n * g * std::sin(s.theta) / (c * h);
  }
  const double sq = std::sqrt(dt);
  const double g_next = g + drift_g * dt + 2.0 * std::sqrt(g * one_minus) * sq * z1;
  const double th_next = s.theta + drift_th * dt + std::sqrt(g / one_minus) * sq * z2;
  s.g = reflect(g_next, g_lo, g_hi);
  s.theta = reduce_angle(th_next);
}

// One step for rho and t under L_H/2, plus the Doob drift of L^N/2:
//   drho = (2n - [4n rho^2 / N]) ds + 2 sqrt(rho) dB1
//   dt   = (-[4n rho t / N]) ds + sqrt(rho) dB2
// The free part of rho is advanced exactly as |x + sqrt(dt) G|^2 with G a
// standard 2n-vector, so the scheme stays accurate near rho = 0; the
// vertical increment uses the trapezoid value of int rho ds.
void heis_step(HeisState& s, double dt, NormalStream& radial, NormalStream& vertical, int n, bool conditioned,
               double rho_lo) {
  double drift_rho = 0.0;
  double drift_t = 0.0;
  if (conditioned) {
    const double gauge4 = s.gauge4();
    drift_rho = -4.0 * n * s.rho * s.rho / gauge4;
    drift_t = -4.0 * n * s.rho * s.t / gauge4;
  }
  const double sq = std::sqrt(dt);
  const double lead = std::sqrt(s.rho) + sq * radial.next();
  double free = lead * lead;
  for (int j = 1; j < 2 * n; ++j) {
    const double x = sq * radial.next();
    free += x * x;
  }
  s.t += drift_t * dt + std::sqrt(0.5 * (s.rho + free) * dt) * vertical.next();
  const double rho_next = free + drift_rho * dt;
  s.rho = rho_next < rho_lo ? 2.0 * rho_lo - rho_next : rho_next;
  if (s.rho < rho_lo) s.rho = rho_lo;
}

bool notify(const auto& visit, std::size_t k, double t, const auto& state) { return !visit || visit(k, t, state); }

RunOutcome<SCyl> run_sphere(const SCyl& x0, const SimConfig& cfg, std::uint64_t path, bool conditioned,
                            const PathVisitor<SCyl>& visit) {
  cfg.validate();
  const double level = h_absorption_level(cfg);
  if (conditioned && south_weight(x0) < level) throw DomainError("h-process cannot start inside the pole ball");
  const double sf = std::sin(cfg.r_floor);
  const double g_lo = sf * sf;
  const double g_hi = 1.0 - g_lo;
  const double sr = std::sin(x0.r);
  SphereState s{sr * sr, reduce_angle(x0.theta)};
  NormalStream radial(cfg.seed, path, 0), angular(cfg.seed, path, 1);
  const std::size_t steps = cfg.steps();
  const double min_dt = cfg.step * 1e-6;

  const SCyl start = SCyl::make(x0.r, x0.theta);
  if (!notify(visit, 0, 0.0, start)) return {std::nullopt, start};
  for (std::size_t k = 1; k <= steps; ++k) {
    double clock = static_cast<double>(k - 1) * cfg.step;
    double remaining = cfg.step;
    while (remaining > 1e-12 * cfg.step) {
      double dt = remaining;
      if (conditioned) dt = std::min(dt, std::max(cfg.pole_substep * std::sqrt(s.south()), min_dt));
      const double z1 = radial.next(), z2 = angular.next();
      sphere_step(s, dt, z1, z2, cfg.n, conditioned, g_lo, g_hi);
      clock += dt;
      remaining -= dt;
      if (conditioned && s.south() < level) return {clock, s.chart()};
    }
    if (!notify(visit, k, static_cast<double>(k) * cfg.step, s.chart())) break;
  }
  return {std::nullopt, s.chart()};
}

RunOutcome<HRadial> run_heis(const HRadial& x0, const SimConfig& cfg, std::uint64_t path, bool conditioned,
                             const PathVisitor<HRadial>& visit) {
  cfg.validate();
  const double level = n_absorption_level(cfg);
  if (conditioned && koranyi(x0) < level) throw DomainError("N-process cannot start inside the origin ball");
  const double rho_lo = cfg.r_floor * cfg.r_floor;
  HeisState s{x0.r * x0.r, x0.t};
  NormalStream radial(cfg.seed, path, 0), vertical(cfg.seed, path, 1);
  const std::size_t steps = cfg.steps();
  const double min_dt = cfg.step * 1e-9;

  if (!notify(visit, 0, 0.0, x0)) return {std::nullopt, x0};
  for (std::size_t k = 1; k <= steps; ++k) {
    double clock = static_cast<double>(k - 1) * cfg.step;
    double remaining = cfg.step;
    while (remaining > 1e-12 * cfg.step) {
      double dt = remaining;
      if (conditioned) dt = std::min(dt, std::max(cfg.pole_substep * std::sqrt(s.gauge4()), min_dt));
      heis_step(s, dt, radial, vertical, cfg.n, conditioned, rho_lo);
      clock += dt;
      remaining -= dt;
      if (conditioned && s.gauge4() < level) return {clock, s.chart()};
    }
    if (!notify(visit, k, static_cast<double>(k) * cfg.step, s.chart())) break;
  }
  return {std::nullopt, s.chart()};
}

RunOutcome<HRadial> run_heis_graded(const HRadial& x0, const SimConfig& cfg, double growth, std::uint64_t path,
                                    const PathVisitor<HRadial>& visit) {
  cfg.validate();
  if (!(growth >= 0.0) || !std::isfinite(growth)) throw std::invalid_argument("step growth must be non-negative");
  const double rho_lo = cfg.r_floor * cfg.r_floor;
  HeisState s{x0.r * x0.r, x0.t};
  NormalStream radial(cfg.seed, path, 0), vertical(cfg.seed, path, 1);
  if (!notify(visit, 0, 0.0, x0)) return {std::nullopt, x0};
  double t = 0.0;
  for (std::size_t k = 1; t < cfg.horizon; ++k) {
    const double dt = std::min(std::max(cfg.step, growth * t), cfg.horizon - t);
    heis_step(s, dt, radial, vertical, cfg.n, false, rho_lo);
    t = cfg.horizon - t <= dt ? cfg.horizon : t + dt;
    if (!notify(visit, k, t, s.chart())) break;
  }
  return {std::nullopt, s.chart()};
}

template <class State, class Runner>
Path<State> collect(const SimConfig& cfg, Runner&& run) {
  Path<State> out;
  out.times.reserve(cfg.steps() + 1);
  out.states.reserve(cfg.steps() + 1);
  const PathVisitor<State> visit = [&](std::size_t, double t, const State& s) {
    out.times.push_back(t);
    out.states.push_back(s);
    return true;
  };
  const RunOutcome<State> outcome = run(visit);
  out.absorption_time = outcome.absorption_time;
  if (outcome.absorption_time) {
    for (std::size_t k = out.times.size(); k <= cfg.steps(); ++k) {
      out.times.push_back(static_cast<double>(k) * cfg.step);
      out.states.push_back(outcome.last_state);
    }
  }
  return out;
}

}  // namespace

RunOutcome<HPoint> run_full_heisenberg(const HPoint& x0, const SimConfig& cfg, std::uint64_t path,
                                       const PathVisitor<HPoint>& visit) {
  cfg.validate();
  if (x0.dim() != static_cast<std::size_t>(cfg.n)) {
    throw std::invalid_argument("start point dimension does not match SimConfig.n");
  }
  std::vector<NormalStream> drivers;
  drivers.reserve(2 * x0.dim());
  for (std::uint32_t d = 0; d < 2 * x0.dim(); ++d) drivers.emplace_back(cfg.seed, path, d);

  HPoint x = x0;
  const double sq = std::sqrt(cfg.step);
  const std::size_t steps = cfg.steps();
  if (!notify(visit, 0, 0.0, x)) return {std::nullopt, x};
  for (std::size_t k = 1; k <= steps; ++k) {
    double area = 0.0;
    for (std::size_t j = 0; j < x.dim(); ++j) {
      const double dx = sq * drivers[2 * j].next();
      const double dy = sq * drivers[2 * j + 1].next();
      area += x.z[j].imag() * dx - x.z[j].real() * dy;
      x.z[j] += cplx(dx, dy);
    }
    x.t += area;
    if (!notify(visit, k, static_cast<double>(k) * cfg.step, x)) break;
  }
  return {std::nullopt, x};
}

RunOutcome<HRadial> run_radial_heisenberg(const HRadial& x0, const SimConfig& cfg, std::uint64_t path,
                                          const PathVisitor<HRadial>& visit) {
  return run_heis(x0, cfg, path, false, visit);
}

RunOutcome<HRadial> run_radial_heisenberg_graded(const HRadial& x0, const SimConfig& cfg, double growth,
                                                 std::uint64_t path, const PathVisitor<HRadial>& visit) {
  return run_heis_graded(x0, cfg, growth, path, visit);
}

RunOutcome<SCyl> run_radial_sphere(const SCyl& x0, const SimConfig& cfg, std::uint64_t path,
                                   const PathVisitor<SCyl>& visit) {
  return run_sphere(x0, cfg, path, false, visit);
}

RunOutcome<SCyl> run_h_process(const SCyl& x0, const SimConfig& cfg, std::uint64_t path,
                               const PathVisitor<SCyl>& visit) {
  return run_sphere(x0, cfg, path, true, visit);
}

RunOutcome<HRadial> run_n_process(const HRadial& x0, const SimConfig& cfg, std::uint64_t path,
                                  const PathVisitor<HRadial>& visit) {
  return run_heis(x0, cfg, path, true, visit);
}

Path<HPoint> simulate_full_heisenberg(const HPoint& x0, const SimConfig& cfg, std::uint64_t path) {
  return collect<HPoint>(cfg, [&](const auto& v) { return run_full_heisenberg(x0, cfg, path, v); });
}

Path<HRadial> simulate_radial_heisenberg(const HRadial& x0, const SimConfig& cfg, std::uint64_t path) {
  return collect<HRadial>(cfg, [&](const auto& v) { return run_radial_heisenberg(x0, cfg, path, v); });
}

Path<SCyl> simulate_radial_sphere(const SCyl& x0, const SimConfig& cfg, std::uint64_t path) {
  return collect<SCyl>(cfg, [&](const auto& v) { return run_radial_sphere(x0, cfg, path, v); });
}

Path<SCyl> simulate_h_process(const SCyl& x0, const SimConfig& cfg, std::uint64_t path) {
  return collect<SCyl>(cfg, [&](const auto& v) { return run_h_process(x0, cfg, path, v); });
}

Path<HRadial> simulate_n_process(const HRadial& x0, const SimConfig& cfg, std::uint64_t path) {
  return collect<HRadial>(cfg, [&](const auto& v) { return run_n_process(x0, cfg, path, v); });
}

Path<HRadial> project_radial(const Path<HPoint>& path) {
  Path<HRadial> out;
  out.times = path.times;
  out.states.reserve(path.states.size());
  for (const auto& p : path.states) out.states.push_back(radial_projection(p));
  out.absorption_time = path.absorption_time;
  return out;
}

}  // namespace hcr
