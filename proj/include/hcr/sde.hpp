#pragma once

// Path simulation for Brownian motion on H^{2n+1}, its radial part, the
// radial sphere diffusion, and the two conditioned (Doob-transformed)
// diffusions: the sphere process conditioned to hit the south pole and the
// Heisenberg process conditioned to hit the origin. All processes are
// generated by L/2.
//
// The radial schemes integrate squared radii: rho = r_H^2 on the Heisenberg
// side and g = sin^2 r_S on the sphere side. In these coordinates the
// singular Bessel drifts become bounded and reflected Euler steps keep the
// state inside its domain. Near the target of a conditioned process the
// step shrinks like the squared gauge so the absorption time is resolved.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "hcr/geometry.hpp"

namespace hcr {

struct SimConfig {
  int n = 1;
  double step = 1e-3;
  double horizon = 1.0;
  std::uint64_t seed = 1;
  std::size_t paths = 20000;
  double pole_eps = 1e-3;  // absorption radius of the conditioned processes
  double r_floor = 1e-6;   // reflection guard for the radial coordinates
  // Substep length near a pole is at most pole_substep * (squared gauge).
  double pole_substep = 0.05;
  unsigned workers = 0;  // 0: one per hardware thread; never affects results

  /// Throws std::invalid_argument on a violated invariant.
  void validate() const;
  std::size_t steps() const;
};

template <class State>
struct Path {
  std::vector<double> times;
  std::vector<State> states;
  std::optional<double> absorption_time;

  bool absorbed() const { return absorption_time.has_value(); }
  std::size_t size() const { return times.size(); }
};

/// Receives grid index, time and state at t = 0 and at every grid time while
/// the process is alive. Returning false stops the simulation early.
template <class State>
using PathVisitor = std::function<bool(std::size_t, double, const State&)>;

template <class State>
struct RunOutcome {
  std::optional<double> absorption_time;
  State last_state;
};

RunOutcome<HPoint> run_full_heisenberg(const HPoint& x0, const SimConfig& cfg, std::uint64_t path,
                                       const PathVisitor<HPoint>& visit);
RunOutcome<HRadial> run_radial_heisenberg(const HRadial& x0, const SimConfig& cfg, std::uint64_t path,
                                          const PathVisitor<HRadial>& visit);
/// Radial Heisenberg path on a graded grid: the step after time t is
/// max(cfg.step, growth * t), which follows the diffusive scale of the
/// process and reaches long horizons in O(log horizon / growth) steps.
RunOutcome<HRadial> run_radial_heisenberg_graded(const HRadial& x0, const SimConfig& cfg, double growth,
                                                 std::uint64_t path, const PathVisitor<HRadial>& visit);
RunOutcome<SCyl> run_radial_sphere(const SCyl& x0, const SimConfig& cfg, std::uint64_t path,
                                   const PathVisitor<SCyl>& visit);
/// Throws DomainError when x0 starts inside the absorption ball.
RunOutcome<SCyl> run_h_process(const SCyl& x0, const SimConfig& cfg, std::uint64_t path,
                               const PathVisitor<SCyl>& visit);
RunOutcome<HRadial> run_n_process(const HRadial& x0, const SimConfig& cfg, std::uint64_t path,
                                  const PathVisitor<HRadial>& visit);

// Whole-path versions on the grid {0, step, ..., horizon}. Absorbed paths
// keep their absorption state for the rest of the grid.
Path<HPoint> simulate_full_heisenberg(const HPoint& x0, const SimConfig& cfg, std::uint64_t path);
Path<HRadial> simulate_radial_heisenberg(const HRadial& x0, const SimConfig& cfg, std::uint64_t path);
Path<SCyl> simulate_radial_sphere(const SCyl& x0, const SimConfig& cfg, std::uint64_t path);
Path<SCyl> simulate_h_process(const SCyl& x0, const SimConfig& cfg, std::uint64_t path);
Path<HRadial> simulate_n_process(const HRadial& x0, const SimConfig& cfg, std::uint64_t path);

Path<HRadial> project_radial(const Path<HPoint>& path);

/// The sphere process is absorbed once south_weight drops below this.
double h_absorption_level(const SimConfig& cfg);
/// The Heisenberg process is absorbed once koranyi drops below this.
double n_absorption_level(const SimConfig& cfg);

}  // namespace hcr
