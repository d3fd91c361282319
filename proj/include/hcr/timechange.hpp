#pragma once

// Additive clocks A_t = int_0^t c(X_s) ds along simulated paths, their
// right-continuous inverse sigma_u = inf{s : A_s > u}, and resampling of a
// path onto intrinsic time u -> X_{sigma_u}.

#include <algorithm>
#include <span>
#include <stdexcept>
#include <vector>

#include "hcr/geometry.hpp"
#include "hcr/sde.hpp"

namespace hcr {

/// Where the conformal factor of a time change is evaluated.
///  - image: at the image point of the path (H(Y) for Cayley, N(K(X)) = 1/N(X) for Kelvin).
///    This is the orientation consistent with the pushed-forward generators.
///  - preimage: the alternative reading, 1/H(Y) for Cayley and N(X) for Kelvin.
enum class ClockOrientation { image, preimage };

struct Clock {
  std::vector<double> times;
  std::vector<double> values;

  double terminal() const { return values.empty() ? 0.0 : values.back(); }
};

/// Cumulative trapezoid rule of `integrand` sampled at `times`.
Clock integrate_clock(std::span<const double> times, std::span<const double> integrand);

Clock clock_cayley(const Path<HRadial>& path, ClockOrientation orientation = ClockOrientation::image);
/// Throws DomainError if the path touches the origin.
Clock clock_kelvin(const Path<HRadial>& path, ClockOrientation orientation = ClockOrientation::image);

/// Piecewise-linear inverse. Throws std::out_of_range when u exceeds the
/// terminal clock value (the path ended before intrinsic time u).
double invert_clock(const Clock& clock, double u);

HRadial interpolate_state(const HRadial& a, const HRadial& b, double w);
/// Linear in r; theta along the shorter arc.
SCyl interpolate_state(const SCyl& a, const SCyl& b, double w);
HPoint interpolate_state(const HPoint& a, const HPoint& b, double w);

/// State at an arbitrary time inside the path's grid, by interpolation.
template <class State>
State state_at(const Path<State>& path, double time) {
  if (path.times.empty()) throw std::out_of_range("state_at: empty path");
  if (time <= path.times.front()) return path.states.front();
  if (time >= path.times.back()) return path.states.back();
  const auto it = std::upper_bound(path.times.begin(), path.times.end(), time);
  const auto i = static_cast<std::size_t>(it - path.times.begin());
  const double t0 = path.times[i - 1], t1 = path.times[i];
  return interpolate_state(path.states[i - 1], path.states[i], (time - t0) / (t1 - t0));
}

/// The path read on intrinsic time: entry k is the state at sigma(grid[k]),
/// stamped with time grid[k].
template <class State>
Path<State> resample(const Path<State>& path, const Clock& clock, std::span<const double> grid) {
  if (clock.times.size() != path.times.size()) throw std::invalid_argument("resample: clock/path size mismatch");
  Path<State> out;
  out.times.assign(grid.begin(), grid.end());
  out.states.reserve(grid.size());
  for (double u : grid) out.states.push_back(state_at(path, invert_clock(clock, u)));
  return out;
}

}  // namespace hcr
