#include "hcr/timechange.hpp"

#include <cmath>
#include <string>

namespace hcr {

Clock integrate_clock(std::span<const double> times, std::span<const double> integrand) {
  if (times.size() != integrand.size()) throw std::invalid_argument("integrate_clock: size mismatch");
  Clock c;
  c.times.assign(times.begin(), times.end());
  c.values.resize(times.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (i > 0) acc += 0.5 * (integrand[i - 1] + integrand[i]) * (times[i] - times[i - 1]);
    c.values[i] = acc;
  }
  return c;
}

Clock clock_cayley(const Path<HRadial>& path, ClockOrientation orientation) {
  std::vector<double> rate(path.states.size());
  for (std::size_t i = 0; i < rate.size(); ++i) {
    const double h = cayley_factor(path.states[i]);
    rate[i] = orientation == ClockOrientation::image ? h : 1.0 / h;
  }
  return integrate_clock(path.times, rate);
}

Clock clock_kelvin(const Path<HRadial>& path, ClockOrientation orientation) {
  std::vector<double> rate(path.states.size());
  for (std::size_t i = 0; i < rate.size(); ++i) {
    const double gauge4 = koranyi(path.states[i]);
    if (!(gauge4 > 0.0)) throw DomainError("clock_kelvin: path touches the origin");
    rate[i] = orientation == ClockOrientation::image ? 1.0 / gauge4 : gauge4;
  }
  return integrate_clock(path.times, rate);
}

double invert_clock(const Clock& clock, double u) {
  if (clock.values.empty()) throw std::out_of_range("invert_clock: empty clock");
  if (u < 0.0 || u > clock.values.back()) {
    throw std::out_of_range("invert_clock: intrinsic time " + std::to_string(u) + " beyond terminal clock value " +
                            std::to_string(clock.values.back()));
  }
  const auto it = std::lower_bound(clock.values.begin(), clock.values.end(), u);
  const auto i = static_cast<std::size_t>(it - clock.values.begin());
  if (i == 0) return clock.times.front();
  const double v0 = clock.values[i - 1], v1 = clock.values[i];
  if (v1 == v0) return clock.times[i];
  return clock.times[i - 1] + (u - v0) / (v1 - v0) * (clock.times[i] - clock.times[i - 1]);
}

HRadial interpolate_state(const HRadial& a, const HRadial& b, double w) {
  return {a.r + w * (b.r - a.r), a.t + w * (b.t - a.t)};
}

SCyl interpolate_state(const SCyl& a, const SCyl& b, double w) {
  return SCyl::make(a.r + w * (b.r - a.r), a.theta + w * angle_diff(b.theta, a.theta));
}

HPoint interpolate_state(const HPoint& a, const HPoint& b, double w) {
  HPoint out;
  out.z.resize(a.dim());
  for (std::size_t j = 0; j < a.dim(); ++j) out.z[j] = a.z[j] + w * (b.z[j] - a.z[j]);
  out.t = a.t + w * (b.t - a.t);
  return out;
}

}  // namespace hcr
