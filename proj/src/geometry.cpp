#include "hcr/geometry.hpp"

#include <array>

namespace hcr {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_same_dim(const HPoint& a, const HPoint& b) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("Heisenberg points of different dimension: " +
                                std::to_string(a.dim()) + " vs " + std::to_string(b.dim()));
  }
}

}  // namespace

double HPoint::norm2_z() const {
  double s = 0.0;
  for (const auto& zj : z) s += std::norm(zj);
  return s;
}

double reduce_angle(double theta) {
  double r = std::fmod(theta, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  // fmod of a tiny negative number can round up to exactly 2pi
  if (r >= kTwoPi) r = 0.0;
  return r;
}

double angle_diff(double a, double b) {
  double d = std::remainder(a - b, kTwoPi);
  if (d <= -std::numbers::pi) d += kTwoPi;
  return d;
}

SCyl SCyl::make(double r, double theta) { return SCyl{r, reduce_angle(theta)}; }

HPoint group_mul(const HPoint& a, const HPoint& b) {
  require_same_dim(a, b);
  HPoint out;
  out.z.resize(a.dim());
  double twist = 0.0;
  for (std::size_t j = 0; j < a.dim(); ++j) {
    out.z[j] = a.z[j] + b.z[j];
    twist += std::imag(a.z[j] * std::conj(b.z[j]));
  }
  out.t = a.t + b.t + twist;
  return out;
}

HPoint group_inv(const HPoint& a) {
  HPoint out;
  out.z.reserve(a.dim());
  for (const auto& zj : a.z) out.z.push_back(-zj);
  out.t = -a.t;
  return out;
}

HRadial radial_projection(const HPoint& p) { return {std::sqrt(p.norm2_z()), p.t}; }

std::vector<cplx> siegel_boundary(const HPoint& p) {
  std::vector<cplx> w(p.z);
  w.emplace_back(2.0 * p.t, p.norm2_z());
  return w;
}

SAmbient cayley(const HPoint& p) {
  const double z2 = p.norm2_z();
  const cplx denom(1.0 + z2, -2.0 * p.t);
  SAmbient s;
  s.zeta.reserve(p.dim() + 1);
  for (const auto& zj : p.z) s.zeta.push_back(2.0 * zj / denom);
  s.zeta.push_back(cplx(1.0 - z2, 2.0 * p.t) / denom);
  return s;
}

HPoint cayley_inverse(const SAmbient& s) {
  if (s.zeta.size() < 2) throw std::invalid_argument("ambient point needs n+1 >= 2 coordinates");
  const cplx last = s.zeta.back();
  const cplx shifted = 1.0 + last;
  const double m = std::norm(shifted);
  if (m < kPoleTolerance) throw DomainError("cayley_inverse: point is the south pole");
  HPoint p;
  p.z.reserve(s.zeta.size() - 1);
  for (std::size_t j = 0; j + 1 < s.zeta.size(); ++j) p.z.push_back(s.zeta[j] / shifted);
  // (i/2)(conj(zeta) - zeta) = Im(zeta)
  p.t = std::imag(last) / m;
  return p;
}

SAmbient cayley_south(const HPoint& p) {
  const double z2 = p.norm2_z();
  const cplx denom(1.0 + z2, 2.0 * p.t);
  SAmbient s;
  s.zeta.reserve(p.dim() + 1);
  for (const auto& zj : p.z) s.zeta.push_back(2.0 * zj / denom);
  s.zeta.push_back(-cplx(1.0 - z2, -2.0 * p.t) / denom);
  return s;
}

HPoint cayley_south_inverse(const SAmbient& s) {
  if (s.zeta.size() < 2) throw std::invalid_argument("ambient point needs n+1 >= 2 coordinates");
  const cplx last = s.zeta.back();
  const cplx shifted = 1.0 - last;
  const double m = std::norm(shifted);
  if (m < kPoleTolerance) throw DomainError("cayley_south_inverse: point is the north pole");
  HPoint p;
  p.z.reserve(s.zeta.size() - 1);
  for (std::size_t j = 0; j + 1 < s.zeta.size(); ++j) p.z.push_back(s.zeta[j] / shifted);
  p.t = std::imag(last) / m;
  return p;
}

SCyl cylindrical(const SAmbient& s) {
  double head = 0.0;
  for (std::size_t j = 0; j + 1 < s.zeta.size(); ++j) head += std::norm(s.zeta[j]);
  const cplx last = s.zeta.back();
  return SCyl::make(std::atan2(std::sqrt(head), std::abs(last)), std::arg(last));
}

SCyl cayley_chart(const HRadial& p) {
  const double r2 = p.r * p.r;
  const double cos_part = std::sqrt((1.0 - r2) * (1.0 - r2) + 4.0 * p.t * p.t);
  const double rs = std::atan2(2.0 * p.r, cos_part);
  return SCyl::make(rs, std::atan2(4.0 * p.t, 1.0 - koranyi(p)));
}

HRadial cayley_chart_inverse(const SCyl& q) {
  const double h = south_weight(q);
  if (h < kPoleTolerance) throw DomainError("cayley_chart_inverse: point is the south pole");
  return {std::sin(q.r) / std::sqrt(h), std::cos(q.r) * std::sin(q.theta) / h};
}

HPoint kelvin(const HPoint& p) {
  const double z2 = p.norm2_z();
  const double gauge4 = z2 * z2 + 4.0 * p.t * p.t;
  if (gauge4 == 0.0) throw DomainError("kelvin: inversion is undefined at the origin");
  const cplx denom(z2, -2.0 * p.t);
  HPoint out;
  out.z.reserve(p.dim());
  for (const auto& zj : p.z) out.z.push_back(zj / denom);
  out.t = p.t / gauge4;
  return out;
}

HRadial kelvin_radial(const HRadial& p) {
  const double gauge4 = koranyi(p);
  if (gauge4 == 0.0) throw DomainError("kelvin_radial: inversion is undefined at the origin");
  return {p.r / std::sqrt(gauge4), p.t / gauge4};
}

double cayley_factor(const HRadial& p) {
  const double a = 1.0 + p.r * p.r;
  return 4.0 / (a * a + 4.0 * p.t * p.t);
}

double cayley_factor_dual(const HRadial& p) {
  const double a = 1.0 + p.r * p.r;
  return 4.0 * koranyi(p) / (a * a + 4.0 * p.t * p.t);
}

double measure_jacobian_residual(const HRadial& p, int n, double fd_step) {
  if (n < 1) throw std::invalid_argument("dimension n must be >= 1");
  if (p.r < 1e-8) throw DomainError("measure_jacobian_residual: degenerate at r = 0");
  const SCyl c0 = cayley_chart(p);
  if (std::cos(c0.r) < 1e-6) throw DomainError("measure_jacobian_residual: chart is singular where r_S = pi/2");
  auto diff = [&](double dr, double dt) {
    const SCyl plus = cayley_chart({p.r + dr, p.t + dt});
    const SCyl minus = cayley_chart({p.r - dr, p.t - dt});
    return std::array<double, 2>{(plus.r - minus.r) / (2.0 * fd_step),
                                 angle_diff(plus.theta, minus.theta) / (2.0 * fd_step)};
  };
  const auto d_r = diff(fd_step, 0.0);
  const auto d_t = diff(0.0, fd_step);
  const double det = d_r[0] * d_t[1] - d_t[0] * d_r[1];
  const double sphere_density = std::pow(std::sin(c0.r), 2 * n - 1) * std::cos(c0.r);
  const double heis_density = std::pow(cayley_factor(p), n + 1) * std::pow(p.r, 2 * n - 1);
  return std::abs(sphere_density * det) - heis_density;
}

}  // namespace hcr
