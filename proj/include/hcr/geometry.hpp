#pragma once

// Closed-form geometry of the Heisenberg group H^{2n+1} and the CR sphere
// S^{2n+1}: group law, Koranyi gauge, Cayley transforms, Kelvin inversion,
// the radial/cylindrical charts and the conformal weights relating them.

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace hcr {

using cplx = std::complex<double>;

/// Raised when an input lies on (or within tolerance of) a pole or the
/// origin where a map or weight is undefined.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Inputs with a conformal weight below this value are rejected.
inline constexpr double kPoleTolerance = 1e-14;

/// Element (z, t) of H^{2n+1}, z in C^n.
struct HPoint {
  std::vector<cplx> z;
  double t = 0.0;

  HPoint() = default;
  HPoint(std::vector<cplx> z_, double t_) : z(std::move(z_)), t(t_) {}
  static HPoint identity(std::size_t n) { return {std::vector<cplx>(n), 0.0}; }

  std::size_t dim() const { return z.size(); }
  double norm2_z() const;
};

/// Radial chart (r_H, t) of the Heisenberg group.
struct HRadial {
  double r = 0.0;
  double t = 0.0;
};

/// Cylindrical chart (r_S, theta) of the sphere. The north pole is (0, 0)
/// and the south pole is (0, pi). Use `make` to get a reduced angle.
struct SCyl {
  double r = 0.0;
  double theta = 0.0;

  static SCyl make(double r, double theta);
};

/// Point of the unit sphere in C^{n+1}.
struct SAmbient {
  std::vector<cplx> zeta;
};

double reduce_angle(double theta);
/// Difference a - b folded into (-pi, pi].
double angle_diff(double a, double b);

HPoint group_mul(const HPoint& a, const HPoint& b);
HPoint group_inv(const HPoint& a);

HRadial radial_projection(const HPoint& p);

/// Koranyi gauge to the fourth power, r^4 + 4 t^2.
inline double koranyi(const HRadial& p) {
  const double r2 = p.r * p.r;
  return r2 * r2 + 4.0 * p.t * p.t;
}

/// Boundary identification (z, t) -> (z, 2t + i|z|^2) of the Siegel domain.
std::vector<cplx> siegel_boundary(const HPoint& p);

/// Cayley transform onto the sphere minus the south pole -e_n.
SAmbient cayley(const HPoint& p);
HPoint cayley_inverse(const SAmbient& s);
/// Cayley transform onto the sphere minus the north pole e_n.
SAmbient cayley_south(const HPoint& p);
HPoint cayley_south_inverse(const SAmbient& s);

/// Cylindrical coordinates of an ambient sphere point.
SCyl cylindrical(const SAmbient& s);

/// Radial form of `cayley`. The angle is taken as atan2(4t, 1 - N), the
/// argument of the last ambient coordinate.
SCyl cayley_chart(const HRadial& p);
/// Throws DomainError at the south pole.
HRadial cayley_chart_inverse(const SCyl& q);

/// Heisenberg inversion z/(|z|^2 - 2it), t/(|z|^4 + 4t^2). Throws at 0.
HPoint kelvin(const HPoint& p);
HRadial kelvin_radial(const HRadial& p);

// Conformal weights. `south_weight` vanishes only at the south pole and
// `north_weight` only at the north pole. The Heisenberg-side factors are
// their pullbacks through `cayley_chart`.

template <class T>
T south_weight(const T& r, const T& theta) {
  using std::cos;
  const T c = cos(r);
  return 1.0 + 2.0 * c * cos(theta) + c * c;
}

template <class T>
T north_weight(const T& r, const T& theta) {
  using std::cos;
  const T c = cos(r);
  return 1.0 + c * c - 2.0 * c * cos(theta);
}

template <class T>
T koranyi(const T& r, const T& t) {
  const T r2 = r * r;
  return r2 * r2 + 4.0 * t * t;
}

inline double south_weight(const SCyl& q) { return south_weight(q.r, q.theta); }
inline double north_weight(const SCyl& q) { return north_weight(q.r, q.theta); }

/// 4 / ((1 + r^2)^2 + 4t^2); equals south_weight after the Cayley chart.
double cayley_factor(const HRadial& p);
/// 4N / ((1 + r^2)^2 + 4t^2); equals north_weight after the Cayley chart.
double cayley_factor_dual(const HRadial& p);

/// Chart form of |J| = H^{n+1}:
///   |sin^{2n-1}(r_S) cos(r_S) det D(cayley_chart)(p)| - H(p)^{n+1} r^{2n-1}
/// with the derivative taken by central differences of step `fd_step`.
/// Throws DomainError at r = 0 and at (1, 0), where theta is undefined.
double measure_jacobian_residual(const HRadial& p, int n, double fd_step = 1e-5);

}  // namespace hcr
