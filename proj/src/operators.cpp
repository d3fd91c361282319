#include "hcr/operators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hcr {

namespace {

constexpr double kNeumannTolerance = 1e-12;

void require_dimension(int n) {
  if (n < 1) throw std::invalid_argument("dimension n must be >= 1, got " + std::to_string(n));
}

Jet2 south_weight_jet(const SCyl& q) {
  return south_weight(Jet2::variable1(q.r), Jet2::variable2(q.theta));
}

Jet2 koranyi_jet(const HRadial& p) { return koranyi(Jet2::variable1(p.r), Jet2::variable2(p.t)); }

double require_weight(double w, const char* where) {
  if (!(w >= kPoleTolerance)) throw DomainError(std::string(where) + ": point too close to the pole");
  return w;
}

struct MapDerivatives {
  std::array<double, 2> first1{}, first2{};  // d map / d x1, d map / d x2
  std::array<double, 2> second11{}, second12{}, second22{};
};

MapDerivatives central_differences(const ChartMap& map, bool angular, double x1, double x2, double h) {
  const auto center = map(x1, x2);
  auto at = [&](double a, double b) {
    auto m = map(a, b);
    if (angular) m[1] = center[1] + angle_diff(m[1], center[1]);
    return m;
  };
  const auto pp = at(x1 + h, x2 + h), pm = at(x1 + h, x2 - h);
  const auto mp = at(x1 - h, x2 + h), mm = at(x1 - h, x2 - h);
  const auto p0 = at(x1 + h, x2), m0 = at(x1 - h, x2);
  const auto op = at(x1, x2 + h), om = at(x1, x2 - h);
  MapDerivatives d;
  for (int a = 0; a < 2; ++a) {
    d.first1[a] = (p0[a] - m0[a]) / (2.0 * h);
    d.first2[a] = (op[a] - om[a]) / (2.0 * h);
    d.second11[a] = (p0[a] - 2.0 * center[a] + m0[a]) / (h * h);
    d.second22[a] = (op[a] - 2.0 * center[a] + om[a]) / (h * h);
    d.second12[a] = (pp[a] - pm[a] - mp[a] + mm[a]) / (4.0 * h * h);
  }
  return d;
}

MapDerivatives richardson(const MapDerivatives& coarse, const MapDerivatives& fine) {
  auto mix = [](const std::array<double, 2>& c, const std::array<double, 2>& f) {
    return std::array<double, 2>{(4.0 * f[0] - c[0]) / 3.0, (4.0 * f[1] - c[1]) / 3.0};
  };
  return {mix(coarse.first1, fine.first1), mix(coarse.first2, fine.first2), mix(coarse.second11, fine.second11),
          mix(coarse.second12, fine.second12), mix(coarse.second22, fine.second22)};
}

}  // namespace

TestFunction operator*(const TestFunction& a, const TestFunction& b) {
  return TestFunction("(" + a.name_ + ")*(" + b.name_ + ")",
                      [fa = a.body_, fb = b.body_](const Jet2& x, const Jet2& y) { return fa(x, y) * fb(x, y); });
}

TestFunction constant_function(double c) {
  return TestFunction("const", [c](const Jet2&, const Jet2&) { return Jet2(c); });
}

std::vector<TestFunction> sphere_basket() {
  return {
      TestFunction("cos(r)cos(theta)", [](const Jet2& r, const Jet2& th) { return cos(r) * cos(th); }),
      TestFunction("sin(r)^2 sin(theta)", [](const Jet2& r, const Jet2& th) { return sin(r) * sin(r) * sin(th); }),
      TestFunction("cos(theta)", [](const Jet2&, const Jet2& th) { return cos(th); }),
      TestFunction("cos(2r)", [](const Jet2& r, const Jet2&) { return cos(2.0 * r); }),
      TestFunction("sin(r)^2 cos(2theta)",
                   [](const Jet2& r, const Jet2& th) { return sin(r) * sin(r) * cos(2.0 * th); }),
      TestFunction("exp(cos(r)sin(theta))", [](const Jet2& r, const Jet2& th) { return exp(cos(r) * sin(th)); }),
      constant_function(1.0),
  };
}

std::vector<TestFunction> heisenberg_basket() {
  return {
      TestFunction("r^2", [](const Jet2& r, const Jet2&) { return r * r; }),
      TestFunction("t", [](const Jet2&, const Jet2& t) { return t; }),
      TestFunction("exp(-N)", [](const Jet2& r, const Jet2& t) { return exp(-koranyi(r, t)); }),
      TestFunction("r^2 t exp(-r^2)", [](const Jet2& r, const Jet2& t) { return r * r * t * exp(-(r * r)); }),
      TestFunction("cos(t)exp(-r^2)", [](const Jet2& r, const Jet2& t) { return cos(t) * exp(-(r * r)); }),
      TestFunction("1/(1+r^2+t^2)", [](const Jet2& r, const Jet2& t) { return reciprocal(1.0 + r * r + t * t); }),
      constant_function(1.0),
  };
}

double heisenberg_laplacian(const Jet2& f, const HRadial& p, int n) {
  require_dimension(n);
  if (p.r == 0.0) {
    if (std::abs(f.d1) > kNeumannTolerance) throw DomainError("heisenberg_laplacian: singular at r = 0");
    return 2.0 * n * f.d11;
  }
  return f.d11 + (2.0 * n - 1.0) / p.r * f.d1 + p.r * p.r * f.d22;
}

double heisenberg_laplacian(const TestFunction& f, const HRadial& p, int n) {
  return heisenberg_laplacian(f.at(p.r, p.t), p, n);
}

double sphere_laplacian(const Jet2& f, const SCyl& q, int n) {
  require_dimension(n);
  if (q.r == 0.0) {
    if (std::abs(f.d1) > kNeumannTolerance) throw DomainError("sphere_laplacian: singular at r = 0");
    return 2.0 * n * f.d11;
  }
  if (!(q.r < std::numbers::pi / 2)) throw DomainError("sphere_laplacian: r must lie below pi/2");
  const double tn = std::tan(q.r);
  return f.d11 + ((2.0 * n - 1.0) / tn - tn) * f.d1 + tn * tn * f.d22;
}

double sphere_laplacian(const TestFunction& f, const SCyl& q, int n) {
  return sphere_laplacian(f.at(q.r, q.theta), q, n);
}

double sphere_carre_du_champ(const Jet2& f, const Jet2& g, const SCyl& q) {
  const double tn = std::tan(q.r);
  return f.d1 * g.d1 + tn * tn * f.d2 * g.d2;
}

double heisenberg_carre_du_champ(const Jet2& f, const Jet2& g, const HRadial& p) {
  return f.d1 * g.d1 + p.r * p.r * f.d2 * g.d2;
}

double sphere_carre_du_champ_bracket(const TestFunction& f, const TestFunction& g, const SCyl& q, int n) {
  const Jet2 fj = f.at(q.r, q.theta), gj = g.at(q.r, q.theta);
  return 0.5 * (sphere_laplacian(fj * gj, q, n) - fj.v * sphere_laplacian(gj, q, n) -
                gj.v * sphere_laplacian(fj, q, n));
}

double heisenberg_carre_du_champ_bracket(const TestFunction& f, const TestFunction& g, const HRadial& p, int n) {
  const Jet2 fj = f.at(p.r, p.t), gj = g.at(p.r, p.t);
  return 0.5 * (heisenberg_laplacian(fj * gj, p, n) - fj.v * heisenberg_laplacian(gj, p, n) -
                gj.v * heisenberg_laplacian(fj, p, n));
}

DriftVec sphere_drift(const SCyl& q, int n) {
  require_dimension(n);
  const double tn = std::tan(q.r);
  return {0.5 * ((2.0 * n - 1.0) / tn - tn), 0.0};
}

DriftVec heisenberg_drift(const HRadial& p, int n) {
  require_dimension(n);
  return {(2.0 * n - 1.0) / (2.0 * p.r), 0.0};
}

DriftVec h_process_drift(const SCyl& q, int n) {
  const double h = require_weight(south_weight(q), "h_process_drift");
  const DriftVec base = sphere_drift(q, n);
  const double s = std::sin(q.r), c = std::cos(q.r), tn = std::tan(q.r);
  const double h_r = -2.0 * s * (std::cos(q.theta) + c);
  const double h_th = -2.0 * c * std::sin(q.theta);
  return {base.first - 0.5 * n * h_r / h, -0.5 * n * tn * tn * h_th / h};
}

DriftVec n_process_drift(const HRadial& p, int n) {
  const double gauge4 = koranyi(p);
  if (!(gauge4 > 0.0)) throw DomainError("n_process_drift: undefined at the origin");
  const DriftVec base = heisenberg_drift(p, n);
  const double r3 = p.r * p.r * p.r;
  return {base.first - 0.5 * n * 4.0 * r3 / gauge4, -0.5 * n * p.r * p.r * 8.0 * p.t / gauge4};
}

Jet2 compose_with_chart(const TestFunction& f, const ChartMap& map, bool angular_output, double x1, double x2,
                        const ChartFd& fd) {
  MapDerivatives d = central_differences(map, angular_output, x1, x2, fd.step);
  if (fd.richardson) d = richardson(d, central_differences(map, angular_output, x1, x2, 0.5 * fd.step));
  const auto y = map(x1, x2);
  const Jet2 fy = f.at(y[0], y[1]);
  const double fa[2] = {fy.d1, fy.d2};
  const double fab[2][2] = {{fy.d11, fy.d12}, {fy.d12, fy.d22}};

  Jet2 out(fy.v);
  out.d1 = fa[0] * d.first1[0] + fa[1] * d.first1[1];
  out.d2 = fa[0] * d.first2[0] + fa[1] * d.first2[1];
  double h11 = 0.0, h12 = 0.0, h22 = 0.0;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      h11 += fab[a][b] * d.first1[a] * d.first1[b];
      h12 += fab[a][b] * d.first1[a] * d.first2[b];
      h22 += fab[a][b] * d.first2[a] * d.first2[b];
    }
    h11 += fa[a] * d.second11[a];
    h12 += fa[a] * d.second12[a];
    h22 += fa[a] * d.second22[a];
  }
  out.d11 = h11;
  out.d12 = h12;
  out.d22 = h22;
  return out;
}

Jet2 pull_back_cayley(const TestFunction& f, const HRadial& p, const ChartFd& fd) {
  const ChartMap map = [](double r, double t) {
    const SCyl q = cayley_chart({r, t});
    return std::array<double, 2>{q.r, q.theta};
  };
  return compose_with_chart(f, map, true, p.r, p.t, fd);
}

Jet2 pull_back_kelvin(const TestFunction& f, const HRadial& p, const ChartFd& fd) {
  const ChartMap map = [](double r, double t) {
    const HRadial k = kelvin_radial({r, t});
    return std::array<double, 2>{k.r, k.t};
  };
  return compose_with_chart(f, map, false, p.r, p.t, fd);
}

double IdentityResidual::absolute() const { return std::abs(lhs - rhs); }

double IdentityResidual::relative() const {
  return absolute() / std::max({1.0, std::abs(lhs), std::abs(rhs)});
}

namespace {

// (L_{H} pushed forward by Cayley) f evaluated at the sphere point q.
double pushed_heisenberg_laplacian(const TestFunction& f, const SCyl& q, int n, const ChartFd& fd) {
  const HRadial p = cayley_chart_inverse(q);
  return heisenberg_laplacian(pull_back_cayley(f, p, fd), p, n);
}

Jet2 weighted_by_south(const TestFunction& f, const SCyl& q, int n) {
  const Jet2 h = south_weight_jet(q);
  return pow(h, -0.5 * n) * f.at(q.r, q.theta);
}

// h^{n/2+1} (L_S - n^2)(h^{-n/2} f)
double conjugated_sphere_laplacian(const TestFunction& f, const SCyl& q, int n) {
  const double h = require_weight(south_weight(q), "conjugated_sphere_laplacian");
  const Jet2 g = weighted_by_south(f, q, n);
  return std::pow(h, 0.5 * n + 1.0) * (sphere_laplacian(g, q, n) - n * n * g.v);
}

// h (L_S f + 2 Gamma(h^{-n/2}, f) / h^{-n/2})
double doob_form(const TestFunction& f, const SCyl& q, int n) {
  const Jet2 h = south_weight_jet(q);
  require_weight(h.v, "doob_form");
  const Jet2 w = pow(h, -0.5 * n);
  const Jet2 fj = f.at(q.r, q.theta);
  return h.v * (sphere_laplacian(fj, q, n) + 2.0 * sphere_carre_du_champ(w, fj, q) / w.v);
}

}  // namespace

IdentityResidual residual_cayley_conjugation(const TestFunction& f, const SCyl& q, int n, const ChartFd& fd) {
  return {-conjugated_sphere_laplacian(f, q, n), -pushed_heisenberg_laplacian(f, q, n, fd)};
}

IdentityResidual residual_doob(const TestFunction& f, const SCyl& q, int n, const ChartFd& fd) {
  return {pushed_heisenberg_laplacian(f, q, n, fd), doob_form(f, q, n)};
}

IdentityResidual doob_consistency(const TestFunction& f, const SCyl& q, int n) {
  return {doob_form(f, q, n), conjugated_sphere_laplacian(f, q, n)};
}

IdentityResidual residual_kelvin(const TestFunction& f, const HRadial& p, int n, const ChartFd& fd) {
  const double gauge4 = koranyi(p);
  if (!(gauge4 > 0.0)) throw DomainError("residual_kelvin: undefined at the origin");
  const HRadial image = kelvin_radial(p);
  const double lhs = heisenberg_laplacian(pull_back_kelvin(f, image, fd), image, n);
  const Jet2 weighted = pow(koranyi_jet(p), -0.5 * n) * f.at(p.r, p.t);
  const double rhs = std::pow(gauge4, 0.5 * n + 1.0) * heisenberg_laplacian(weighted, p, n);
  return {lhs, rhs};
}

double sphere_harmonicity_residual(const SCyl& q, int n) {
  const Jet2 h = south_weight_jet(q);
  require_weight(h.v, "sphere_harmonicity_residual");
  const Jet2 w = pow(h, -0.5 * n);
  const double target = n * n * w.v;
  return std::abs(sphere_laplacian(w, q, n) - target) / target;
}

double heisenberg_harmonicity_residual(const HRadial& p, int n) {
  const Jet2 gauge4 = koranyi_jet(p);
  if (!(gauge4.v > 0.0)) throw DomainError("heisenberg_harmonicity_residual: undefined at the origin");
  return std::abs(heisenberg_laplacian(pow(gauge4, -0.5 * n), p, n));
}

}  // namespace hcr
