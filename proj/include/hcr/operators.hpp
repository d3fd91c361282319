#pragma once

// Radial sub-Laplacians of H^{2n+1} and S^{2n+1}, their carre du champ,
// the drifts of the Doob-transformed diffusions, and residual evaluators
// for the conformal identities linking the two sides.
//
// Conventions: the Heisenberg chart is (r, t), the sphere chart is
// (r, theta). Operators are the full generators L (not L/2); drifts are
// those of the diffusion generated by L/2.

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "hcr/geometry.hpp"
#include "hcr/jet.hpp"

namespace hcr {

/// Drift of a radial diffusion in chart coordinates, per unit time.
struct DriftVec {
  double first = 0.0;
  double second = 0.0;
};

/// Smooth scalar field on a two-dimensional chart. The body is written once
/// against Jet2, so value and partials up to order two are exact.
class TestFunction {
 public:
  using Body = std::function<Jet2(const Jet2&, const Jet2&)>;

  TestFunction(std::string name, Body body) : name_(std::move(name)), body_(std::move(body)) {}

  const std::string& name() const { return name_; }
  Jet2 at(double x1, double x2) const { return body_(Jet2::variable1(x1), Jet2::variable2(x2)); }
  double value(double x1, double x2) const { return body_(Jet2(x1), Jet2(x2)).v; }
  Jet2 operator()(const Jet2& x1, const Jet2& x2) const { return body_(x1, x2); }

  friend TestFunction operator*(const TestFunction& a, const TestFunction& b);

 private:
  std::string name_;
  Body body_;
};

TestFunction constant_function(double c);

/// Functions of (r, theta), 2pi-periodic in theta, with df/dr = 0 at r = 0.
std::vector<TestFunction> sphere_basket();
/// Functions of (r, t) with df/dr = 0 at r = 0.
std::vector<TestFunction> heisenberg_basket();

// L_H f = f_rr + (2n-1)/r f_r + r^2 f_tt. At r = 0 a function with
// f_r = 0 uses the even-extension limit 2n f_rr; anything else throws.
double heisenberg_laplacian(const Jet2& f, const HRadial& p, int n);
double heisenberg_laplacian(const TestFunction& f, const HRadial& p, int n);

// L_S f = f_rr + ((2n-1)cot r - tan r) f_r + tan^2 r f_thth, same r = 0 rule.
double sphere_laplacian(const Jet2& f, const SCyl& q, int n);
double sphere_laplacian(const TestFunction& f, const SCyl& q, int n);

/// Closed forms f_r g_r + tan^2 r f_th g_th and f_r g_r + r^2 f_t g_t.
double sphere_carre_du_champ(const Jet2& f, const Jet2& g, const SCyl& q);
double heisenberg_carre_du_champ(const Jet2& f, const Jet2& g, const HRadial& p);

/// The defining bracket (L(fg) - f Lg - g Lf) / 2, evaluated through the
/// operators themselves. Used to cross-check the closed forms.
double sphere_carre_du_champ_bracket(const TestFunction& f, const TestFunction& g, const SCyl& q, int n);
double heisenberg_carre_du_champ_bracket(const TestFunction& f, const TestFunction& g, const HRadial& p,
                                         int n);

DriftVec sphere_drift(const SCyl& q, int n);
DriftVec heisenberg_drift(const HRadial& p, int n);

/// Drift of L^h / 2: the sphere diffusion conditioned to reach the south pole.
DriftVec h_process_drift(const SCyl& q, int n);
/// Drift of L^N / 2: the Heisenberg diffusion conditioned to reach the origin.
DriftVec n_process_drift(const HRadial& p, int n);

/// Central-difference settings for derivatives of chart maps.
struct ChartFd {
  double step = 1e-4;
  bool richardson = true;
};

/// Partials of f o map at x, where map's second output is an angle when
/// `angular_output` is set. The map derivatives come from central
/// differences; f's own partials are exact.
using ChartMap = std::function<std::array<double, 2>(double, double)>;
Jet2 compose_with_chart(const TestFunction& f, const ChartMap& map, bool angular_output, double x1, double x2,
                        const ChartFd& fd = {});

/// (f o cayley_chart) at the Heisenberg point p, f a sphere-chart function.
Jet2 pull_back_cayley(const TestFunction& f, const HRadial& p, const ChartFd& fd = {});
/// (F o kelvin_radial) at p.
Jet2 pull_back_kelvin(const TestFunction& f, const HRadial& p, const ChartFd& fd = {});

struct IdentityResidual {
  double lhs = 0.0;
  double rhs = 0.0;

  double absolute() const;
  /// |lhs - rhs| / max(1, |lhs|, |rhs|)
  double relative() const;
};

/// h^{n/2+1} (-L_S + n^2)(h^{-n/2} f)  versus  -(pushforward of L_H by Cayley) f.
IdentityResidual residual_cayley_conjugation(const TestFunction& f, const SCyl& q, int n, const ChartFd& fd = {});
/// Pushforward of L_H by Cayley versus h (L_S f + 2 Gamma(h^{-n/2}, f) / h^{-n/2}).
IdentityResidual residual_doob(const TestFunction& f, const SCyl& q, int n, const ChartFd& fd = {});
/// Both closed-form right-hand sides of the two identities above; no charts.
IdentityResidual doob_consistency(const TestFunction& f, const SCyl& q, int n);
/// (L_H (F o K))(K p)  versus  N^{n/2+1} L_H(N^{-n/2} F)(p).
IdentityResidual residual_kelvin(const TestFunction& f, const HRadial& p, int n, const ChartFd& fd = {});

/// |(L_S - n^2) h^{-n/2}| / (n^2 h^{-n/2}) at q.
double sphere_harmonicity_residual(const SCyl& q, int n);
/// |L_H N^{-n/2}| at p.
double heisenberg_harmonicity_residual(const HRadial& p, int n);

}  // namespace hcr
