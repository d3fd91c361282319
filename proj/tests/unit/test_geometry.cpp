#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "hcr/geometry.hpp"

using namespace hcr;
using std::numbers::pi;

namespace {

HPoint point1(cplx z, double t) { return {{z}, t}; }

double distance(const HPoint& a, const HPoint& b) {
  double d = std::abs(a.t - b.t);
  for (std::size_t j = 0; j < a.dim(); ++j) d = std::max(d, std::abs(a.z[j] - b.z[j]));
  return d;
}

HPoint random_point(std::mt19937_64& gen, std::size_t n) {
  std::normal_distribution<double> g;
  HPoint p = HPoint::identity(n);
  for (auto& z : p.z) z = {g(gen), g(gen)};
  p.t = g(gen);
  return p;
}

}  // namespace

TEST_SUITE("geometry") {
  TEST_CASE("group law") {
    const HPoint c = group_mul(point1(1.0, 0.0), point1({0.0, 1.0}, 0.0));
    CHECK(c.z[0].real() == doctest::Approx(1.0));
    CHECK(c.z[0].imag() == doctest::Approx(1.0));
    CHECK(c.t == doctest::Approx(-1.0));

    const HPoint inv = group_inv(point1({1.0, 1.0}, 3.0));
    CHECK(distance(inv, point1({-1.0, -1.0}, -3.0)) == 0.0);

    std::mt19937_64 gen(7);
    for (std::size_t n : {1u, 2u, 3u}) {
      const HPoint a = random_point(gen, n);
      CHECK(distance(group_mul(a, HPoint::identity(n)), a) == 0.0);
      CHECK(distance(group_mul(a, group_inv(a)), HPoint::identity(n)) < 1e-15);
      CHECK(distance(group_inv(group_inv(a)), a) == 0.0);
    }
  }

  TEST_CASE("koranyi gauge") {
    CHECK(koranyi(HRadial{1.0, 0.0}) == 1.0);
    CHECK(koranyi(HRadial{1.0, 1.0}) == 5.0);
    CHECK(koranyi(HRadial{2.0, 4.0}) == 80.0);
    CHECK(koranyi(HRadial{2.0, 4.0}) == 16.0 * koranyi(HRadial{1.0, 1.0}));
  }

  TEST_CASE("siegel boundary") {
    auto b = siegel_boundary(point1(0.0, 0.0));
    CHECK(std::abs(b[0]) == 0.0);
    CHECK(std::abs(b[1]) == 0.0);
    b = siegel_boundary(point1(1.0, 0.0));
    CHECK(std::abs(b[0] - cplx(1.0, 0.0)) < 1e-15);
    CHECK(std::abs(b[1] - cplx(0.0, 1.0)) < 1e-15);
    b = siegel_boundary(point1(0.0, 1.0));
    CHECK(std::abs(b[1] - cplx(2.0, 0.0)) < 1e-15);
  }

  TEST_CASE("cayley transforms") {
    SAmbient s = cayley(point1(0.0, 0.0));
    CHECK(std::abs(s.zeta[0]) < 1e-15);
    CHECK(std::abs(s.zeta[1] - cplx(1.0, 0.0)) < 1e-15);

    s = cayley(point1(1.0, 1.0));
    CHECK(std::abs(s.zeta[0] - cplx(0.5, 0.5)) < 1e-15);
    CHECK(std::abs(s.zeta[1] - cplx(-0.5, 0.5)) < 1e-15);
    CHECK(std::norm(s.zeta[0]) + std::norm(s.zeta[1]) == doctest::Approx(1.0).epsilon(1e-15));

    s = cayley(point1(1e8, 0.0));
    CHECK(std::abs(s.zeta[1] - cplx(-1.0, 0.0)) < 1e-7);

    s = cayley_south(point1(0.0, 0.0));
    CHECK(std::abs(s.zeta[1] - cplx(-1.0, 0.0)) < 1e-15);
    s = cayley_south(point1(1.0, 1.0));
    CHECK(std::abs(s.zeta[0] - cplx(0.5, -0.5)) < 1e-15);
    CHECK(std::norm(s.zeta[0]) + std::norm(s.zeta[1]) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(distance(cayley_south_inverse(cayley_south(point1(1.0, 0.0))), point1(1.0, 0.0)) < 1e-14);

    std::mt19937_64 gen(11);
    for (int k = 0; k < 200; ++k) {
      const HPoint p = random_point(gen, 1 + k % 3);
      CHECK(distance(cayley_inverse(cayley(p)), p) < 1e-10);
    }
  }

  TEST_CASE("cayley chart") {
    SCyl q = cayley_chart({0.0, 0.0});
    CHECK(q.r == 0.0);
    CHECK(q.theta == 0.0);
    q = cayley_chart({1.0, 1.0});
    CHECK(q.r == doctest::Approx(pi / 4).epsilon(1e-15));
    CHECK(q.theta == doctest::Approx(3 * pi / 4).epsilon(1e-15));
    q = cayley_chart({0.0, 0.5});
    CHECK(q.r == doctest::Approx(0.0));
    CHECK(q.theta == doctest::Approx(pi / 2).epsilon(1e-15));

    const HRadial p = cayley_chart_inverse(SCyl::make(pi / 4, 3 * pi / 4));
    CHECK(p.r == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(p.t == doctest::Approx(1.0).epsilon(1e-14));
    const HRadial o = cayley_chart_inverse(SCyl{0.0, 0.0});
    CHECK(o.r == 0.0);
    CHECK(o.t == 0.0);
    CHECK_THROWS_AS(cayley_chart_inverse(SCyl{0.0, pi}), DomainError);

    // chart agrees with the ambient map
    std::mt19937_64 gen(3);
    for (int k = 0; k < 100; ++k) {
      const HPoint x = random_point(gen, 2);
      const SCyl a = cylindrical(cayley(x));
      const SCyl b = cayley_chart(radial_projection(x));
      CHECK(std::abs(a.r - b.r) < 1e-12);
      CHECK(std::abs(angle_diff(a.theta, b.theta)) < 1e-12);
    }
  }

  TEST_CASE("kelvin") {
    HPoint k = kelvin(point1(1.0, 0.0));
    CHECK(distance(k, point1(1.0, 0.0)) < 1e-15);
    k = kelvin(point1(2.0, 0.0));
    CHECK(distance(k, point1(0.5, 0.0)) < 1e-15);
    CHECK_THROWS_AS(kelvin(point1(0.0, 0.0)), DomainError);

    HRadial kr = kelvin_radial({1.0, 0.0});
    CHECK(kr.r == doctest::Approx(1.0));
    CHECK(kr.t == doctest::Approx(0.0));
    kr = kelvin_radial({1.0, 1.0});
    CHECK(kr.r == doctest::Approx(1.0 / std::sqrt(5.0)).epsilon(1e-15));
    CHECK(kr.t == doctest::Approx(0.2).epsilon(1e-15));
    CHECK(koranyi(kr) == doctest::Approx(0.2).epsilon(1e-15));
    kr = kelvin_radial({2.0, 0.0});
    CHECK(kr.r == doctest::Approx(0.5));

    // As printed, K maps (z, t) to (z/w, t/N) with w = |z|^2 - 2it. It is an
    // involution on (r, t); on z it multiplies by the phase conj(w)/w.
    std::mt19937_64 gen(5);
    for (int k2 = 0; k2 < 1000; ++k2) {
      const HPoint p = random_point(gen, 1 + k2 % 3);
      const HRadial rp = radial_projection(p);
      const HRadial back = kelvin_radial(kelvin_radial(rp));
      CHECK(std::abs(back.r - rp.r) < 1e-12 * std::max(1.0, rp.r));
      CHECK(std::abs(back.t - rp.t) < 1e-12 * std::max(1.0, std::abs(rp.t)));
      CHECK(koranyi(kelvin_radial(rp)) * koranyi(rp) == doctest::Approx(1.0).epsilon(1e-12));

      const HPoint kk = kelvin(kelvin(p));
      const cplx w(p.norm2_z(), -2.0 * p.t);
      const cplx phase = std::conj(w) / w;
      double err = std::abs(kk.t - p.t);
      for (std::size_t j = 0; j < p.dim(); ++j) err = std::max(err, std::abs(kk.z[j] - p.z[j] * phase));
      CHECK(err < 1e-12 * std::max(1.0, std::sqrt(koranyi(rp))));

      const HPoint f = cayley_south_inverse(cayley(p));
      CHECK(distance(f, kelvin(p)) < 1e-12 * std::max(1.0, distance(f, HPoint::identity(p.dim()))));
    }
  }

  TEST_CASE("conformal weights") {
    CHECK(south_weight(SCyl{0.0, 0.0}) == 4.0);
    CHECK(south_weight(SCyl{0.0, pi}) == doctest::Approx(0.0));
    CHECK(cayley_factor({0.0, 0.0}) == 4.0);
    const SCyl q = SCyl::make(pi / 4, 3 * pi / 4);
    CHECK(south_weight(q) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(cayley_factor({1.0, 1.0}) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(north_weight(q) == doctest::Approx(2.5).epsilon(1e-15));
    CHECK(koranyi(cayley_chart_inverse(q)) == doctest::Approx(north_weight(q) / south_weight(q)).epsilon(1e-13));
    CHECK(north_weight(SCyl{0.0, 0.0}) == doctest::Approx(0.0));

    std::mt19937_64 gen(9);
    std::uniform_real_distribution<double> ur(0.0, 3.0), ut(-3.0, 3.0);
    for (int k = 0; k < 500; ++k) {
      const HRadial p{ur(gen), ut(gen)};
      const SCyl y = cayley_chart(p);
      CHECK(std::abs(cayley_factor(p) - south_weight(y)) < 1e-12);
      CHECK(std::abs(cayley_factor_dual(p) - north_weight(y)) < 1e-12);
      CHECK(south_weight(y) >= 0.0);
      CHECK(north_weight(y) >= 0.0);
    }
  }

  TEST_CASE("measure jacobian") {
    CHECK(std::abs(measure_jacobian_residual({1.0, 1.0}, 1)) <= 1e-6);
    CHECK(std::abs(measure_jacobian_residual({0.5, -0.3}, 2)) <= 1e-6);
    CHECK(std::abs(measure_jacobian_residual({2.0, 0.7}, 3)) <= 1e-6);
    CHECK_THROWS_AS(measure_jacobian_residual({0.0, 1.0}, 1), DomainError);
    CHECK_THROWS_AS(measure_jacobian_residual({1.0, 0.0}, 1), DomainError);
  }

  TEST_CASE("angles") {
    CHECK(reduce_angle(-pi / 2) == doctest::Approx(3 * pi / 2));
    CHECK(reduce_angle(5 * pi) == doctest::Approx(pi));
    CHECK(angle_diff(0.1, 2 * pi - 0.1) == doctest::Approx(0.2));
    CHECK(SCyl::make(1.0, -0.5).theta == doctest::Approx(2 * pi - 0.5));
  }
}
