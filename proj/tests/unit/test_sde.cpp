#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "hcr/analysis.hpp"
#include "hcr/parallel.hpp"
#include "hcr/sde.hpp"

using namespace hcr;
using std::numbers::pi;

namespace {

SimConfig small(double horizon, std::size_t paths, int n = 1) {
  SimConfig cfg;
  cfg.n = n;
  cfg.horizon = horizon;
  cfg.paths = paths;
  cfg.seed = 2024;
  return cfg;
}

template <class Fn>
MCEstimate over_paths(std::size_t paths, Fn&& sample) {
  std::vector<double> v(paths);
  parallel_for(paths, 0, [&](std::size_t i) { v[i] = sample(i); });
  return mc_estimate(v);
}

}  // namespace

TEST_SUITE("sde") {
  TEST_CASE("config validation") {
    SimConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.n = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = {};
    cfg.step = 2.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = {};
    cfg.paths = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  }

  TEST_CASE("paths are deterministic") {
    const SimConfig cfg = small(0.2, 1, 2);
    const auto a = simulate_full_heisenberg(HPoint::identity(2), cfg, 3);
    const auto b = simulate_full_heisenberg(HPoint::identity(2), cfg, 3);
    const auto c = simulate_full_heisenberg(HPoint::identity(2), cfg, 4);
    REQUIRE(a.size() == cfg.steps() + 1);
    CHECK(a.states.back().t == b.states.back().t);
    CHECK(a.states.back().z[1] == b.states.back().z[1]);
    CHECK(a.states.back().t != c.states.back().t);

    const auto h1 = simulate_h_process(SCyl{0.5, 2.0}, cfg, 9);
    const auto h2 = simulate_h_process(SCyl{0.5, 2.0}, cfg, 9);
    CHECK(h1.states.back().r == h2.states.back().r);
    CHECK(h1.states.back().theta == h2.states.back().theta);
  }

  TEST_CASE("results do not depend on worker count") {
    SimConfig cfg = small(0.3, 2000);
    cfg.workers = 1;
    const MomentReport a = heisenberg_moments(cfg);
    cfg.workers = 4;
    const MomentReport b = heisenberg_moments(cfg);
    CHECK(a.t2.value == b.t2.value);
    CHECK(a.radial_r2.value == b.radial_r2.value);
    CHECK(a.ks_t.statistic == b.ks_t.statistic);
  }

  TEST_CASE("full heisenberg moments") {
    const SimConfig cfg = small(1.0, 20000);
    std::vector<double> t(cfg.paths), t2(cfg.paths), z2(cfg.paths);
    parallel_for(cfg.paths, 0, [&](std::size_t i) {
      const auto out = run_full_heisenberg(HPoint::identity(1), cfg, i, [](std::size_t, double, const HPoint&) { return true; });
      t[i] = out.last_state.t;
      t2[i] = t[i] * t[i];
      z2[i] = out.last_state.norm2_z();
    });
    const MCEstimate et = mc_estimate(t), et2 = mc_estimate(t2), ez2 = mc_estimate(z2);
    CHECK(std::abs(et.value) <= 3 * et.std_error);
    CHECK(std::abs(ez2.value - 2.0) <= 3 * ez2.std_error + 0.1);
    CHECK(std::abs(et2.value - 1.0) <= 3 * et2.std_error + 0.05);
  }

  TEST_CASE("radial heisenberg moments and symmetry") {
    const SimConfig cfg = small(1.0, 20000);
    std::vector<double> r2(cfg.paths), t2(cfg.paths), t3(cfg.paths);
    parallel_for(cfg.paths, 0, [&](std::size_t i) {
      const auto out = run_radial_heisenberg({0.0, 0.0}, cfg, i, [](std::size_t, double, const HRadial&) { return true; });
      r2[i] = out.last_state.r * out.last_state.r;
      t2[i] = out.last_state.t * out.last_state.t;
      t3[i] = t2[i] * out.last_state.t;
    });
    const MCEstimate er2 = mc_estimate(r2), et2 = mc_estimate(t2), et3 = mc_estimate(t3);
    CHECK(std::abs(er2.value - 2.0) <= 3 * er2.std_error + 0.1);
    CHECK(std::abs(et2.value - 1.0) <= 3 * et2.std_error + 0.05);
    CHECK(std::abs(et3.value) <= 4 * et3.std_error);
  }

  TEST_CASE("radial consistency for n = 2") {
    SimConfig cfg = small(1.0, 5000, 2);
    const MomentReport m = heisenberg_moments(cfg);
    const double crit = ks_critical_value(cfg.paths, cfg.paths, 0.01) + 0.02;
    CHECK(m.ks_r.statistic <= crit);
    CHECK(m.ks_t.statistic <= crit);
    CHECK(std::abs(m.radial_r2.value - 4.0) <= 3 * m.radial_r2.std_error + 0.2);
    CHECK(std::abs(m.radial_t2.value - 2.0) <= 3 * m.radial_t2.std_error + 0.1);
  }

  TEST_CASE("project_radial") {
    Path<HPoint> p;
    Path<HPoint> zero;
    for (int k = 0; k < 5; ++k) {
      p.times.push_back(0.1 * k);
      p.states.push_back({{cplx(1.0, 0.0)}, 2.0});
      zero.times.push_back(0.1 * k);
      zero.states.push_back(HPoint::identity(2));
    }
    const auto q = project_radial(p);
    for (const auto& s : q.states) {
      CHECK(s.r == 1.0);
      CHECK(s.t == 2.0);
    }
    for (const auto& s : project_radial(zero).states) {
      CHECK(s.r == 0.0);
      CHECK(s.t == 0.0);
    }
  }

  TEST_CASE("sphere diffusion equidistributes theta") {
    SimConfig cfg = small(20.0, 400);
    cfg.step = 2e-3;
    const MCEstimate c = over_paths(cfg.paths, [&](std::size_t i) {
      return std::cos(run_radial_sphere(SCyl{pi / 4, 0.0}, cfg, i, [](std::size_t, double, const SCyl&) { return true; })
                          .last_state.theta);
    });
    CHECK(std::abs(c.value) <= 4 * c.std_error + 0.02);
  }

  TEST_CASE("h-process is eventually absorbed") {
    const SimConfig cfg = small(10.0, 4000);
    const auto times = absorption_times(SCyl{pi / 4, 3 * pi / 4}, cfg);
    CHECK(empirical_cdf(times, 10.0) >= 0.99);
    CHECK_THROWS_AS(simulate_h_process(SCyl{0.0, pi}, cfg, 0), DomainError);
  }

  TEST_CASE("N-process is eventually absorbed and its gauge shrinks") {
    // P(T > t) decays like 1/t for the conditioned Heisenberg process.
    SimConfig cfg = small(200.0, 500);
    cfg.step = 1e-2;
    std::vector<int> absorbed(cfg.paths);
    std::vector<std::array<double, 3>> gauge(cfg.paths);
    const std::size_t marks[3] = {10, 30, 60};
    parallel_for(cfg.paths, 0, [&](std::size_t i) {
      gauge[i] = {0.0, 0.0, 0.0};
      const auto out = run_n_process({1.0, 0.0}, cfg, i, [&](std::size_t k, double, const HRadial& s) {
        for (int j = 0; j < 3; ++j)
          if (k == marks[j]) gauge[i][j] = std::pow(koranyi(s), 0.25);
        return true;
      });
      absorbed[i] = out.absorption_time.has_value();
    });
    CHECK(std::count(absorbed.begin(), absorbed.end(), 1) >= 495);
    std::array<double, 3> median{};
    for (int j = 0; j < 3; ++j) {
      std::vector<double> g(cfg.paths);
      for (std::size_t i = 0; i < cfg.paths; ++i) g[i] = gauge[i][j];
      std::nth_element(g.begin(), g.begin() + g.size() / 2, g.end());
      median[j] = g[g.size() / 2];
    }
    CHECK(median[0] > median[1]);
    CHECK(median[1] > median[2]);
    CHECK_THROWS_AS(simulate_n_process({0.0, 0.0}, cfg, 0), DomainError);
  }

  TEST_CASE("absorption is monotone in pole_eps") {
    SimConfig cfg = small(0.5, 4000);
    std::vector<double> fractions;
    for (double eps : {1e-3, 1e-2, 5e-2}) {
      cfg.pole_eps = eps;
      fractions.push_back(empirical_cdf(absorption_times(SCyl{pi / 4, 3 * pi / 4}, cfg), 0.5));
    }
    CHECK(fractions[0] <= fractions[1]);
    CHECK(fractions[1] <= fractions[2]);
  }
}
