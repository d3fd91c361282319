#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "hcr/analysis.hpp"
#include "hcr/parallel.hpp"

using namespace hcr;
using std::numbers::pi;

namespace {

SimConfig small(double horizon, std::size_t paths) {
  SimConfig cfg;
  cfg.horizon = horizon;
  cfg.paths = paths;
  cfg.seed = 99;
  return cfg;
}

std::vector<Path<HRadial>> radial_paths(const HRadial& x0, const SimConfig& cfg) {
  std::vector<Path<HRadial>> paths(cfg.paths);
  parallel_for(cfg.paths, 0, [&](std::size_t i) { paths[i] = simulate_radial_heisenberg(x0, cfg, i); });
  return paths;
}

}  // namespace

TEST_SUITE("analysis") {
  TEST_CASE("mc estimate") {
    const std::vector<double> x = {1.0, 2.0, 3.0, 4.0};
    const MCEstimate e = mc_estimate(x);
    CHECK(e.value == 2.5);
    CHECK(e.std_error == doctest::Approx(std::sqrt(5.0 / 3.0 / 4.0)));
    CHECK(e.paths == 4);
  }

  TEST_CASE("green functions") {
    CHECK(green_heisenberg_pole({1.0, 0.0}, 1) == doctest::Approx(1.0 / (8 * pi)).epsilon(1e-15));
    CHECK(green_heisenberg_pole({0.0, 0.5}, 1) == doctest::Approx(1.0 / (8 * pi)).epsilon(1e-15));
    CHECK(green_sphere_pole(SCyl{pi / 2 - 1e-9, 1.3}, 1) == doctest::Approx(1.0 / (8 * pi)).epsilon(1e-8));
    CHECK_THROWS_AS(green_sphere_pole(SCyl{0.0, 0.0}, 1), DomainError);
    CHECK(green_sphere_pole(SCyl{1e-3, 0.0}, 1) > 1e3);

    std::mt19937_64 gen(4);
    std::normal_distribution<double> g;
    for (int k = 0; k < 50; ++k) {
      const std::size_t n = 1 + k % 3;
      HPoint u = HPoint::identity(n), v = HPoint::identity(n), w = HPoint::identity(n);
      for (std::size_t j = 0; j < n; ++j) {
        u.z[j] = {g(gen), g(gen)};
        v.z[j] = {g(gen), g(gen)};
        w.z[j] = {g(gen), g(gen)};
      }
      u.t = g(gen);
      v.t = g(gen);
      w.t = g(gen);
      const int ni = static_cast<int>(n);
      const double base = green_heisenberg(u, v, ni);
      CHECK(green_heisenberg(group_mul(w, u), group_mul(w, v), ni) == doctest::Approx(base).epsilon(1e-10));
      CHECK(green_heisenberg(v, u, ni) == doctest::Approx(base).epsilon(1e-12));
      CHECK(green_heisenberg(HPoint::identity(n), v, ni) ==
            doctest::Approx(green_heisenberg_pole(radial_projection(v), ni)).epsilon(1e-15));
    }
  }

  TEST_CASE("green relation ratio") {
    std::mt19937_64 gen(8);
    std::uniform_real_distribution<double> ur(0.05, 1.5), ut(0.0, 2 * pi);
    for (int n : {1, 2}) {
      for (int k = 0; k < 100; ++k) {
        const SCyl y = SCyl::make(ur(gen), ut(gen));
        if (std::abs(angle_diff(y.theta, pi)) < 0.2 && y.r < 0.2) continue;
        CHECK(green_relation_ratio(y, n) == doctest::Approx(std::pow(2.0, n)).epsilon(1e-10));
      }
    }
  }

  TEST_CASE("kolmogorov-smirnov") {
    const std::vector<double> a = {1, 2, 3}, b = {1.5, 2.5, 3.5}, c = {10, 11, 12, 13};
    CHECK(ks_two_sample(a, a).statistic == 0.0);
    CHECK(ks_two_sample(a, a).p_value == doctest::Approx(1.0));
    CHECK(ks_two_sample(a, b).statistic == doctest::Approx(1.0 / 3.0));
    CHECK(ks_two_sample(a, c).statistic == 1.0);
    CHECK_THROWS_AS(ks_two_sample(a, std::vector<double>{}), std::invalid_argument);
    // c(0.05) = 1.358, c(0.01) = 1.628
    CHECK(ks_critical_value(100, 100, 0.05) == doctest::Approx(1.3581 * std::sqrt(0.02)).epsilon(1e-3));
    CHECK(ks_critical_value(100, 100, 0.01) == doctest::Approx(1.6276 * std::sqrt(0.02)).epsilon(1e-3));
    CHECK(kolmogorov_tail(1.3581) == doctest::Approx(0.05).epsilon(1e-3));
    CHECK(kolmogorov_tail(0.0) == 1.0);

    std::mt19937_64 gen(2);
    std::normal_distribution<double> g;
    std::vector<double> x(2000), y(2000), z(2000);
    for (auto& v : x) v = g(gen);
    for (auto& v : y) v = g(gen);
    for (auto& v : z) v = g(gen) + 0.5;
    CHECK(ks_two_sample(x, y).statistic < ks_critical_value(2000, 2000, 0.001));
    CHECK(ks_two_sample(x, z).p_value < 1e-6);
  }

  TEST_CASE("killing rate and cutoff") {
    CHECK(killing_rate(1) == 0.5);
    CHECK(killing_rate(3) == 4.5);
    CHECK(pole_cutoff(0.01) == 0.0);
    CHECK(pole_cutoff(0.2) == 1.0);
    CHECK(pole_cutoff(0.075) > 0.0);
    CHECK(pole_cutoff(0.075) < 1.0);
  }

  TEST_CASE("survival curve") {
    const SimConfig cfg = small(1.0, 2000);
    const std::vector<double> ts = {0.0, 0.25, 0.5, 1.0};
    const SurvivalCurve s = survival_curve(SCyl{pi / 4, 3 * pi / 4}, ts, cfg);
    CHECK(s.s_hat[0] == 1.0);
    for (std::size_t i = 1; i < ts.size(); ++i) CHECK(s.s_hat[i] <= s.s_hat[i - 1] + 2 * (s.se[i] + s.se[i - 1]));
    CHECK(s.s_hat.back() < 1.0);
    CHECK_THROWS_AS(survival_curve(SCyl{pi / 4, 3 * pi / 4}, std::vector<double>{0.1234567}, cfg),
                    std::invalid_argument);
  }

  TEST_CASE("empirical cdf") {
    const std::vector<double> x = {0.1, 0.2, std::numeric_limits<double>::infinity(), 0.4};
    CHECK(empirical_cdf(x, 0.2) == 0.5);
    CHECK(empirical_cdf(x, 1.0) == 0.75);
  }

  TEST_CASE("semigroup checks at t = 0") {
    const SimConfig cfg = small(0.1, 200);
    const auto basket = sphere_basket();
    const SCyl x{0.6, 2.0};
    const std::vector<double> zero = {0.0};
    for (const auto& r : doob_semigroup_check(basket, x, zero, cfg)) {
      CHECK(r.conditioned.value == doctest::Approx(r.weighted.value).epsilon(1e-12));
      CHECK(r.pass);
    }
    const auto hb = heisenberg_basket();
    const HRadial p{1.0, 0.5};
    const auto res = doob_semigroup_check_n(hb, p, zero, cfg);
    for (std::size_t i = 0; i < hb.size(); ++i) {
      CHECK(res[i].conditioned.value == doctest::Approx(hb[i].value(p.r, p.t)).epsilon(1e-12));
      CHECK(res[i].weighted.value == doctest::Approx(res[i].conditioned.value).epsilon(1e-12));
    }
  }

  TEST_CASE("semigroup identity for one function") {
    SimConfig cfg = small(0.5, 4000);
    const TestFunction cos_r("cos(r)", [](const Jet2& r, const Jet2&) { return cos(r); });
    const std::vector<double> ts = {0.5};
    const auto s = doob_semigroup_check({cos_r}, SCyl{0.0, 0.0}, ts, cfg);
    CHECK(s[0].pass);
    const TestFunction e("exp(-N)", [](const Jet2& r, const Jet2& t) { return exp(-koranyi(r, t)); });
    const auto h = doob_semigroup_check_n({e}, HRadial{1.0, 0.0}, ts, cfg);
    CHECK(h[0].pass);
  }

  TEST_CASE("martingale residual") {
    const SimConfig cfg = small(0.5, 2000);
    const auto paths = radial_paths({0.5, 0.0}, cfg);
    const auto t_value = [](const HRadial& s) { return s.t; };
    const auto zero = [](const HRadial&) { return 0.0; };
    const MCEstimate mt = martingale_residual(paths, t_value, zero);
    CHECK(std::abs(mt.value) <= 3 * mt.std_error);

    const TestFunction r2("r^2", [](const Jet2& r, const Jet2&) { return r * r; });
    const auto r2_value = [](const HRadial& s) { return s.r * s.r; };
    const auto r2_half = [&](const HRadial& s) { return 0.5 * heisenberg_laplacian(r2, s, cfg.n); };
    const MCEstimate raw = martingale_residual(paths, r2_value, r2_half, false);
    CHECK(std::abs(raw.value - 2.0 * cfg.n * cfg.horizon) <= 3 * raw.std_error + 0.02);
    const MCEstimate comp = martingale_residual(paths, r2_value, r2_half);
    CHECK(std::abs(comp.value) <= 3 * comp.std_error + 0.01);

    const auto far = radial_paths({2.0, 0.0}, cfg);
    const auto green = [](const HRadial& s) { return pole_cutoff(koranyi(s)) * std::pow(koranyi(s), -0.5); };
    const TestFunction gf("N^(-1/2)", [](const Jet2& r, const Jet2& t) { return pow(koranyi(r, t), -0.5); });
    const auto green_half = [&](const HRadial& s) { return 0.5 * heisenberg_laplacian(gf, s, 1); };
    const MCEstimate mg = martingale_residual(far, green, green_half);
    CHECK(std::abs(mg.value) <= 3 * mg.std_error + 1e-3);
  }

  TEST_CASE("pushforwards in the short-time regime") {
    SimConfig cfg = small(0.05, 2000);
    const std::vector<double> u = {0.0, 0.05};
    const PushforwardReport c = pushforward_cayley({0.0, 0.0}, u, cfg);
    REQUIRE(c.points.size() == 2);
    for (const auto& m : c.points[0].marginals) CHECK(m.ks.statistic == 0.0);
    CHECK(c.points[1].drop_mapped.value == 0.0);
    CHECK(c.points[1].drop_direct.value == 0.0);
    CHECK(c.pass());

    const PushforwardReport k = pushforward_kelvin({1.0, 0.0}, u, cfg);
    for (const auto& m : k.points[0].marginals) CHECK(m.ks.statistic == 0.0);
    CHECK(k.points[1].ks_pass);
    CHECK_THROWS_AS(pushforward_kelvin({0.0, 0.0}, u, cfg), DomainError);
  }
}
