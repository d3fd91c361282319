#pragma once

// Green functions, Monte Carlo estimators of the conditioning identities,
// two-sample Kolmogorov-Smirnov tests and the pushforward experiments that
// compare conformal images of Heisenberg paths with directly simulated
// conditioned diffusions.

#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "hcr/geometry.hpp"
#include "hcr/operators.hpp"
#include "hcr/sde.hpp"
#include "hcr/timechange.hpp"

namespace hcr {

struct MCEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::size_t paths = 0;
};

/// Sample mean and standard error, summed in index order.
MCEstimate mc_estimate(std::span<const double> samples);

// ---------------------------------------------------------------- Green

/// Gamma(n/2)^2 / (8 pi^{n+1}).
double green_constant(int n);
/// Green function of -L_H with pole at the origin.
double green_heisenberg_pole(const HRadial& v, int n);
/// Pole formula transported by left translation; symmetric in (u, v).
double green_heisenberg(const HPoint& u, const HPoint& v, int n);
/// Green function of -L_S + n^2 with pole at the north pole.
double green_sphere_pole(const SCyl& y, int n);
/// G_S(north, y) / (G_H(0, C^{-1} y) h(north)^{-n/2} h(y)^{-n/2}). Constant
/// in y; with the unnormalized weight h(north) = 4 the constant is 2^n.
double green_relation_ratio(const SCyl& y, int n);

// ------------------------------------------------------------------- KS

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
  std::size_t size_a = 0;
  std::size_t size_b = 0;
};

/// Classical two-sample statistic sup |F_a - F_b| with the asymptotic
/// Kolmogorov p-value. Throws std::invalid_argument on an empty sample.
KsResult ks_two_sample(std::span<const double> a, std::span<const double> b);
/// Asymptotic critical value c(alpha) sqrt((m + n) / (m n)).
double ks_critical_value(std::size_t size_a, std::size_t size_b, double alpha);
/// Kolmogorov distribution tail P(K > lambda).
double kolmogorov_tail(double lambda);

// ------------------------------------------------- conditioning identities

/// Exponential killing rate relating the conditioned sphere process to the
/// sphere diffusion. Both are generated by L/2, so the rate is n^2 / 2.
double killing_rate(int n);

/// Smooth step: 0 for w <= 0.05, 1 for w >= 0.1.
double pole_cutoff(double w);

struct SurvivalCurve {
  std::vector<double> ts;
  std::vector<double> s_hat;
  std::vector<double> se;
  /// Fraction of (path, time) samples whose weight was capped at the pole ball.
  double truncated_fraction = 0.0;
  std::size_t paths = 0;
};

/// S(t) = e^{-kt} E[h^{-n/2}(X_t)] / h^{-n/2}(x) over sphere-diffusion paths,
/// k = killing_rate(n), with h floored at the absorption level. Times are
/// rounded to the simulation grid; cfg.horizon is replaced by max(ts).
SurvivalCurve survival_curve(const SCyl& x, std::span<const double> ts, const SimConfig& cfg);

/// Absorption times of conditioned sphere paths (infinity if still alive at
/// cfg.horizon), in path order.
std::vector<double> absorption_times(const SCyl& x, const SimConfig& cfg);

/// Fraction of samples <= t.
double empirical_cdf(std::span<const double> samples, double t);

struct TLawPoint {
  double t = 0.0;
  double absorbed_fraction = 0.0;  // ECDF of the absorption time
  double one_minus_survival = 0.0;
  double distance = 0.0;
};

struct TLawReport {
  std::vector<TLawPoint> points;
  SurvivalCurve survival;
  double sup_distance = 0.0;
};

/// Compares the absorption-time law of the conditioned process with the
/// survival function estimated from the unconditioned one. The weighted
/// survival estimator is heavy-tailed, so it may use more paths
/// (survival_paths; 0 means cfg.paths).
TLawReport t_law_check(const SCyl& x, std::span<const double> ts, const SimConfig& cfg,
                       std::size_t survival_paths = 0);

struct SemigroupResult {
  std::string function;
  double t = 0.0;
  MCEstimate conditioned;  // E[f(X^h_t); t < T]
  MCEstimate weighted;     // weighted expectation over the unconditioned process
  double tolerance = 0.0;  // 3 * combined SE + allowance
  bool pass = false;
};

/// Sphere side: conditioned E[f(X^h_t); t < T] against
/// e^{-kt} E[h^{-n/2}(X_t) f(X_t)] / h^{-n/2}(x), f cut off where h < 0.1.
std::vector<SemigroupResult> doob_semigroup_check(const std::vector<TestFunction>& basket, const SCyl& x,
                                                  std::span<const double> ts, const SimConfig& cfg,
                                                  double allowance = 0.02);
/// Heisenberg side: E[F(X^N_t); t < T] against E[N^{-n/2}(X_t) F(X_t)] / N^{-n/2}(x),
/// F cut off where N < 0.1.
std::vector<SemigroupResult> doob_semigroup_check_n(const std::vector<TestFunction>& basket, const HRadial& x,
                                                    std::span<const double> ts, const SimConfig& cfg,
                                                    double allowance = 0.02);

/// Mean over paths of F(X_T) - F(X_0) - int_0^T (L/2) F(X_s) ds, trapezoid
/// rule on the path grid. With compensate = false the integral is omitted.
template <class State, class Value, class HalfGenerator>
MCEstimate martingale_residual(const std::vector<Path<State>>& paths, Value&& value, HalfGenerator&& half_generator,
                               bool compensate = true) {
  std::vector<double> increments;
  increments.reserve(paths.size());
  for (const auto& path : paths) {
    double integral = 0.0;
    if (compensate) {
      for (std::size_t i = 1; i < path.size(); ++i) {
        integral += 0.5 * (half_generator(path.states[i - 1]) + half_generator(path.states[i])) *
                    (path.times[i] - path.times[i - 1]);
      }
    }
    increments.push_back(value(path.states.back()) - value(path.states.front()) - integral);
  }
  return mc_estimate(increments);
}

// ------------------------------------------------------------- ergodicity

/// Per-path time average of cos^2 r over (burn_in, horizon], then averaged
/// over paths of the sphere diffusion.
MCEstimate ergodic_cos2_average(const SCyl& x0, const SimConfig& cfg, double burn_in);

// -------------------------------------------------------- Brownian motion

struct MomentReport {
  MCEstimate z_norm2;  // E |z_T|^2 from the full process
  MCEstimate t2;       // E t_T^2 from the full process
  MCEstimate radial_r2;
  MCEstimate radial_t2;
  KsResult ks_r;  // full (projected) vs radial, at the horizon
  KsResult ks_t;
};

/// Full and radial Heisenberg Brownian motion from the origin, compared at
/// cfg.horizon. The two ensembles use independent seeds.
MomentReport heisenberg_moments(const SimConfig& cfg);

// ----------------------------------------------------------- pushforwards

struct PushforwardOptions {
  double alpha = 0.01;
  double ks_allowance = 0.02;
  double drop_allowance = 0.02;
  /// Horizon of the preimage simulation; a path whose clock stays below u
  /// up to this horizon is dropped.
  double preimage_horizon = 1e6;
  /// Preimage step after time t is max(step, preimage_growth * t).
  double preimage_growth = 1e-3;
};

struct MarginalKs {
  std::string name;
  KsResult ks;
  double critical = 0.0;
  bool pass = false;
};

struct PushforwardPoint {
  double u = 0.0;
  std::vector<MarginalKs> marginals;
  MCEstimate drop_mapped;  // mapped preimage paths whose clock never reached u
  MCEstimate drop_direct;  // conditioned paths absorbed before u
  double drop_tolerance = 0.0;
  bool drop_pass = false;
  bool ks_pass = false;
  double max_statistic = 0.0;
  // chart coordinates of the kept samples
  std::vector<std::array<double, 2>> mapped;
  std::vector<std::array<double, 2>> direct;
};

struct PushforwardReport {
  ClockOrientation orientation = ClockOrientation::image;
  std::size_t paths = 0;
  std::vector<PushforwardPoint> points;

  bool pass() const;
};

/// Cayley images of radial Heisenberg paths read on the clock int H(Y) ds
/// versus the conditioned sphere process started at the image of x0.
/// Marginals: r_S, theta and the north weight. Each u must lie on the grid.
PushforwardReport pushforward_cayley(const HRadial& x0, std::span<const double> u_grid, const SimConfig& cfg,
                                     ClockOrientation orientation = ClockOrientation::image,
                                     const PushforwardOptions& opts = {});

/// Kelvin images of radial Heisenberg paths read on int N(K(X)) ds (image)
/// or int N(X) ds (preimage) versus the conditioned Heisenberg process started
/// at K(x0). Marginals: r, t and the Koranyi gauge.
PushforwardReport pushforward_kelvin(const HRadial& x0, std::span<const double> u_grid, const SimConfig& cfg,
                                     ClockOrientation orientation = ClockOrientation::image,
                                     const PushforwardOptions& opts = {});

}  // namespace hcr
