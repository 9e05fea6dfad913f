#pragma once

#include <functional>
#include <vector>

#include "phwo/cost_function.hpp"
#include "phwo/ode.hpp"

namespace phwo {

// t_f * max(1, ln(1-p_d)/ln(1-p_gs)); +inf when p_gs = 0.
double tts(double t_f, double p_gs, double p_d);

struct TTSPoint {
  double t_f;
  double p_gs;
  double tts;
};

struct TTSResult {
  bool solved = false;  // false when p_gs = 0 on the whole grid
  double t_f_opt = 0.0;
  double tts_opt = 0.0;
  double p_d = 0.0;
  double p_gs_at_opt = 0.0;
  std::vector<TTSPoint> curve;
};

struct GridSpec {
  double t_min = 0.1;
  double t_max = 1000.0;
  int points_per_decade = 200;
  double refine_rel_tol = 1e-3;  // golden-section tolerance on the log axis
};

using PgsFunction = std::function<double(double t_f)>;

// Dense log grid followed by golden-section refinement around the grid
// minimizer of tts; p_gs(t_f) is oscillatory, so the grid does the global
// work and the refinement only polishes.
TTSResult optimize_tts(const PgsFunction& p_gs, double p_d, const GridSpec& grid);

struct ThresholdResult {
  bool reached = false;
  double t_f = 0.0;       // minimal time with envelope p_gs >= p_thc
  double best_p_gs = 0.0; // largest p_gs seen (diagnostic when not reached)
};

// Bisection on the monotone envelope max_{t' <= t} p_gs(t').
ThresholdResult threshold_time(const PgsFunction& p_gs, double p_thc,
                               const GridSpec& grid);

struct ScalingFit {
  std::vector<double> sizes;
  std::vector<double> times;
  double exponent = 0.0;
  double stderr_exponent = 0.0;
};

// Least-squares slope on log-log; needs >= 4 strictly positive points.
ScalingFit scaling_fit(const std::vector<double>& sizes,
                       const std::vector<double>& times);

// Wilson score interval for a Monte Carlo success estimate.
struct WilsonInterval {
  double p;
  double low;
  double high;
};
WilsonInterval wilson_interval(int successes, int trials, double z = 1.96);

// Deterministic single-run success probabilities for the dynamical solvers.
PgsFunction qa_pgs(const CostFunction& cost, IntegratorConfig cfg = {});
PgsFunction svd_pgs(const CostFunction& cost, IntegratorConfig cfg = {});

}  // namespace phwo
