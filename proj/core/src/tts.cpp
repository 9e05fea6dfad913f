#include "phwo/tts.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "phwo/golden.hpp"
#include "phwo/qa.hpp"
#include "phwo/svd.hpp"

namespace phwo {

double tts(double t_f, double p_gs, double p_d) {
  if (p_d <= 0.0 || p_d >= 1.0) throw std::invalid_argument("p_d must lie in (0,1)");
  if (p_gs < 0.0 || p_gs > 1.0) throw std::invalid_argument("p_gs must lie in [0,1]");
  if (p_gs == 0.0) return std::numeric_limits<double>::infinity();
  if (p_gs == 1.0) return t_f;
  const double repetitions = std::log1p(-p_d) / std::log1p(-p_gs);
  return t_f * std::max(1.0, repetitions);
}

namespace {

std::vector<double> log_grid(const GridSpec& grid) {
  if (grid.t_min <= 0.0 || grid.t_max <= grid.t_min)
    throw std::invalid_argument("grid requires 0 < t_min < t_max");
  if (grid.points_per_decade < 1)
    throw std::invalid_argument("points_per_decade must be >= 1");
  const double lo = std::log10(grid.t_min);
  const double hi = std::log10(grid.t_max);
  const int count =
      std::max(2, static_cast<int>(std::ceil((hi - lo) * grid.points_per_decade)) + 1);
  std::vector<double> ts(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i)
    ts[static_cast<std::size_t>(i)] =
        std::pow(10.0, lo + (hi - lo) * i / (count - 1));
  return ts;
}

}  // namespace

TTSResult optimize_tts(const PgsFunction& p_gs, double p_d, const GridSpec& grid) {
  const auto ts = log_grid(grid);
  TTSResult res;
  res.p_d = p_d;

  std::size_t best = 0;
  double best_tts = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const double p = p_gs(ts[i]);
    const double value = tts(ts[i], p, p_d);
    res.curve.push_back({ts[i], p, value});
    if (value < best_tts) {
      best_tts = value;
      best = i;
    }
  }
  if (!std::isfinite(best_tts)) return res;  // unsolved at this budget

  const double lo = std::log(ts[best > 0 ? best - 1 : best]);
  const double hi = std::log(ts[std::min(best + 1, ts.size() - 1)]);
  double p_at_opt = res.curve[best].p_gs;
  auto objective = [&](double log_t) {
    const double t = std::exp(log_t);
    const double p = p_gs(t);
    return tts(t, p, p_d);
  };
  const auto [log_opt, tts_ref] = golden_min(objective, lo, hi, grid.refine_rel_tol);
  res.solved = true;
  if (tts_ref < best_tts) {
    res.t_f_opt = std::exp(log_opt);
    res.tts_opt = tts_ref;
    res.p_gs_at_opt = p_gs(res.t_f_opt);
  } else {
    res.t_f_opt = ts[best];
    res.tts_opt = best_tts;
    res.p_gs_at_opt = p_at_opt;
  }
  return res;
}

ThresholdResult threshold_time(const PgsFunction& p_gs, double p_thc,
                               const GridSpec& grid) {
  if (p_thc <= 0.0 || p_thc >= 1.0)
    throw std::invalid_argument("p_thc must lie in (0,1)");
  const auto ts = log_grid(grid);

  // raw p_gs is non-monotone; bisect on the running-max envelope instead
  std::map<double, double> evaluated;
  auto envelope = [&](double t) {
    if (!evaluated.count(t)) evaluated[t] = p_gs(t);
    double best = 0.0;
    for (const auto& [tp, p] : evaluated) {
      if (tp > t) break;
      best = std::max(best, p);
    }
    return best;
  };

  ThresholdResult res;
  double lo = 0.0, hi = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const double env = envelope(ts[i]);
    res.best_p_gs = std::max(res.best_p_gs, env);
    if (env >= p_thc) {
      hi = ts[i];
      lo = i > 0 ? ts[i - 1] : 0.0;
      break;
    }
  }
  if (hi == 0.0) return res;  // not reached within budget
  if (lo == 0.0) {
    res.reached = true;
    res.t_f = hi;
    return res;
  }

  while (hi / lo > 1.0 + 1e-3) {
    const double mid = std::sqrt(lo * hi);
    if (envelope(mid) >= p_thc)
      hi = mid;
    else
      lo = mid;
  }
  res.reached = true;
  res.t_f = hi;
  return res;
}

ScalingFit scaling_fit(const std::vector<double>& sizes,
                       const std::vector<double>& times) {
  const std::size_t m = sizes.size();
  if (m < 4 || times.size() != m)
    throw std::invalid_argument("scaling fit needs >= 4 matched points");
  for (std::size_t i = 0; i < m; ++i)
    if (sizes[i] <= 0.0 || times[i] <= 0.0)
      throw std::invalid_argument("scaling fit needs strictly positive data");

  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    sx += std::log(sizes[i]);
    sy += std::log(times[i]);
  }
  const double xbar = sx / static_cast<double>(m);
  const double ybar = sy / static_cast<double>(m);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double dx = std::log(sizes[i]) - xbar;
    sxx += dx * dx;
    sxy += dx * (std::log(times[i]) - ybar);
  }
  const double slope = sxy / sxx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double fit = ybar + slope * (std::log(sizes[i]) - xbar);
    const double r = std::log(times[i]) - fit;
    ss_res += r * r;
  }
  ScalingFit fit;
  fit.sizes = sizes;
  fit.times = times;
  fit.exponent = slope;
  fit.stderr_exponent =
      m > 2 ? std::sqrt(ss_res / (static_cast<double>(m) - 2.0) / sxx) : 0.0;
  return fit;
}

WilsonInterval wilson_interval(int successes, int trials, double z) {
  if (trials <= 0) throw std::invalid_argument("trials must be positive");
  const double nf = trials;
  const double p = successes / nf;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nf;
  const double center = (p + z2 / (2.0 * nf)) / denom;
  const double half =
      z * std::sqrt(p * (1.0 - p) / nf + z2 / (4.0 * nf * nf)) / denom;
  return {p, std::max(0.0, center - half), std::min(1.0, center + half)};
}

PgsFunction qa_pgs(const CostFunction& cost, IntegratorConfig cfg) {
  return [cost, cfg](double t_f) {
    const auto traj = evolve(cost, t_f, cfg, {1.0});
    return ground_prob(traj.states.back(), cost);
  };
}

PgsFunction svd_pgs(const CostFunction& cost, IntegratorConfig cfg) {
  return [cost, cfg](double t_f) {
    const auto traj = evolve_svd(cost, t_f, cfg, {1.0});
    return svd_sector_prob(traj.samples.back().angles, cost);
  };
}

}  // namespace phwo
