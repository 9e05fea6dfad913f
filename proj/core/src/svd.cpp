#include "phwo/svd.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "phwo/golden.hpp"
#include "phwo/math.hpp"

namespace phwo {

namespace {

// k * log(v) with the convention 0 * log(0) = 0
double xlogy(int k, double v) {
  if (k == 0) return 0.0;
  return k * std::log(v);
}

// F(p) = sum_w f(w) C(n,w) p^w (1-p)^(n-w)
double problem_sum(const CostFunction& cost, double p) {
  const int n = cost.n;
  double acc = 0.0;
  for (int w = 0; w <= n; ++w) {
    const double lw = log_binomial(n, w) + xlogy(w, p) + xlogy(n - w, 1.0 - p);
    acc += cost(w) * std::exp(lw);
  }
  return acc;
}

// dF/dp, written so the w = 0 and w = n endpoint terms stay finite at
// p = 0 and p = 1.
double problem_sum_dp(const CostFunction& cost, double p) {
  const int n = cost.n;
  double acc = 0.0;
  for (int w = 0; w <= n; ++w) {
    const double lc = log_binomial(n, w);
    double term = 0.0;
    if (w >= 1)
      term += w * std::exp(lc + xlogy(w - 1, p) + xlogy(n - w, 1.0 - p));
    if (w <= n - 1)
      term -= (n - w) * std::exp(lc + xlogy(w, p) + xlogy(n - w - 1, 1.0 - p));
    acc += cost(w) * term;
  }
  return acc;
}

double p_of_theta(double theta) {
  const double sh = std::sin(0.5 * theta);
  return sh * sh;
}

}  // namespace

double vsc_sym(const CostFunction& cost, SpinCoherentAngles angles, double s) {
  const double driver = (1.0 - s) * cost.n / 2.0 *
                        (1.0 - std::cos(angles.phi) * std::sin(angles.theta));
  return driver + s * problem_sum(cost, p_of_theta(angles.theta));
}

VscGradient vsc_gradient(const CostFunction& cost, SpinCoherentAngles angles,
                         double s) {
  const double n_half = cost.n / 2.0;
  const double dp_dtheta = 0.5 * std::sin(angles.theta);
  VscGradient g;
  g.d_theta = -(1.0 - s) * n_half * std::cos(angles.phi) * std::cos(angles.theta) +
              s * problem_sum_dp(cost, p_of_theta(angles.theta)) * dp_dtheta;
  g.d_phi = (1.0 - s) * n_half * std::sin(angles.phi) * std::sin(angles.theta);
  return g;
}

SvdTrajectory evolve_svd(const CostFunction& cost, double t_f,
                         const IntegratorConfig& cfg,
                         std::vector<double> sample_points) {
  if (t_f <= 0.0) throw std::invalid_argument("t_f must be positive");
  std::sort(sample_points.begin(), sample_points.end());
  for (double s : sample_points)
    if (s < 0.0 || s > 1.0)
      throw std::invalid_argument("sample points must lie in [0,1]");
  if (sample_points.empty() || sample_points.back() < 1.0 - 1e-12)
    sample_points.push_back(1.0);

  const double n = cost.n;
  // Cartesian unit-vector form: m' = -(2 t_f / n) m x grad_m V with
  // grad_m V = (-(1-s) n/2, 0, -s F'(p)/2), p = (1 - m_z)/2. Equivalent to
  // the (theta, phi) equations away from the poles, regular at them.
  auto rhs = [&](double s, const std::vector<double>& m,
                 std::vector<double>& dm) {
    s = std::clamp(s, 0.0, 1.0);
    const double gx = -(1.0 - s) * n / 2.0;
    const double p = std::clamp((1.0 - m[2]) / 2.0, 0.0, 1.0);
    const double gz = -0.5 * s * problem_sum_dp(cost, p);
    const double scale = -2.0 * t_f / n;
    dm[0] = scale * (m[1] * gz);
    dm[1] = scale * (m[2] * gx - m[0] * gz);
    dm[2] = scale * (-m[1] * gx);
  };

  SvdTrajectory traj;
  traj.t_f = t_f;
  std::vector<double> m = {1.0, 0.0, 0.0};  // theta = pi/2, phi = 0
  integrate_adaptive(rhs, m, cfg, sample_points,
                     [&](double s, const std::vector<double>& mv) {
                       SvdSample sample;
                       sample.s = s;
                       sample.angles.theta = std::acos(std::clamp(mv[2], -1.0, 1.0));
                       sample.angles.phi = std::atan2(mv[1], mv[0]);
                       traj.samples.push_back(sample);
                     });
  return traj;
}

double svd_sector_prob(SpinCoherentAngles angles, const CostFunction& cost) {
  const double p = p_of_theta(angles.theta);
  const auto gs = ground_set(cost);
  double acc = 0.0;
  for (int w : gs.weights)
    acc += std::exp(log_binomial(cost.n, w) + xlogy(w, p) +
                    xlogy(cost.n - w, 1.0 - p));
  return acc;
}

SymmetricState dicke_embedding(int n, SpinCoherentAngles angles) {
  SymmetricState st;
  st.s = 0.0;
  st.amplitudes.resize(static_cast<std::size_t>(n) + 1);
  const double ch = std::cos(0.5 * angles.theta);
  const double sh = std::sin(0.5 * angles.theta);
  for (int w = 0; w <= n; ++w) {
    const double mag =
        std::exp(0.5 * log_binomial(n, w) + xlogy(n - w, ch) + xlogy(w, sh));
    st.amplitudes[static_cast<std::size_t>(w)] =
        mag * std::polar(1.0, w * angles.phi);
  }
  return st;
}

double trace_distance_to_qa(SpinCoherentAngles angles,
                            const SymmetricState& state) {
  const auto omega =
      dicke_embedding(static_cast<int>(state.amplitudes.size()) - 1, angles);
  return trace_distance(state, omega);
}

std::vector<LandscapeMinimum> landscape_scan(const CostFunction& cost, double s,
                                             int grid_points) {
  if (grid_points < 8) throw std::invalid_argument("landscape grid too coarse");
  const double pi = std::acos(-1.0);
  auto value = [&](double theta) {
    return vsc_sym(cost, {theta, 0.0}, s);
  };
  std::vector<double> v(static_cast<std::size_t>(grid_points));
  for (int i = 0; i < grid_points; ++i)
    v[static_cast<std::size_t>(i)] = value(pi * i / (grid_points - 1));
  auto theta_at = [&](int i) { return pi * i / (grid_points - 1); };

  std::vector<LandscapeMinimum> minima;
  auto refine = [&](double lo, double hi) {
    auto [theta, val] = golden_min(value, lo, hi, 1e-10);
    minima.push_back({theta, val});
  };
  if (v[0] < v[1]) refine(theta_at(0), theta_at(1));
  for (int i = 1; i < grid_points - 1; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    if (v[idx] < v[idx - 1] && v[idx] <= v[idx + 1])
      refine(theta_at(i - 1), theta_at(i + 1));
  }
  if (v[static_cast<std::size_t>(grid_points - 1)] <
      v[static_cast<std::size_t>(grid_points - 2)])
    refine(theta_at(grid_points - 2), theta_at(grid_points - 1));
  return minima;
}

namespace {

// Signed value gap between the two lowest landscape minima, ordered by
// theta: positive while the small-theta well sits above the large-theta one.
std::optional<double> well_imbalance(const CostFunction& cost, double s,
                                     int grid_points,
                                     LandscapeMinimum* low = nullptr,
                                     LandscapeMinimum* high = nullptr) {
  auto minima = landscape_scan(cost, s, grid_points);
  if (minima.size() < 2) return std::nullopt;
  std::sort(minima.begin(), minima.end(),
            [](const auto& a, const auto& b) { return a.value < b.value; });
  LandscapeMinimum a = minima[0], b = minima[1];
  if (a.theta > b.theta) std::swap(a, b);
  if (low != nullptr) *low = a;
  if (high != nullptr) *high = b;
  return a.value - b.value;
}

}  // namespace

std::optional<DegeneracyResult> find_degeneracy(const CostFunction& cost,
                                                int s_grid_points,
                                                int theta_grid_points) {
  double prev_s = -1.0;
  double prev_g = 0.0;
  double lo = -1.0, hi = -1.0;
  for (int i = 0; i <= s_grid_points; ++i) {
    const double s = static_cast<double>(i) / s_grid_points;
    const auto g = well_imbalance(cost, s, theta_grid_points);
    if (!g) {
      prev_s = -1.0;
      continue;
    }
    if (prev_s >= 0.0 && prev_g > 0.0 && *g <= 0.0) {
      lo = prev_s;
      hi = s;
      break;
    }
    prev_s = s;
    prev_g = *g;
  }
  if (lo < 0.0) return std::nullopt;

  LandscapeMinimum low{}, high{};
  while (hi - lo > 1e-13) {
    const double mid = 0.5 * (lo + hi);
    const auto g = well_imbalance(cost, mid, theta_grid_points, &low, &high);
    if (!g) break;  // well vanished inside the bracket; keep the bracket edge
    if (std::abs(*g) < 1e-9) {
      lo = hi = mid;
      break;
    }
    if (*g > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  const double s_star = 0.5 * (lo + hi);
  well_imbalance(cost, s_star, theta_grid_points, &low, &high);
  DegeneracyResult res;
  res.s_star = s_star;
  res.theta_low = low.theta;
  res.theta_high = high.theta;
  const double p_lo = std::pow(std::sin(0.5 * low.theta), 2);
  const double p_hi = std::pow(std::sin(0.5 * high.theta), 2);
  res.hw_jump = cost.n * (p_hi - p_lo);
  return res;
}

double vsc_perturbation_magnitude(const CostFunction& plateau_cost, double s,
                                  int grid_points) {
  if (plateau_cost.label != CostLabel::plateau)
    throw std::invalid_argument("perturbation magnitude is plateau-specific");
  const int n = plateau_cost.n;
  const int l = static_cast<int>(plateau_cost.params.at("l"));
  const int u = static_cast<int>(plateau_cost.params.at("u"));
  const double pi = std::acos(-1.0);
  double best = 0.0;
  for (int i = 0; i < grid_points; ++i) {
    const double p = p_of_theta(pi * i / (grid_points - 1));
    double acc = 0.0;
    for (int w = l + 1; w < u; ++w)
      acc += plateau_cost(w) *
             std::exp(log_binomial(n, w) + xlogy(w, p) + xlogy(n - w, 1.0 - p));
    best = std::max(best, s * acc);
  }
  return best;
}

}  // namespace phwo
