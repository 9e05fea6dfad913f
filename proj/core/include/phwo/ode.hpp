#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace phwo {

enum class RkMethod { cash_karp_45, dormand_prince_45 };

struct IntegratorConfig {
  RkMethod method = RkMethod::cash_karp_45;
  double rel_tol = 1e-9;
  double abs_tol = 1e-9;
  double max_step = 0.05;

  void validate() const {
    if (rel_tol <= 0.0 || abs_tol <= 0.0)
      throw std::invalid_argument("integrator tolerances must be positive");
    if (max_step <= 0.0)
      throw std::invalid_argument("integrator max_step must be positive");
  }
};

namespace detail {

struct RkTableau {
  int stages;
  double a[7][7];
  double b_high[7];
  double b_low[7];
  double c[7];
};

inline const RkTableau& tableau(RkMethod m) {
  static const RkTableau cash_karp = {
      6,
      {{0, 0, 0, 0, 0, 0, 0},
       {1.0 / 5, 0, 0, 0, 0, 0, 0},
       {3.0 / 40, 9.0 / 40, 0, 0, 0, 0, 0},
       {3.0 / 10, -9.0 / 10, 6.0 / 5, 0, 0, 0, 0},
       {-11.0 / 54, 5.0 / 2, -70.0 / 27, 35.0 / 27, 0, 0, 0},
       {1631.0 / 55296, 175.0 / 512, 575.0 / 13824, 44275.0 / 110592,
        253.0 / 4096, 0, 0},
       {0, 0, 0, 0, 0, 0, 0}},
      {37.0 / 378, 0, 250.0 / 621, 125.0 / 594, 0, 512.0 / 1771, 0},
      {2825.0 / 27648, 0, 18575.0 / 48384, 13525.0 / 55296, 277.0 / 14336,
       1.0 / 4, 0},
      {0, 1.0 / 5, 3.0 / 10, 3.0 / 5, 1.0, 7.0 / 8, 0}};
  static const RkTableau dormand_prince = {
      7,
      {{0, 0, 0, 0, 0, 0, 0},
       {1.0 / 5, 0, 0, 0, 0, 0, 0},
       {3.0 / 40, 9.0 / 40, 0, 0, 0, 0, 0},
       {44.0 / 45, -56.0 / 15, 32.0 / 9, 0, 0, 0, 0},
       {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729, 0, 0, 0},
       {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176,
        -5103.0 / 18656, 0, 0},
       {35.0 / 384, 0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84, 0}},
      {35.0 / 384, 0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84, 0},
      {5179.0 / 57600, 0, 7571.0 / 16695, 393.0 / 640, -92097.0 / 339200,
       187.0 / 2100, 1.0 / 40},
      {0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0}};
  return m == RkMethod::cash_karp_45 ? cash_karp : dormand_prince;
}

}  // namespace detail

// Adaptive embedded Runge-Kutta over std::vector<T> state. Integrates from
// s = 0 to s = 1; the step is clipped so every point in `breakpoints`
// (ascending, within (0,1]) is landed on exactly, and `on_breakpoint` is
// invoked there with the on-trajectory state.
template <typename T, typename Rhs, typename OnBreak>
void integrate_adaptive(Rhs&& rhs, std::vector<T>& y, const IntegratorConfig& cfg,
                        const std::vector<double>& breakpoints,
                        OnBreak&& on_breakpoint) {
  cfg.validate();
  const auto& tb = detail::tableau(cfg.method);
  const std::size_t dim = y.size();

  std::vector<std::vector<T>> k(static_cast<std::size_t>(tb.stages),
                                std::vector<T>(dim));
  std::vector<T> ytmp(dim), yhigh(dim), ylow(dim);

  double s = 0.0;
  double h = std::min(cfg.max_step, 1e-4);
  std::size_t next_break = 0;
  constexpr double min_step = 1e-14;

  auto at_breakpoint = [&](double pos) {
    while (next_break < breakpoints.size() &&
           std::abs(breakpoints[next_break] - pos) < 1e-12) {
      on_breakpoint(breakpoints[next_break], y);
      ++next_break;
    }
  };
  at_breakpoint(0.0);

  while (s < 1.0 - 1e-14) {
    double limit = 1.0;
    if (next_break < breakpoints.size()) limit = breakpoints[next_break];
    if (limit - s < 1e-13) {  // roundoff remnant of a clipped step
      s = limit;
      at_breakpoint(s);
      continue;
    }
    h = std::min({h, cfg.max_step, limit - s});
    if (h < min_step)
      throw std::runtime_error("integrator step-size underflow at s=" +
                               std::to_string(s));

    for (int stage = 0; stage < tb.stages; ++stage) {
      for (std::size_t i = 0; i < dim; ++i) {
        T acc = y[i];
        for (int j = 0; j < stage; ++j)
          acc += h * tb.a[stage][j] * k[static_cast<std::size_t>(j)][i];
        ytmp[i] = acc;
      }
      rhs(s + tb.c[stage] * h, ytmp, k[static_cast<std::size_t>(stage)]);
    }

    double err = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
      T hi = y[i], lo = y[i];
      for (int stage = 0; stage < tb.stages; ++stage) {
        hi += h * tb.b_high[stage] * k[static_cast<std::size_t>(stage)][i];
        lo += h * tb.b_low[stage] * k[static_cast<std::size_t>(stage)][i];
      }
      yhigh[i] = hi;
      ylow[i] = lo;
      const double scale =
          cfg.abs_tol + cfg.rel_tol * std::max(std::abs(y[i]), std::abs(hi));
      const double e = std::abs(hi - lo) / scale;
      err += e * e;
    }
    err = std::sqrt(err / static_cast<double>(dim));

    if (err <= 1.0) {
      s += h;
      y = yhigh;
      at_breakpoint(s);
    }
    const double factor =
        std::clamp(0.9 * std::pow(std::max(err, 1e-16), -0.2), 0.2, 5.0);
    h *= factor;
  }
}

}  // namespace phwo
