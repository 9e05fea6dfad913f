#pragma once

#include <cmath>
#include <utility>

namespace phwo {

// Golden-section minimization of a unimodal function on [a, b].
// Returns (x_min, f(x_min)).
template <typename F>
std::pair<double, double> golden_min(F&& f, double a, double b, double tol) {
  constexpr double inv_phi = 0.6180339887498949;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  while (b - a > tol) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    }
  }
  const double xm = 0.5 * (a + b);
  return {xm, f(xm)};
}

}  // namespace phwo
