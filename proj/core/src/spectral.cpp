#include "phwo/spectral.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "phwo/golden.hpp"

namespace phwo {

SymmetricHamiltonian build(const CostFunction& cost, double s) {
  if (s < 0.0 || s > 1.0) throw std::invalid_argument("s must lie in [0,1]");
  const int n = cost.n;
  SymmetricHamiltonian h;
  h.n = n;
  h.s = s;
  h.diag.resize(static_cast<std::size_t>(n) + 1);
  h.offdiag.resize(static_cast<std::size_t>(n));
  for (int w = 0; w <= n; ++w)
    h.diag[static_cast<std::size_t>(w)] = (1.0 - s) * n / 2.0 + s * cost(w);
  for (int w = 0; w < n; ++w)
    h.offdiag[static_cast<std::size_t>(w)] =
        -0.5 * (1.0 - s) * std::sqrt(static_cast<double>(n - w) * (w + 1));
  return h;
}

template <typename T>
static void apply_impl(const SymmetricHamiltonian& h, const T* x, T* y) {
  const int dim = h.n + 1;
  for (int i = 0; i < dim; ++i) {
    T acc = h.diag[static_cast<std::size_t>(i)] * x[i];
    if (i > 0) acc += h.offdiag[static_cast<std::size_t>(i - 1)] * x[i - 1];
    if (i < dim - 1) acc += h.offdiag[static_cast<std::size_t>(i)] * x[i + 1];
    y[i] = acc;
  }
}

void apply(const SymmetricHamiltonian& h, const std::complex<double>* x,
           std::complex<double>* y) {
  apply_impl(h, x, y);
}

void apply(const SymmetricHamiltonian& h, const double* x, double* y) {
  apply_impl(h, x, y);
}

SpectrumSlice spectrum(const SymmetricHamiltonian& h, int k, bool want_vectors) {
  const int dim = h.n + 1;
  if (k < 1 || k > dim) throw std::invalid_argument("spectrum: k out of range");

  std::vector<double> d = h.diag;
  std::vector<double> e = h.offdiag;
  e.resize(static_cast<std::size_t>(dim), 0.0);  // workspace slack for LAPACK

  int found = 0;
  std::vector<double> eigenvalues(static_cast<std::size_t>(dim));
  std::vector<double> z;
  std::vector<lapack_int> isuppz(2 * static_cast<std::size_t>(std::max(1, k)));
  if (want_vectors) z.resize(static_cast<std::size_t>(dim) * k);

  const lapack_int info = LAPACKE_dstevr(
      LAPACK_COL_MAJOR, want_vectors ? 'V' : 'N', 'I', dim, d.data(), e.data(),
      0.0, 0.0, 1, k, 0.0, &found, eigenvalues.data(),
      want_vectors ? z.data() : nullptr, dim, isuppz.data());
  if (info != 0 || found < k)
    throw std::runtime_error("tridiagonal eigensolver failed at s=" +
                             std::to_string(h.s) + ", n=" + std::to_string(h.n) +
                             " (info=" + std::to_string(info) + ")");

  SpectrumSlice slice;
  slice.s = h.s;
  slice.eigenvalues.assign(eigenvalues.begin(), eigenvalues.begin() + k);
  if (want_vectors) {
    slice.eigenvectors.resize(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) {
      auto& vec = slice.eigenvectors[static_cast<std::size_t>(j)];
      vec.assign(z.begin() + static_cast<std::ptrdiff_t>(j) * dim,
                 z.begin() + static_cast<std::ptrdiff_t>(j + 1) * dim);
      // sign convention: first component of nonzero magnitude positive
      for (double c : vec) {
        if (std::abs(c) > 1e-14) {
          if (c < 0.0)
            for (double& v : vec) v = -v;
          break;
        }
      }
    }
  }
  return slice;
}

double unperturbed_gap(double s) { return std::sqrt(1.0 - 2.0 * s + 2.0 * s * s); }

double q_of_s(double s) {
  const double delta = unperturbed_gap(s);
  return (1.0 - s) * (1.0 - s) / (2.0 * delta * (delta + s));
}

namespace {

void require_plateau(const CostFunction& cost) {
  if (cost.label != CostLabel::plateau)
    throw std::invalid_argument("Reichardt bound applies to the plateau family");
}

}  // namespace

double reichardt_ratio(const CostFunction& cost) {
  require_plateau(cost);
  const double l = cost.params.at("l");
  const double u = cost.params.at("u");
  const double h = cost.params.at("h");
  if (l < 1.0)
    throw std::invalid_argument("Reichardt bound not applicable for l = 0");
  return h * (u - l) / std::sqrt(l);
}

double reichardt_lower_bound(const CostFunction& cost, double s) {
  require_plateau(cost);
  const double l = cost.params.at("l");
  const double u = cost.params.at("u");
  const double h = cost.params.at("h");
  if (h == 0.0) return unperturbed_gap(s);  // empty plateau, zero perturbation
  if (l < 1.0)
    throw std::invalid_argument("Reichardt bound not applicable for l = 0");
  const double q = q_of_s(s);
  constexpr double inv_sqrt_2pi = 0.3989422804014327;
  return unperturbed_gap(s) -
         inv_sqrt_2pi * h * (u - l) / std::sqrt(l * (1.0 - q));
}

double adiabatic_numerator(const CostFunction& cost, double s) {
  const auto slice = spectrum(build(cost, s), 2, true);
  if (slice.gap() < 1e-12)
    throw std::runtime_error("degenerate gap at s=" + std::to_string(s));
  // dH/ds = H(1) - H(0) for the linear schedule
  const auto h1 = build(cost, 1.0);
  const auto h0 = build(cost, 0.0);
  const int dim = cost.n + 1;
  const auto& v0 = slice.eigenvectors[0];
  const auto& v1 = slice.eigenvectors[1];
  std::vector<double> t1(static_cast<std::size_t>(dim)),
      t0(static_cast<std::size_t>(dim));
  apply(h1, v1.data(), t1.data());
  apply(h0, v1.data(), t0.data());
  double acc = 0.0;
  for (int i = 0; i < dim; ++i)
    acc += v0[static_cast<std::size_t>(i)] *
           (t1[static_cast<std::size_t>(i)] - t0[static_cast<std::size_t>(i)]);
  return std::abs(acc);
}

AdiabaticEstimate adiabatic_time_estimate(const CostFunction& cost,
                                          const std::vector<double>& s_grid) {
  if (s_grid.empty()) throw std::invalid_argument("empty s grid");
  AdiabaticEstimate est{0.0, 0.0, 0.0};
  double max_inv_gap_sq = 0.0;
  for (double s : s_grid) {
    const auto slice = spectrum(build(cost, s), 2, false);
    const double gap = slice.gap();
    if (gap < 1e-12)
      throw std::runtime_error("degenerate gap at s=" + std::to_string(s));
    const double ratio = adiabatic_numerator(cost, s) / (gap * gap);
    if (ratio > est.time_estimate) {
      est.time_estimate = ratio;
      est.s_at_max = s;
    }
    max_inv_gap_sq = std::max(max_inv_gap_sq, 1.0 / (gap * gap));
  }
  est.coarse_bound = cost.n * max_inv_gap_sq;
  return est;
}

std::pair<double, double> min_gap(const CostFunction& cost, int grid_points) {
  if (grid_points < 3) throw std::invalid_argument("min_gap: grid too coarse");
  auto gap_at = [&](double s) { return spectrum(build(cost, s), 2, false).gap(); };
  double best_s = 0.0, best_gap = gap_at(0.0);
  for (int i = 1; i < grid_points; ++i) {
    const double s = static_cast<double>(i) / (grid_points - 1);
    const double g = gap_at(s);
    if (g < best_gap) {
      best_gap = g;
      best_s = s;
    }
  }
  const double step = 1.0 / (grid_points - 1);
  const double lo = std::max(0.0, best_s - step);
  const double hi = std::min(1.0, best_s + step);
  return golden_min(gap_at, lo, hi, 1e-10);
}

}  // namespace phwo
