#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "phwo/cost_function.hpp"

namespace phwo {

// H(s) restricted to the permutation-symmetric subspace: real symmetric
// tridiagonal in the Dicke basis |w>, w = 0..n.
struct SymmetricHamiltonian {
  int n = 0;
  double s = 0.0;
  std::vector<double> diag;     // n+1: (1-s) n/2 + s f(w)
  std::vector<double> offdiag;  // n:   -(1-s)/2 sqrt((n-w)(w+1))
};

SymmetricHamiltonian build(const CostFunction& cost, double s);

// y = H x, tridiagonal application
void apply(const SymmetricHamiltonian& h, const std::complex<double>* x,
           std::complex<double>* y);
void apply(const SymmetricHamiltonian& h, const double* x, double* y);

struct SpectrumSlice {
  double s = 0.0;
  std::vector<double> eigenvalues;               // ascending, first k
  std::vector<std::vector<double>> eigenvectors; // empty unless requested
  double gap() const { return eigenvalues[1] - eigenvalues[0]; }
};

// Lowest k eigenpairs. Eigenvectors are unit norm with the first component of
// nonzero magnitude made positive.
SpectrumSlice spectrum(const SymmetricHamiltonian& h, int k, bool want_vectors);

// Closed forms for the unperturbed (plain Hamming weight) problem.
double unperturbed_gap(double s);  // Delta(s) = sqrt(1 - 2s + 2s^2)
double q_of_s(double s);           // (1-s)^2 / (2 Delta (Delta + s))

// Delta(s) - h (u-l) / (sqrt(2 pi) sqrt(l (1-q))); plateau family, l >= 1.
// May be negative (vacuous).
double reichardt_lower_bound(const CostFunction& plateau_cost, double s);
// The dimensionless ratio h (u-l) / sqrt(l) the bound's O(.) hides.
double reichardt_ratio(const CostFunction& plateau_cost);

// |<eps0(s)| H(1) - H(0) |eps1(s)>| in the symmetric basis.
double adiabatic_numerator(const CostFunction& cost, double s);

struct AdiabaticEstimate {
  double time_estimate;  // max over grid of numerator / Gap^2
  double coarse_bound;   // n * max over grid of 1 / Gap^2
  double s_at_max;
};

AdiabaticEstimate adiabatic_time_estimate(const CostFunction& cost,
                                          const std::vector<double>& s_grid);

// Gap minimum over s in [0,1]: coarse grid scan plus golden-section
// refinement. Returns (s_min, gap_min).
std::pair<double, double> min_gap(const CostFunction& cost, int grid_points = 2001);

}  // namespace phwo
