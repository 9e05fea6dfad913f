#pragma once

#include <complex>
#include <vector>

#include "phwo/cost_function.hpp"
#include "phwo/ode.hpp"
#include "phwo/spectral.hpp"

namespace phwo {

// n+1 complex amplitudes over the Dicke basis |w>.
struct SymmetricState {
  std::vector<std::complex<double>> amplitudes;
  double s = 0.0;

  double norm_sq() const;
};

// |+>^n projected to the symmetric subspace: a_w = sqrt(C(n,w)) / 2^(n/2)
SymmetricState initial_state(int n);

struct QaTrajectory {
  std::vector<SymmetricState> states;  // one per sample point
  double t_f = 0.0;
  double max_norm_drift = 0.0;  // max ||psi|^2 - 1| over accepted samples
};

// Solves i dpsi/ds = t_f H(s) psi from s=0 to s=1; returns states at the
// requested sample points (1.0 is appended if absent so the final state is
// always available).
QaTrajectory evolve(const CostFunction& cost, double t_f,
                    const IntegratorConfig& cfg,
                    std::vector<double> sample_points);

// Full 2^n-space propagation from |+>^n, projected back onto the Dicke
// basis. Test oracle; n <= 12. symmetry_residual gets the norm of the
// non-symmetric remainder after projection.
SymmetricState dense_evolve_oracle(const CostFunction& cost, double t_f,
                                   const IntegratorConfig& cfg = {},
                                   double* symmetry_residual = nullptr);

// Sum of |a_w|^2 over the ground set of the cost function.
double ground_prob(const SymmetricState& state, const CostFunction& cost);

// P_i = |<eps_i(s)|psi>|^2 for the lowest k levels at the given s.
std::vector<double> eigenpopulations(const SymmetricState& state,
                                     const CostFunction& cost, double s, int k);

// <HW> = sum_w w |a_w|^2
double expected_hw(const SymmetricState& state);

// Pure-state trace distance sqrt(1 - |<a|b>|^2)
double trace_distance(const SymmetricState& a, const SymmetricState& b);

}  // namespace phwo
