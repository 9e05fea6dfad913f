#pragma once

#include <optional>
#include <vector>

#include "phwo/cost_function.hpp"
#include "phwo/ode.hpp"
#include "phwo/qa.hpp"

namespace phwo {

// (theta, phi) of the symmetric spin-coherent product state; theta = 0 is
// the all-|0> state.
struct SpinCoherentAngles {
  double theta = 0.0;  // [0, pi]
  double phi = 0.0;    // (-pi, pi]
};

struct SvdSample {
  double s;
  SpinCoherentAngles angles;
};

struct SvdTrajectory {
  std::vector<SvdSample> samples;
  double t_f = 0.0;
};

// Symmetric effective potential <Omega|H(s)|Omega>; the binomial sum is
// evaluated with log-domain binomials so n >= 512 does not overflow.
double vsc_sym(const CostFunction& cost, SpinCoherentAngles angles, double s);

// Analytic partials (dV/dtheta, dV/dphi).
struct VscGradient {
  double d_theta;
  double d_phi;
};
VscGradient vsc_gradient(const CostFunction& cost, SpinCoherentAngles angles,
                         double s);

// Integrates the two symmetric semiclassical equations of motion from
// theta = pi/2, phi = 0. Internally uses the Cartesian unit-vector form
// m' = -(2 t_f / n) m x grad_m V, which has no pole at theta in {0, pi}.
SvdTrajectory evolve_svd(const CostFunction& cost, double t_f,
                         const IntegratorConfig& cfg,
                         std::vector<double> sample_points = {1.0});

// Product-state probability of landing in the ground sector:
// sum over ground weights w of C(n,w) p^w (1-p)^(n-w), p = sin^2(theta/2).
double svd_sector_prob(SpinCoherentAngles angles, const CostFunction& cost);

// Dicke-basis embedding of the product state, a_w = sqrt(C(n,w))
// cos^(n-w)(theta/2) (sin(theta/2) e^{i phi})^w.
SymmetricState dicke_embedding(int n, SpinCoherentAngles angles);

// sqrt(1 - |<psi|Omega>|^2)
double trace_distance_to_qa(SpinCoherentAngles angles,
                            const SymmetricState& state);

struct LandscapeMinimum {
  double theta;
  double value;
};

// Local minima of vsc_sym over theta at fixed s (phi = 0), located on a
// uniform grid and refined by golden section.
std::vector<LandscapeMinimum> landscape_scan(const CostFunction& cost, double s,
                                             int grid_points = 4096);

struct DegeneracyResult {
  double s_star;
  double theta_low;   // minimum at smaller theta at s_star
  double theta_high;  // minimum at larger theta at s_star
  double hw_jump;     // discontinuity of n sin^2(theta/2) across s_star
};

// Bisects s until the two lowest landscape minima are degenerate to 1e-9.
// Absent (nullopt) when the landscape never develops a double well.
std::optional<DegeneracyResult> find_degeneracy(const CostFunction& cost,
                                                int s_grid_points = 400,
                                                int theta_grid_points = 4096);

// max over a theta grid of the plateau contribution
// s sum_{l<w<u} f(w) C(n,w) p^w (1-p)^(n-w)
double vsc_perturbation_magnitude(const CostFunction& plateau_cost, double s,
                                  int grid_points = 4096);

}  // namespace phwo
