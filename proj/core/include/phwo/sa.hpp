#pragma once

#include <cstdint>
#include <vector>

#include "phwo/cost_function.hpp"

namespace phwo {

enum class SpinSelection { random_pick, sequential };
enum class SolverMode { annealer, solver };

struct SAConfig {
  double beta_initial = 0.1;
  double beta_final = 20.0;
  int sweeps = 1000;
  SpinSelection selection = SpinSelection::sequential;
  SolverMode mode = SolverMode::solver;
  std::uint64_t seed = 0;

  void validate() const;
};

struct SARunResult {
  int best_w = 0;
  int final_w = 0;
  bool success = false;
  std::uint64_t spin_updates = 0;
};

// Metropolis single-spin annealing on an explicit n-bit string, beta stepped
// linearly after each sweep.
SARunResult run_sa(const CostFunction& cost, const SAConfig& cfg);

// Spin updates until the walker first enters the ground set at fixed beta.
// start_w < 0 means a uniformly random initial string; otherwise the string
// starts with exactly start_w ones. Returns max_updates + 1 when not hit.
std::uint64_t sa_hit_time(const CostFunction& cost, double beta,
                          std::uint64_t seed, std::uint64_t max_updates,
                          int start_w = -1);

// Occupation counts of each Hamming weight, sampled once per sweep after
// burn-in, at fixed beta.
std::vector<std::uint64_t> sa_weight_histogram(const CostFunction& cost,
                                               double beta, int sweeps,
                                               int burn_in_sweeps,
                                               std::uint64_t seed,
                                               SpinSelection selection);

// Stefanov closed form for the expected plateau traversal time (spin updates)
// of the width-(u-l-1) birth-death chain; 0 when the plateau is empty.
double stefanov_plateau_time(int n, int l, int u);

// Expected steps to absorption at node 0, starting from the rightmost node,
// of a row-stochastic tridiagonal chain. a[i] = p(i -> i-1) for i = 1..w,
// c[i] = p(i-1 -> i) for i = 2..w (index 1 unused); the diagonal is whatever
// probability is left.
double absorbing_chain_time(const std::vector<double>& a,
                            const std::vector<double>& c);

enum class HittingStart { from_n, from_half };

// Mean first-passage time to w = 0 for fixed-temperature SA on plain Hamming
// weight; beta may be +infinity.
double plain_hw_hitting_time(int n, double beta, HittingStart start);

// Thermal <HW> under the cost function, log-domain weights.
double gibbs_expected_hw(const CostFunction& cost, double beta);
// Plain-HW closed form A(beta) = n e^-beta / (1 + e^-beta).
double gibbs_background(int n, double beta);

}  // namespace phwo
