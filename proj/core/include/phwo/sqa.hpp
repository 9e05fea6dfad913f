#pragma once

#include <cstdint>
#include <vector>

#include "phwo/cost_function.hpp"
#include "phwo/sa.hpp"

namespace phwo {

struct SQAConfig {
  double beta = 30.0;
  int n_tau = 64;
  int sweeps = 1000;
  SolverMode mode = SolverMode::solver;
  std::uint64_t seed = 0;
  double j_perp_cap = 30.0;
  // Start every site with all Trotter slices equal (the j_perp -> inf
  // equilibrium) instead of fully random slices.
  bool ring_uniform_init = false;
  // Stop once this many single-spin updates (summed cluster sizes) have been
  // spent; 0 means run all sweeps. When set, the schedule s ramps with the
  // fraction of the budget consumed instead of the sweep index.
  std::uint64_t spin_update_budget = 0;

  void validate() const;
};

struct Couplings {
  double delta;   // beta B(s) / N_tau
  double j_perp;  // -0.5 ln tanh(A(s)/2), capped
  bool end_of_schedule;
};

// Linear schedule A(s) = 1-s, B(s) = s.
Couplings couplings(double s, const SQAConfig& cfg);

struct SQARunResult {
  int best_w = 0;
  int final_w = 0;
  bool success = false;
  std::uint64_t spin_updates = 0;
  double mean_cluster_size = 0.0;
  int sweeps_done = 0;
};

// Discrete-time path-integral Monte Carlo along the annealing schedule with
// single-site Wolff clusters grown along the imaginary-time ring.
SQARunResult run_sqa(const CostFunction& cost, const SQAConfig& cfg);

// Per-slice Hamming-weight counts with the schedule frozen at s_fixed,
// accumulated once per sweep after burn-in.
std::vector<std::uint64_t> sqa_weight_histogram(const CostFunction& cost,
                                                const SQAConfig& cfg,
                                                double s_fixed,
                                                int burn_in_sweeps);

}  // namespace phwo
