#pragma once

#include <string>
#include <vector>

#include "cli_common.hpp"
#include "phwo/sa.hpp"
#include "phwo/sqa.hpp"
#include "phwo/tts.hpp"

namespace phwocli {

int cmd_spectrum(const ProblemSpec& prob, int k, int s_points,
                 const std::string& out);
int cmd_evolve_qa(const ProblemSpec& prob, double tf, int samples,
                  const std::string& out);
int cmd_evolve_svd(const ProblemSpec& prob, double tf, int samples,
                   const std::string& out);
int cmd_run_sa(const ProblemSpec& prob, const phwo::SAConfig& base, int seeds,
               const std::string& out);
int cmd_run_sqa(const ProblemSpec& prob, const phwo::SQAConfig& base, int seeds,
                const std::string& out);
int cmd_gibbs(const ProblemSpec& prob, double beta_min, double beta_max,
              int points, const std::string& out);
int cmd_potential(const ProblemSpec& prob, double s, int theta_points,
                  const std::string& out);
int cmd_tts(const ProblemSpec& prob, const std::vector<std::string>& solvers,
            const TfGrid& grid, double pd, int seeds, const std::string& out);
int cmd_sweep(const ProblemSpec& prob, const std::vector<std::string>& solvers,
              const std::vector<int>& ns, const TfGrid& grid, double pd,
              int seeds, const std::string& out);
int cmd_reproduce(const std::string& figure, ProblemSpec prob,
                  const std::string& out);

// shared by tts/sweep/reproduce: success probability of one solver at one
// operating point, evaluated deterministically (qa/svd) or over a seed
// ensemble (sa/sqa, operating point = spin-update budget)
double solver_pgs(const std::string& solver, const phwo::CostFunction& cost,
                  double point, int seeds);

// Grid-prefilled wrappers around the optimizer and the threshold search so
// the reproduce presets share the caching logic with tts/sweep.
phwo::TTSResult tts_for(const std::string& solver,
                        const phwo::CostFunction& cost, const TfGrid& grid,
                        double pd, int seeds);
phwo::ThresholdResult threshold_for(const std::string& solver,
                                    const phwo::CostFunction& cost,
                                    const TfGrid& grid, double p_thc,
                                    int seeds);

}  // namespace phwocli
