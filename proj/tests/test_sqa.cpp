#include <cmath>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "phwo/sa.hpp"
#include "phwo/sqa.hpp"

using namespace phwo;

TEST_CASE("schedule couplings") {
  SQAConfig cfg;
  cfg.beta = 10.0;
  cfg.n_tau = 50;

  auto c0 = couplings(0.0, cfg);
  CHECK(c0.delta == doctest::Approx(0.0));
  CHECK_FALSE(c0.end_of_schedule);
  // at s=0 the transverse field is 1: j_perp = -0.5 ln tanh(1/2)
  CHECK(c0.j_perp == doctest::Approx(-0.5 * std::log(std::tanh(0.5))));

  auto cm = couplings(0.6, cfg);
  CHECK(cm.delta == doctest::Approx(10.0 * 0.6 / 50));
  CHECK(cm.j_perp == doctest::Approx(-0.5 * std::log(std::tanh(0.2))));

  auto c1 = couplings(1.0, cfg);
  CHECK(c1.end_of_schedule);
  CHECK(c1.j_perp == doctest::Approx(cfg.j_perp_cap));

  CHECK_THROWS(couplings(-0.1, cfg));
  CHECK_THROWS(couplings(1.1, cfg));
  cfg.n_tau = 1;
  CHECK_THROWS(couplings(0.5, cfg));
}

TEST_CASE("runs are reproducible per seed") {
  auto cost = make_plateau(24, 0, 4);
  SQAConfig cfg;
  cfg.sweeps = 300;
  cfg.n_tau = 16;
  auto a = run_sqa(cost, cfg);
  auto b = run_sqa(cost, cfg);
  CHECK(a.final_w == b.final_w);
  CHECK(a.best_w == b.best_w);
  CHECK(a.spin_updates == b.spin_updates);
  cfg.seed = 5;
  auto c = run_sqa(cost, cfg);
  // different stream; outcome may coincide but updates will not
  CHECK(c.spin_updates != a.spin_updates);
}

TEST_CASE("solves the unperturbed problem") {
  SQAConfig cfg;
  cfg.sweeps = 400;
  cfg.n_tau = 32;
  int hits = 0;
  for (int seed = 0; seed < 8; ++seed) {
    cfg.seed = seed;
    if (run_sqa(make_plain_hw(32), cfg).success) ++hits;
  }
  CHECK(hits == 8);
}

TEST_CASE("update budget truncates the run") {
  SQAConfig cfg;
  cfg.sweeps = 10000;
  cfg.n_tau = 16;
  cfg.spin_update_budget = 2000;
  auto r = run_sqa(make_plain_hw(32), cfg);
  CHECK(r.spin_updates >= 2000u);
  CHECK(r.spin_updates <= 2000u + 16u);  // overshoot at most one cluster
  CHECK(r.sweeps_done < 10000);
  CHECK(r.mean_cluster_size >= 1.0);
  CHECK(r.mean_cluster_size <= 16.0);
}

TEST_CASE("frozen endpoint sampling follows the classical Gibbs law") {
  // With the schedule frozen at s=1 the time-like coupling is capped and the
  // rings stay internally aligned when started aligned, so each site flips
  // as one block with total cost beta * delta_f: classical Metropolis at
  // beta. Compare <HW> against the exact thermal value.
  const int n = 12;
  auto cost = make_plateau(n, 0, 4);
  SQAConfig cfg;
  cfg.beta = 1.5;
  cfg.n_tau = 8;
  cfg.sweeps = 30000;
  cfg.ring_uniform_init = true;
  auto counts = sqa_weight_histogram(cost, cfg, 1.0, 2000);
  double total = 0.0, mean = 0.0;
  for (int w = 0; w <= n; ++w) {
    total += static_cast<double>(counts[w]);
    mean += w * static_cast<double>(counts[w]);
  }
  mean /= total;
  const double exact = gibbs_expected_hw(cost, cfg.beta);
  CHECK(mean == doctest::Approx(exact).epsilon(0.03));
}

TEST_CASE("mid-schedule clusters span several slices") {
  auto cost = make_plain_hw(16);
  SQAConfig cfg;
  cfg.sweeps = 200;
  cfg.n_tau = 32;
  auto r = run_sqa(cost, cfg);
  // late in the schedule j_perp is large, so arcs should often grow
  CHECK(r.mean_cluster_size > 1.5);
}

TEST_CASE("configuration validation") {
  SQAConfig cfg;
  cfg.beta = 0.0;
  CHECK_THROWS(cfg.validate());
  cfg = {};
  cfg.sweeps = 0;
  CHECK_THROWS(cfg.validate());
  cfg = {};
  cfg.j_perp_cap = -1.0;
  CHECK_THROWS(cfg.validate());
}
