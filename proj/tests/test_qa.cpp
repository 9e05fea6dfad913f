#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "doctest.h"
#include "phwo/math.hpp"
#include "phwo/qa.hpp"

using namespace phwo;

TEST_CASE("uniform superposition start") {
  auto st = initial_state(10);
  CHECK(st.norm_sq() == doctest::Approx(1.0).epsilon(1e-14));
  // a_w^2 = C(n,w)/2^n
  CHECK(std::norm(st.amplitudes[5]) ==
        doctest::Approx(binomial_exact(10, 5) / 1024.0).epsilon(1e-13));
  CHECK(expected_hw(st) == doctest::Approx(5.0).epsilon(1e-13));
}

TEST_CASE("sector propagation matches full-space propagation") {
  std::mt19937 gen(12345);
  std::uniform_real_distribution<double> tf_dist(0.3, 6.0);
  for (int n : {2, 5, 8}) {
    auto cost = make_plateau(n, 0, std::max(2, n / 2));
    for (int rep = 0; rep < 2; ++rep) {
      const double tf = tf_dist(gen);
      auto traj = evolve(cost, tf, {}, {1.0});
      double resid = 0.0;
      auto dense = dense_evolve_oracle(cost, tf, {}, &resid);
      CHECK(trace_distance(traj.states.back(), dense) <= 1e-6);
      CHECK(resid <= 1e-6);  // dynamics never leaves the symmetric sector
    }
  }
}

TEST_CASE("norm conservation at tight tolerance") {
  IntegratorConfig cfg;
  cfg.rel_tol = cfg.abs_tol = 1e-11;
  for (int n : {4, 16}) {
    auto traj = evolve(make_plateau(n, 0, 3), 10.0, cfg, {0.5, 1.0});
    CHECK(traj.max_norm_drift <= 1e-8);
  }
}

TEST_CASE("both embedded pairs agree") {
  auto cost = make_convex_perturbed(24);
  IntegratorConfig ck;
  IntegratorConfig dp;
  dp.method = RkMethod::dormand_prince_45;
  auto a = evolve(cost, 4.2, ck, {1.0});
  auto b = evolve(cost, 4.2, dp, {1.0});
  CHECK(trace_distance(a.states.back(), b.states.back()) <= 1e-7);
}

TEST_CASE("short-time limit stays near the start") {
  auto cost = make_plateau(12, 0, 5);
  auto traj = evolve(cost, 1e-4, {}, {1.0});
  CHECK(trace_distance(traj.states.back(), initial_state(12)) <= 1e-3);
}

TEST_CASE("slow passage through a constant gap stays in the ground state") {
  auto cost = make_plain_hw(6);
  auto traj = evolve(cost, 60.0, {}, {1.0});
  CHECK(ground_prob(traj.states.back(), cost) > 0.99);
}

TEST_CASE("level populations at the start") {
  auto st = initial_state(14);
  auto pops = eigenpopulations(st, make_plain_hw(14), 0.0, 3);
  CHECK(pops[0] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(pops[1] + pops[2] <= 1e-10);
}

TEST_CASE("sample points come back in order with the end appended") {
  auto traj = evolve(make_plain_hw(4), 1.0, {}, {0.75, 0.25});
  REQUIRE(traj.states.size() == 3);
  CHECK(traj.states[0].s == doctest::Approx(0.25));
  CHECK(traj.states[1].s == doctest::Approx(0.75));
  CHECK(traj.states[2].s == doctest::Approx(1.0));
  CHECK_THROWS(evolve(make_plain_hw(4), 1.0, {}, {1.5}));
  CHECK_THROWS(evolve(make_plain_hw(4), 0.0, {}, {1.0}));
}

TEST_CASE("trace distance endpoints") {
  SymmetricState a, b;
  a.amplitudes = {1.0, 0.0};
  b.amplitudes = {0.0, 1.0};
  CHECK(trace_distance(a, a) == doctest::Approx(0.0));
  CHECK(trace_distance(a, b) == doctest::Approx(1.0));
}

TEST_CASE("integrator rejects bad configuration") {
  IntegratorConfig cfg;
  cfg.rel_tol = -1.0;
  CHECK_THROWS(evolve(make_plain_hw(4), 1.0, cfg, {1.0}));
}
