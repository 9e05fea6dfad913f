#include <cmath>
#include <vector>

#include "doctest.h"
#include "phwo/math.hpp"
#include "phwo/qa.hpp"
#include "phwo/svd.hpp"

using namespace phwo;

namespace {

// Direct small-n potential: (1-s)(n/2)(1 - cos phi sin theta) + s sum_w f(w)
// C(n,w) p^w (1-p)^(n-w), evaluated with exact binomials.
double potential_oracle(const CostFunction& cost, SpinCoherentAngles a, double s) {
  const int n = cost.n;
  const double p = std::sin(a.theta / 2.0) * std::sin(a.theta / 2.0);
  double favg = 0.0;
  for (int w = 0; w <= n; ++w)
    favg += cost(w) * binomial_exact(n, w) * std::pow(p, w) *
            std::pow(1.0 - p, n - w);
  return (1.0 - s) * n / 2.0 * (1.0 - std::cos(a.phi) * std::sin(a.theta)) +
         s * favg;
}

}  // namespace

TEST_CASE("potential matches the direct binomial sum") {
  auto cost = make_plateau(20, 0, 7);
  for (double th : {0.2, 1.1, 2.6})
    for (double ph : {-1.0, 0.0, 2.0})
      for (double s : {0.0, 0.4, 1.0})
        CHECK(vsc_sym(cost, {th, ph}, s) ==
              doctest::Approx(potential_oracle(cost, {th, ph}, s)).epsilon(1e-11));
}

TEST_CASE("analytic gradient against finite differences") {
  auto cost = make_plateau(32, 0, 6);
  const double eps = 1e-6;
  for (double th : {0.3, 1.234, 2.8}) {
    for (double s : {0.1, 0.41, 0.9}) {
      SpinCoherentAngles a{th, 0.567};
      auto g = vsc_gradient(cost, a, s);
      const double fd_th = (vsc_sym(cost, {th + eps, a.phi}, s) -
                            vsc_sym(cost, {th - eps, a.phi}, s)) /
                           (2 * eps);
      const double fd_ph = (vsc_sym(cost, {th, a.phi + eps}, s) -
                            vsc_sym(cost, {th, a.phi - eps}, s)) /
                           (2 * eps);
      CHECK(g.d_theta == doctest::Approx(fd_th).epsilon(1e-6));
      CHECK(g.d_phi == doctest::Approx(fd_ph).epsilon(1e-6));
    }
  }
}

TEST_CASE("product-state dynamics is exact for the unperturbed problem") {
  // H(s) is non-interacting there, so the true evolution stays a product
  // state and the semiclassical trajectory must coincide with it.
  auto cost = make_plain_hw(8);
  for (double tf : {0.7, 2.5, 9.0}) {
    auto qa = evolve(cost, tf, {}, {1.0});
    auto svd = evolve_svd(cost, tf, {}, {1.0});
    CHECK(trace_distance_to_qa(svd.samples.back().angles, qa.states.back()) <=
          1e-6);
  }
}

TEST_CASE("embedding reproduces the uniform start") {
  auto emb = dicke_embedding(12, {M_PI / 2.0, 0.0});
  auto ref = initial_state(12);
  CHECK(trace_distance(emb, ref) <= 1e-12);
  CHECK(emb.norm_sq() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("sector probability at the poles") {
  auto vd = make_vandam(10);  // ground set {n}
  CHECK(svd_sector_prob({M_PI, 0.0}, vd) == doctest::Approx(1.0));
  CHECK(svd_sector_prob({0.0, 0.0}, vd) == doctest::Approx(0.0));
  auto ph = make_plain_hw(10);  // ground set {0}
  CHECK(svd_sector_prob({0.0, 0.0}, ph) == doctest::Approx(1.0));
}

TEST_CASE("landscape of the unperturbed problem has a single minimum") {
  auto cost = make_plain_hw(64);
  for (double s : {0.0, 0.3, 0.7}) {
    auto minima = landscape_scan(cost, s);
    REQUIRE(minima.size() == 1);
    if (s == 0.0) CHECK(minima[0].theta == doctest::Approx(M_PI / 2).epsilon(1e-6));
  }
}

TEST_CASE("double well appears and becomes degenerate") {
  auto cost = make_plateau(128, 0, 6);
  auto deg = find_degeneracy(cost);
  REQUIRE(deg.has_value());
  CHECK(deg->theta_low < deg->theta_high);
  CHECK(deg->hw_jump > 1.0);  // order-u jump in n sin^2(theta/2)
  // the two wells really are degenerate there
  auto minima = landscape_scan(cost, deg->s_star);
  REQUIRE(minima.size() >= 2);
  CHECK(std::abs(minima[0].value - minima[1].value) <= 1e-6);
  // no double well for the unperturbed problem
  CHECK_FALSE(find_degeneracy(make_plain_hw(64)).has_value());
}

TEST_CASE("perturbation magnitude scales with the window") {
  auto narrow = make_plateau(256, 0, 3);
  auto wide = make_plateau(256, 0, 8);
  const double s = 0.9;
  CHECK(vsc_perturbation_magnitude(wide, s) >
        vsc_perturbation_magnitude(narrow, s));
  CHECK_THROWS(vsc_perturbation_magnitude(make_plain_hw(16), s));
}

TEST_CASE("trajectory sampling mirrors the requested grid") {
  auto traj = evolve_svd(make_plain_hw(16), 2.0, {}, {0.5, 1.0});
  REQUIRE(traj.samples.size() == 2);
  CHECK(traj.samples[0].s == doctest::Approx(0.5));
  CHECK(traj.samples[1].s == doctest::Approx(1.0));
}
