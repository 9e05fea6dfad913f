#include "phwo/sqa.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "phwo/rng.hpp"

namespace phwo {

void SQAConfig::validate() const {
  if (beta <= 0.0) throw std::invalid_argument("beta must be positive");
  if (n_tau < 2) throw std::invalid_argument("n_tau must be >= 2");
  if (sweeps < 1) throw std::invalid_argument("sweeps must be >= 1");
  if (j_perp_cap <= 0.0) throw std::invalid_argument("j_perp_cap must be positive");
}

Couplings couplings(double s, const SQAConfig& cfg) {
  cfg.validate();
  if (s < 0.0 || s > 1.0) throw std::invalid_argument("s must lie in [0,1]");
  Couplings c;
  c.end_of_schedule = s >= 1.0;
  c.delta = cfg.beta * s / cfg.n_tau;
  if (c.end_of_schedule) {
    c.j_perp = cfg.j_perp_cap;
  } else {
    c.j_perp = std::min(cfg.j_perp_cap, -0.5 * std::log(std::tanh((1.0 - s) / 2.0)));
  }
  return c;
}

namespace {

// Path configuration: spins[i * n_tau + tau] = +1 maps to bit 0, so the
// per-slice weight counts -1 spins.
struct Lattice {
  const CostFunction& cost;
  int n_tau;
  CounterRng rng;
  std::vector<std::int8_t> spins;
  std::vector<int> slice_w;

  Lattice(const CostFunction& c, const SQAConfig& cfg)
      : cost(c),
        n_tau(cfg.n_tau),
        rng(cfg.seed),
        spins(static_cast<std::size_t>(c.n) * static_cast<std::size_t>(cfg.n_tau)),
        slice_w(static_cast<std::size_t>(cfg.n_tau), 0) {
    for (int i = 0; i < cost.n; ++i) {
      for (int tau = 0; tau < n_tau; ++tau) {
        const std::uint64_t draw =
            cfg.ring_uniform_init ? rng.bits(~std::uint64_t{0}, i, 0)
                                  : rng.bits(~std::uint64_t{0}, i, tau + 1);
        const std::int8_t val = (draw & 1u) ? std::int8_t{1} : std::int8_t{-1};
        at(i, tau) = val;
        if (val < 0) ++slice_w[static_cast<std::size_t>(tau)];
      }
    }
  }

  std::int8_t& at(int i, int tau) {
    return spins[static_cast<std::size_t>(i) * n_tau + static_cast<std::size_t>(tau)];
  }

  int recompute_weight(int tau) const {
    int w = 0;
    for (int i = 0; i < cost.n; ++i)
      if (spins[static_cast<std::size_t>(i) * n_tau + static_cast<std::size_t>(tau)] < 0)
        ++w;
    return w;
  }
};

}  // namespace

SQARunResult run_sqa(const CostFunction& cost, const SQAConfig& cfg) {
  cfg.validate();
  const int n = cost.n;
  const int n_tau = cfg.n_tau;
  const auto gs = ground_set(cost);
  std::vector<bool> in_ground(static_cast<std::size_t>(n) + 1, false);
  for (int w : gs.weights) in_ground[static_cast<std::size_t>(w)] = true;

  Lattice lat(cost, cfg);
  double best_f = cost(lat.slice_w[0]);
  int best_w = lat.slice_w[0];
  for (int tau = 1; tau < n_tau; ++tau) {
    const int w = lat.slice_w[static_cast<std::size_t>(tau)];
    if (cost(w) < best_f) {
      best_f = cost(w);
      best_w = w;
    }
  }

  SQARunResult res;
  std::uint64_t attempts = 0;
  std::vector<int> cluster;
  cluster.reserve(static_cast<std::size_t>(n_tau));

  bool stop = false;
  int sweep = 0;
  for (; sweep < cfg.sweeps && !stop; ++sweep) {
    // with a budget the schedule tracks budget consumption, so a truncated
    // run still anneals all the way to s = 1
    const double s =
        cfg.spin_update_budget > 0
            ? std::min(1.0, static_cast<double>(res.spin_updates) /
                                static_cast<double>(cfg.spin_update_budget))
            : (cfg.sweeps > 1 ? static_cast<double>(sweep) / (cfg.sweeps - 1)
                              : 0.0);
    const auto coup = couplings(s, cfg);
    const double p_add = 1.0 - std::exp(-2.0 * coup.j_perp);

    for (int i = 0; i < n && !stop; ++i) {
      std::uint64_t q = 0;
      const auto draw = [&] {
        return lat.rng.uniform(static_cast<std::uint64_t>(sweep),
                               static_cast<std::uint64_t>(i), q++);
      };
      const int tau0 = static_cast<int>(
          draw() * n_tau);
      const std::int8_t mu = lat.at(i, tau0);

      // contiguous arc along the time-like ring
      cluster.clear();
      cluster.push_back(tau0);
      int left = tau0, right = tau0;
      while (static_cast<int>(cluster.size()) < n_tau) {
        const int next = (right + 1) % n_tau;
        if (next == left || lat.at(i, next) != mu || draw() >= p_add) break;
        cluster.push_back(next);
        right = next;
      }
      while (static_cast<int>(cluster.size()) < n_tau) {
        const int next = (left - 1 + n_tau) % n_tau;
        if (next == right || lat.at(i, next) != mu || draw() >= p_add) break;
        cluster.push_back(next);
        left = next;
      }

      ++attempts;
      res.spin_updates += cluster.size();

      double de = 0.0;
      for (int tau : cluster) {
        const int w = lat.slice_w[static_cast<std::size_t>(tau)];
        de += coup.delta * (cost(w + mu) - cost(w));
      }
      if (de <= 0.0 || draw() < std::exp(-de)) {
        for (int tau : cluster) {
          lat.at(i, tau) = static_cast<std::int8_t>(-mu);
          lat.slice_w[static_cast<std::size_t>(tau)] += mu;
          const int w = lat.slice_w[static_cast<std::size_t>(tau)];
          if (cost(w) < best_f) {
            best_f = cost(w);
            best_w = w;
          }
        }
      }

      if (cfg.spin_update_budget > 0 && res.spin_updates >= cfg.spin_update_budget)
        stop = true;
    }
  }

  const int final_tau = static_cast<int>(
      lat.rng.below(static_cast<std::uint64_t>(n_tau), ~std::uint64_t{0} - 1, 0, 0));
  res.final_w = lat.slice_w[static_cast<std::size_t>(final_tau)];
  res.best_w = best_w;
  res.sweeps_done = sweep;
  res.mean_cluster_size =
      attempts > 0 ? static_cast<double>(res.spin_updates) / attempts : 0.0;
  const int judged = cfg.mode == SolverMode::solver ? best_w : res.final_w;
  res.success = in_ground[static_cast<std::size_t>(judged)];
  return res;
}

std::vector<std::uint64_t> sqa_weight_histogram(const CostFunction& cost,
                                                const SQAConfig& cfg,
                                                double s_fixed,
                                                int burn_in_sweeps) {
  cfg.validate();
  const int n = cost.n;
  const int n_tau = cfg.n_tau;
  const auto coup = couplings(s_fixed, cfg);
  const double p_add = 1.0 - std::exp(-2.0 * coup.j_perp);

  Lattice lat(cost, cfg);
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(n) + 1, 0);
  std::vector<int> cluster;
  for (int sweep = 0; sweep < burn_in_sweeps + cfg.sweeps; ++sweep) {
    for (int i = 0; i < n; ++i) {
      std::uint64_t q = 0;
      const auto draw = [&] {
        return lat.rng.uniform(static_cast<std::uint64_t>(sweep),
                               static_cast<std::uint64_t>(i), q++);
      };
      const int tau0 = static_cast<int>(draw() * n_tau);
      const std::int8_t mu = lat.at(i, tau0);
      cluster.clear();
      cluster.push_back(tau0);
      int left = tau0, right = tau0;
      while (static_cast<int>(cluster.size()) < n_tau) {
        const int next = (right + 1) % n_tau;
        if (next == left || lat.at(i, next) != mu || draw() >= p_add) break;
        cluster.push_back(next);
        right = next;
      }
      while (static_cast<int>(cluster.size()) < n_tau) {
        const int next = (left - 1 + n_tau) % n_tau;
        if (next == right || lat.at(i, next) != mu || draw() >= p_add) break;
        cluster.push_back(next);
        left = next;
      }
      double de = 0.0;
      for (int tau : cluster) {
        const int w = lat.slice_w[static_cast<std::size_t>(tau)];
        de += coup.delta * (cost(w + mu) - cost(w));
      }
      if (de <= 0.0 || draw() < std::exp(-de)) {
        for (int tau : cluster) {
          lat.at(i, tau) = static_cast<std::int8_t>(-mu);
          lat.slice_w[static_cast<std::size_t>(tau)] += mu;
        }
      }
    }
    if (sweep >= burn_in_sweeps)
      for (int tau = 0; tau < n_tau; ++tau)
        ++counts[static_cast<std::size_t>(lat.slice_w[static_cast<std::size_t>(tau)])];
  }
  return counts;
}

}  // namespace phwo
