#include "phwo/sa.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "phwo/math.hpp"
#include "phwo/rng.hpp"

namespace phwo {

void SAConfig::validate() const {
  if (beta_initial < 0.0 || beta_final < beta_initial)
    throw std::invalid_argument("require beta_final >= beta_initial >= 0");
  if (sweeps < 1) throw std::invalid_argument("sweeps must be >= 1");
}

namespace {

constexpr std::uint64_t kInitStream = ~std::uint64_t{0};

struct BitWalker {
  const CostFunction& cost;
  CounterRng rng;
  std::vector<std::uint8_t> bits;
  int w = 0;

  BitWalker(const CostFunction& c, std::uint64_t seed, int start_w)
      : cost(c), rng(seed), bits(static_cast<std::size_t>(c.n)) {
    const int n = cost.n;
    if (start_w < 0) {
      for (int i = 0; i < n; ++i) {
        bits[static_cast<std::size_t>(i)] =
            static_cast<std::uint8_t>(rng.bits(kInitStream, i, 0) & 1u);
        w += bits[static_cast<std::size_t>(i)];
      }
    } else {
      if (start_w > n) throw std::invalid_argument("start weight exceeds n");
      std::vector<int> order(static_cast<std::size_t>(n));
      std::iota(order.begin(), order.end(), 0);
      for (int i = n - 1; i > 0; --i) {  // Fisher-Yates keyed by the seed
        const auto j = static_cast<std::size_t>(
            rng.below(static_cast<std::uint64_t>(i) + 1, kInitStream, i, 1));
        std::swap(order[static_cast<std::size_t>(i)], order[j]);
      }
      for (int i = 0; i < start_w; ++i)
        bits[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = 1;
      w = start_w;
    }
  }

  // One Metropolis proposal; counters (sweep, idx) key the RNG stream.
  void update(std::uint64_t sweep, std::uint64_t idx, double beta,
              bool random_pick) {
    const int n = cost.n;
    const int spin = random_pick
                         ? static_cast<int>(rng.below(
                               static_cast<std::uint64_t>(n), sweep, idx, 0))
                         : static_cast<int>(idx % static_cast<std::uint64_t>(n));
    const int delta = bits[static_cast<std::size_t>(spin)] ? -1 : 1;
    const double de = cost(w + delta) - cost(w);
    if (de <= 0.0 || rng.uniform(sweep, idx, 1) < std::exp(-beta * de)) {
      bits[static_cast<std::size_t>(spin)] ^= 1u;
      w += delta;
    }
  }
};

}  // namespace

SARunResult run_sa(const CostFunction& cost, const SAConfig& cfg) {
  cfg.validate();
  const int n = cost.n;
  const auto gs = ground_set(cost);
  std::vector<bool> in_ground(static_cast<std::size_t>(n) + 1, false);
  for (int w : gs.weights) in_ground[static_cast<std::size_t>(w)] = true;

  BitWalker walker(cost, cfg.seed, -1);
  const bool random_pick = cfg.selection == SpinSelection::random_pick;
  const double dbeta = cfg.sweeps > 1
                           ? (cfg.beta_final - cfg.beta_initial) / (cfg.sweeps - 1)
                           : 0.0;

  int best_w = walker.w;
  double best_f = cost(walker.w);
  double beta = cfg.beta_initial;
  for (int sweep = 0; sweep < cfg.sweeps; ++sweep) {
    for (int idx = 0; idx < n; ++idx) {
      walker.update(static_cast<std::uint64_t>(sweep),
                    static_cast<std::uint64_t>(idx), beta, random_pick);
      if (cost(walker.w) < best_f) {
        best_f = cost(walker.w);
        best_w = walker.w;
      }
    }
    beta += dbeta;
  }

  SARunResult res;
  res.best_w = best_w;
  res.final_w = walker.w;
  res.spin_updates = static_cast<std::uint64_t>(cfg.sweeps) *
                     static_cast<std::uint64_t>(n);
  const int judged = cfg.mode == SolverMode::solver ? best_w : walker.w;
  res.success = in_ground[static_cast<std::size_t>(judged)];
  return res;
}

std::uint64_t sa_hit_time(const CostFunction& cost, double beta,
                          std::uint64_t seed, std::uint64_t max_updates,
                          int start_w) {
  const int n = cost.n;
  const auto gs = ground_set(cost);
  std::vector<bool> in_ground(static_cast<std::size_t>(n) + 1, false);
  for (int w : gs.weights) in_ground[static_cast<std::size_t>(w)] = true;

  BitWalker walker(cost, seed, start_w);
  if (in_ground[static_cast<std::size_t>(walker.w)]) return 0;
  for (std::uint64_t t = 0; t < max_updates; ++t) {
    walker.update(t / static_cast<std::uint64_t>(n),
                  t % static_cast<std::uint64_t>(n), beta, true);
    if (in_ground[static_cast<std::size_t>(walker.w)]) return t + 1;
  }
  return max_updates + 1;
}

std::vector<std::uint64_t> sa_weight_histogram(const CostFunction& cost,
                                               double beta, int sweeps,
                                               int burn_in_sweeps,
                                               std::uint64_t seed,
                                               SpinSelection selection) {
  const int n = cost.n;
  BitWalker walker(cost, seed, -1);
  const bool random_pick = selection == SpinSelection::random_pick;
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(n) + 1, 0);
  for (int sweep = 0; sweep < burn_in_sweeps + sweeps; ++sweep) {
    for (int idx = 0; idx < n; ++idx)
      walker.update(static_cast<std::uint64_t>(sweep),
                    static_cast<std::uint64_t>(idx), beta, random_pick);
    if (sweep >= burn_in_sweeps) ++counts[static_cast<std::size_t>(walker.w)];
  }
  return counts;
}

double stefanov_plateau_time(int n, int l, int u) {
  if (l < 0 || l >= u || u > n)
    throw std::invalid_argument("require 0 <= l < u <= n");
  const int width = u - l - 1;
  if (width < 1) return 0.0;
  auto a = [&](int i) { return static_cast<double>(l + i) / n; };
  auto c = [&](int i) {
    return i >= 2 && i <= width ? 1.0 - static_cast<double>(l + i - 1) / n : 0.0;
  };
  double total = 0.0;
  for (int r = 1; r <= width; ++r) {
    double sum = 1.0;
    double prod = 1.0;
    for (int s = r + 1; s <= width; ++s) {
      prod *= c(s) / a(s);
      sum += prod;
    }
    total += sum / a(r);
  }
  return total;
}

double absorbing_chain_time(const std::vector<double>& a,
                            const std::vector<double>& c) {
  const int width = static_cast<int>(a.size()) - 1;  // nodes 1..width transient
  if (width < 1 || c.size() != a.size())
    throw std::invalid_argument("chain vectors must cover nodes 1..w");
  if (a[1] <= 0.0)
    throw std::invalid_argument("no path to the absorber (a[1] = 0)");

  // Solve (I - T) t = 1 over the transient block with the Thomas algorithm.
  // Long double accumulators: the elimination cancels a + c against c when
  // the down rates are tiny, which costs ~c/a digits per level.
  std::vector<long double> diag(static_cast<std::size_t>(width) + 1);
  std::vector<long double> rhs(static_cast<std::size_t>(width) + 1, 1.0L);
  for (int i = 1; i <= width; ++i) {
    const long double stay =
        1.0L - static_cast<long double>(a[static_cast<std::size_t>(i)]) -
        (i < width ? static_cast<long double>(c[static_cast<std::size_t>(i + 1)])
                   : 0.0L);
    diag[static_cast<std::size_t>(i)] = 1.0L - stay;
  }
  // forward elimination: sub-diagonal -a[i], super-diagonal -c[i+1]
  for (int i = 2; i <= width; ++i) {
    const long double m =
        -static_cast<long double>(a[static_cast<std::size_t>(i)]) /
        diag[static_cast<std::size_t>(i - 1)];
    diag[static_cast<std::size_t>(i)] -=
        m * (-static_cast<long double>(c[static_cast<std::size_t>(i)]));
    rhs[static_cast<std::size_t>(i)] -= m * rhs[static_cast<std::size_t>(i - 1)];
  }
  std::vector<long double> t(static_cast<std::size_t>(width) + 1);
  t[static_cast<std::size_t>(width)] =
      rhs[static_cast<std::size_t>(width)] / diag[static_cast<std::size_t>(width)];
  for (int i = width - 1; i >= 1; --i)
    t[static_cast<std::size_t>(i)] =
        (rhs[static_cast<std::size_t>(i)] +
         static_cast<long double>(c[static_cast<std::size_t>(i + 1)]) *
             t[static_cast<std::size_t>(i + 1)]) /
        diag[static_cast<std::size_t>(i)];
  return static_cast<double>(t[static_cast<std::size_t>(width)]);
}

double plain_hw_hitting_time(int n, double beta, HittingStart start) {
  if (beta < 0.0) throw std::invalid_argument("beta must be >= 0");
  const int k_lo = start == HittingStart::from_n ? 0 : n / 2;
  double total = 0.0;
  for (int k = k_lo; k <= n - 1; ++k) {
    double inner = 0.0;
    if (std::isinf(beta)) {
      inner = 1.0;  // only the l = 0 term survives
    } else {
      for (int l = 0; l <= k; ++l)
        inner += std::exp(-l * beta + log_binomial(n, k - l) - log_binomial(n, k));
    }
    total += n / static_cast<double>(n - k) * inner;
  }
  return total;
}

double gibbs_expected_hw(const CostFunction& cost, double beta) {
  if (beta < 0.0) throw std::invalid_argument("beta must be >= 0");
  const int n = cost.n;
  std::vector<double> logw(static_cast<std::size_t>(n) + 1);
  for (int w = 0; w <= n; ++w)
    logw[static_cast<std::size_t>(w)] = log_binomial(n, w) - beta * cost(w);
  const double m = *std::max_element(logw.begin(), logw.end());
  double num = 0.0, den = 0.0;
  for (int w = 0; w <= n; ++w) {
    const double p = std::exp(logw[static_cast<std::size_t>(w)] - m);
    num += w * p;
    den += p;
  }
  return num / den;
}

double gibbs_background(int n, double beta) {
  const double e = std::exp(-beta);
  return n * e / (1.0 + e);
}

}  // namespace phwo
