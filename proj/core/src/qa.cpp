#include "phwo/qa.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "phwo/math.hpp"

namespace phwo {

using cplx = std::complex<double>;

double SymmetricState::norm_sq() const {
  double acc = 0.0;
  for (const auto& a : amplitudes) acc += std::norm(a);
  return acc;
}

SymmetricState initial_state(int n) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  SymmetricState st;
  st.s = 0.0;
  st.amplitudes.resize(static_cast<std::size_t>(n) + 1);
  const double ln2 = std::log(2.0);
  for (int w = 0; w <= n; ++w)
    st.amplitudes[static_cast<std::size_t>(w)] =
        std::exp(0.5 * log_binomial(n, w) - 0.5 * n * ln2);
  return st;
}

QaTrajectory evolve(const CostFunction& cost, double t_f,
                    const IntegratorConfig& cfg,
                    std::vector<double> sample_points) {
  if (t_f <= 0.0) throw std::invalid_argument("t_f must be positive");
  std::sort(sample_points.begin(), sample_points.end());
  for (double s : sample_points)
    if (s < 0.0 || s > 1.0)
      throw std::invalid_argument("sample points must lie in [0,1]");
  if (sample_points.empty() || sample_points.back() < 1.0 - 1e-12)
    sample_points.push_back(1.0);

  const int n = cost.n;
  const int dim = n + 1;
  auto rhs = [&](double s, const std::vector<cplx>& y, std::vector<cplx>& dy) {
    const auto h = build(cost, std::clamp(s, 0.0, 1.0));
    apply(h, y.data(), dy.data());
    const cplx scale(0.0, -t_f);
    for (int i = 0; i < dim; ++i) dy[static_cast<std::size_t>(i)] *= scale;
  };

  QaTrajectory traj;
  traj.t_f = t_f;
  std::vector<cplx> y = initial_state(n).amplitudes;
  integrate_adaptive(rhs, y, cfg, sample_points,
                     [&](double s, const std::vector<cplx>& state) {
                       SymmetricState snap;
                       snap.s = s;
                       snap.amplitudes = state;
                       const double norm = std::sqrt(snap.norm_sq());
                       traj.max_norm_drift = std::max(
                           traj.max_norm_drift, std::abs(norm * norm - 1.0));
                       for (auto& a : snap.amplitudes) a /= norm;
                       traj.states.push_back(std::move(snap));
                     });
  return traj;
}

SymmetricState dense_evolve_oracle(const CostFunction& cost, double t_f,
                                   const IntegratorConfig& cfg,
                                   double* symmetry_residual) {
  const int n = cost.n;
  if (n > 12) throw std::invalid_argument("dense oracle capped at n = 12");
  const std::size_t dim = std::size_t{1} << n;

  std::vector<int> weight(dim);
  for (std::size_t x = 0; x < dim; ++x)
    weight[x] = std::popcount(static_cast<unsigned long long>(x));

  auto rhs = [&](double s, const std::vector<cplx>& y, std::vector<cplx>& dy) {
    s = std::clamp(s, 0.0, 1.0);
    const double drive = 1.0 - s;
    for (std::size_t x = 0; x < dim; ++x) {
      cplx acc = (drive * n / 2.0 + s * cost(weight[x])) * y[x];
      for (int bit = 0; bit < n; ++bit)
        acc -= 0.5 * drive * y[x ^ (std::size_t{1} << bit)];
      dy[x] = cplx(0.0, -t_f) * acc;
    }
  };

  const double amp0 = std::pow(2.0, -0.5 * n);
  std::vector<cplx> y(dim, cplx(amp0, 0.0));
  if (t_f > 0.0)
    integrate_adaptive(rhs, y, cfg, {}, [](double, const std::vector<cplx>&) {});

  SymmetricState out;
  out.s = 1.0;
  out.amplitudes.assign(static_cast<std::size_t>(n) + 1, cplx(0.0, 0.0));
  for (std::size_t x = 0; x < dim; ++x)
    out.amplitudes[static_cast<std::size_t>(weight[x])] += y[x];
  for (int w = 0; w <= n; ++w)
    out.amplitudes[static_cast<std::size_t>(w)] /=
        std::exp(0.5 * log_binomial(n, w));

  if (symmetry_residual != nullptr) {
    double total = 0.0;
    for (const auto& a : y) total += std::norm(a);
    *symmetry_residual = std::sqrt(std::max(0.0, total - out.norm_sq()));
  }
  return out;
}

double ground_prob(const SymmetricState& state, const CostFunction& cost) {
  const auto gs = ground_set(cost);
  double acc = 0.0;
  for (int w : gs.weights)
    acc += std::norm(state.amplitudes[static_cast<std::size_t>(w)]);
  return acc;
}

std::vector<double> eigenpopulations(const SymmetricState& state,
                                     const CostFunction& cost, double s, int k) {
  const auto slice = spectrum(build(cost, s), k, true);
  std::vector<double> pops(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    cplx overlap(0.0, 0.0);
    const auto& vec = slice.eigenvectors[static_cast<std::size_t>(i)];
    for (std::size_t w = 0; w < vec.size(); ++w)
      overlap += vec[w] * state.amplitudes[w];
    pops[static_cast<std::size_t>(i)] = std::norm(overlap);
  }
  return pops;
}

double expected_hw(const SymmetricState& state) {
  double acc = 0.0;
  for (std::size_t w = 0; w < state.amplitudes.size(); ++w)
    acc += static_cast<double>(w) * std::norm(state.amplitudes[w]);
  return acc;
}

double trace_distance(const SymmetricState& a, const SymmetricState& b) {
  cplx overlap(0.0, 0.0);
  for (std::size_t w = 0; w < a.amplitudes.size(); ++w)
    overlap += std::conj(a.amplitudes[w]) * b.amplitudes[w];
  return std::sqrt(std::max(0.0, 1.0 - std::norm(overlap)));
}

}  // namespace phwo
