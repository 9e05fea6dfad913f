#include "phwo/cost_function.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "phwo/math.hpp"

namespace phwo {

std::string to_string(CostLabel label) {
  switch (label) {
    case CostLabel::plain_hw: return "plain_hw";
    case CostLabel::plateau: return "plateau";
    case CostLabel::spike: return "spike";
    case CostLabel::convex_perturbed: return "convex_perturbed";
    case CostLabel::vandam: return "vandam";
    case CostLabel::custom: return "custom";
  }
  return "custom";
}

CostLabel cost_label_from_string(const std::string& name) {
  if (name == "plain_hw") return CostLabel::plain_hw;
  if (name == "plateau") return CostLabel::plateau;
  if (name == "spike") return CostLabel::spike;
  if (name == "convex_perturbed" || name == "convex") return CostLabel::convex_perturbed;
  if (name == "vandam") return CostLabel::vandam;
  if (name == "custom") return CostLabel::custom;
  throw std::invalid_argument("unknown cost label: " + name);
}

double CostFunction::min_value() const {
  return *std::min_element(values.begin(), values.end());
}

namespace {

void require_positive_n(int n) {
  if (n < 1) throw std::invalid_argument("n must be positive");
}

std::vector<double> ramp(int n) {
  std::vector<double> v(static_cast<std::size_t>(n) + 1);
  for (int w = 0; w <= n; ++w) v[static_cast<std::size_t>(w)] = w;
  return v;
}

}  // namespace

CostFunction make_plain_hw(int n) {
  require_positive_n(n);
  return {n, ramp(n), CostLabel::plain_hw, {}};
}

CostFunction make_plateau(int n, int l, int u) {
  require_positive_n(n);
  if (l < 0 || l >= u || u > n)
    throw std::invalid_argument("plateau requires 0 <= l < u <= n");
  auto v = ramp(n);
  for (int w = l + 1; w < u; ++w) v[static_cast<std::size_t>(w)] = u - 1;
  CostFunction cost{n, std::move(v), CostLabel::plateau, {}};
  cost.params["l"] = l;
  cost.params["u"] = u;
  cost.params["h"] = u - l - 1;
  return cost;
}

CostFunction make_spike(int n) {
  require_positive_n(n);
  if (n % 4 != 0) throw std::invalid_argument("spike requires n divisible by 4");
  auto v = ramp(n);
  v[static_cast<std::size_t>(n / 4)] = n;
  return {n, std::move(v), CostLabel::spike, {}};
}

CostFunction make_convex_perturbed(int n) {
  if (n < 2) throw std::invalid_argument("convex_perturbed requires n >= 2");
  auto v = ramp(n);
  v[0] = 2.0;
  return {n, std::move(v), CostLabel::convex_perturbed, {}};
}

CostFunction make_vandam(int n) {
  require_positive_n(n);
  auto v = ramp(n);
  v[static_cast<std::size_t>(n)] = -1.0;
  return {n, std::move(v), CostLabel::vandam, {}};
}

CostFunction make_custom(int n, std::vector<double> values) {
  require_positive_n(n);
  if (values.size() != static_cast<std::size_t>(n) + 1)
    throw std::invalid_argument("custom cost needs exactly n+1 values");
  for (double v : values)
    if (!std::isfinite(v)) throw std::invalid_argument("cost values must be finite");
  return {n, std::move(values), CostLabel::custom, {}};
}

CostFunction load_cost_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open cost file: " + path);
  std::map<int, double> entries;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    int w;
    double value;
    if (!(ss >> w >> value))
      throw std::runtime_error("malformed cost file line: " + line);
    if (!entries.emplace(w, value).second)
      throw std::runtime_error("duplicate weight in cost file: " + std::to_string(w));
  }
  if (entries.empty()) throw std::runtime_error("empty cost file: " + path);
  const int n = entries.rbegin()->first;
  std::vector<double> values(static_cast<std::size_t>(n) + 1);
  for (int w = 0; w <= n; ++w) {
    auto it = entries.find(w);
    if (it == entries.end())
      throw std::runtime_error("cost file missing weight " + std::to_string(w));
    values[static_cast<std::size_t>(w)] = it->second;
  }
  return make_custom(n, std::move(values));
}

GroundSet ground_set(const CostFunction& cost) {
  const double fmin = cost.min_value();
  GroundSet gs;
  gs.degeneracy = 0.0;
  for (int w = 0; w <= cost.n; ++w) {
    if (cost(w) == fmin) {
      gs.weights.push_back(w);
      gs.degeneracy += std::exp(log_binomial(cost.n, w));
    }
  }
  gs.degeneracy = std::round(gs.degeneracy);
  return gs;
}

double krawtchouk(int n, int k, int w) {
  double acc = 0.0;
  for (int j = std::max(0, k - (n - w)); j <= std::min(k, w); ++j) {
    const double term = binomial_exact(w, j) * binomial_exact(n - w, k - j);
    acc += (j % 2 == 0) ? term : -term;
  }
  return acc;
}

std::vector<double> pauli_z_expansion(const CostFunction& cost, int max_n) {
  const int n = cost.n;
  if (n > max_n)
    throw std::invalid_argument("pauli_z_expansion: n exceeds cap " +
                                std::to_string(max_n));
  // J[k] = 2^-n sum_w f(w) sum_j (-1)^j C(k,j) C(n-k, w-j), which groups the
  // brute-force sum over x by Hamming weight and overlap with r.
  std::vector<double> coeffs(static_cast<std::size_t>(n) + 1, 0.0);
  const double scale = std::ldexp(1.0, -n);
  for (int k = 0; k <= n; ++k) {
    double acc = 0.0;
    for (int w = 0; w <= n; ++w) acc += cost(w) * krawtchouk(n, w, k);
    coeffs[static_cast<std::size_t>(k)] = scale * acc;
  }
  return coeffs;
}

}  // namespace phwo
