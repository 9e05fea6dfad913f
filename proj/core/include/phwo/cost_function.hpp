#pragma once

#include <map>
#include <string>
#include <vector>

namespace phwo {

enum class CostLabel { plain_hw, plateau, spike, convex_perturbed, vandam, custom };

std::string to_string(CostLabel label);
CostLabel cost_label_from_string(const std::string& name);

// An energy function on Hamming-weight space: values[w] = f(w), w in 0..n.
// Immutable after construction; safe to share across threads.
struct CostFunction {
  int n = 0;
  std::vector<double> values;  // n + 1 entries
  CostLabel label = CostLabel::custom;
  std::map<std::string, double> params;

  double operator()(int w) const { return values[static_cast<std::size_t>(w)]; }
  double min_value() const;
};

struct GroundSet {
  std::vector<int> weights;  // sorted, minimizers of f
  double degeneracy;         // sum of C(n, w) over those weights
};

CostFunction make_plain_hw(int n);
// f(w) = u-1 on l < w < u, f(w) = w elsewhere; requires 0 <= l < u <= n
CostFunction make_plateau(int n, int l, int u);
// f(n/4) = n, f(w) = w elsewhere; requires 4 | n
CostFunction make_spike(int n);
// f(0) = 2, f(w) = w elsewhere; ground set {1}
CostFunction make_convex_perturbed(int n);
// f(n) = -1, f(w) = w elsewhere; ground set {n}
CostFunction make_vandam(int n);
CostFunction make_custom(int n, std::vector<double> values);
// Text file with one "w value" pair per line, covering 0..n exactly once.
CostFunction load_cost_file(const std::string& path);

GroundSet ground_set(const CostFunction& cost);

// Pauli-z expansion coefficients: J[k] is the common coefficient of every
// sigma^r with |r| = k, so that f(x) = sum_r J_{|r|} (-1)^{x.r}.
// Computed by the weight-resolved sum; throws above the size cap.
std::vector<double> pauli_z_expansion(const CostFunction& cost, int max_n = 24);

// Reconstruction kernel K_k(w) = sum_j (-1)^j C(w,j) C(n-w,k-j); satisfies
// f(w) = sum_k J[k] K_k(w).
double krawtchouk(int n, int k, int w);

}  // namespace phwo
