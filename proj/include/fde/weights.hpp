#pragma once

#include <cstddef>
#include <string>
#include <vector>

// Shifted Grunwald-Letnikov binomial coefficients and the second-order
// weighted (p,q) = (1,0) difference weights for fractional order
// gamma in (1, 2].  gamma = 2 is admitted and reproduces the classical
// three-point second-difference stencil.

namespace fde {

struct WeightTable {
  double gamma = 0.0;
  std::size_t K = 0;          // last retained index
  std::vector<double> g;      // g_0 .. g_K, g_k = (-1)^k binom(gamma, k)
  std::vector<double> w;      // w_0 .. w_K, w_k = (g/2) g_k + ((2-g)/2) g_{k-1}
};

// g_0 .. g_K by the stable recurrence g_k = g_{k-1} (1 - (gamma+1)/k).
std::vector<double> binom_coeffs(double gamma, std::size_t K);

// Cached immutable table; the reference stays valid for the process lifetime.
const WeightTable& wsgd_weights(double gamma, std::size_t K);

// min(alpha, beta) >= (-1+sqrt(17))/2: all off-diagonal weights of the
// discretized operator are nonpositive (M-matrix regime).
bool is_m_matrix_regime(double alpha, double beta);
double m_matrix_threshold();

// Empty vector when every documented weight invariant holds; otherwise one
// message per violated invariant.  (The strict negativity of partial sums
// degenerates to equality at gamma = 2.)
std::vector<std::string> weight_invariant_failures(const WeightTable& t);

} // namespace fde
