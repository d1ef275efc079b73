#include "fde/weights.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace fde {

namespace {

void check_gamma(double gamma) {
  if (!(gamma > 1.0) || !(gamma <= 2.0))
    throw std::invalid_argument("weights: gamma must lie in (1, 2]");
}

} // namespace

std::vector<double> binom_coeffs(double gamma, std::size_t K) {
  check_gamma(gamma);
  std::vector<double> g(K + 1);
  g[0] = 1.0;
  for (std::size_t k = 1; k <= K; ++k)
    g[k] = g[k - 1] * (1.0 - (gamma + 1.0) / double(k));
  return g;
}

const WeightTable& wsgd_weights(double gamma, std::size_t K) {
  check_gamma(gamma);
  if (K < 2) throw std::invalid_argument("weights: K must be >= 2");

  static std::mutex mu;
  static std::map<std::pair<double, std::size_t>, std::unique_ptr<WeightTable>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{gamma, K}];
  if (!slot) {
    auto t = std::make_unique<WeightTable>();
    t->gamma = gamma;
    t->K = K;
    t->g = binom_coeffs(gamma, K);
    t->w.resize(K + 1);
    const double cg = 0.5 * gamma, cg1 = 0.5 * (2.0 - gamma);
    t->w[0] = cg; // cg * g_0
    for (std::size_t k = 1; k <= K; ++k)
      t->w[k] = cg * t->g[k] + cg1 * t->g[k - 1];
    slot = std::move(t);
  }
  return *slot;
}

double m_matrix_threshold() { return 0.5 * (std::sqrt(17.0) - 1.0); }

bool is_m_matrix_regime(double alpha, double beta) {
  return std::min(alpha, beta) >= m_matrix_threshold();
}

std::vector<std::string> weight_invariant_failures(const WeightTable& t) {
  std::vector<std::string> bad;
  auto fail = [&](const std::string& m) { bad.push_back(m); };
  const double gamma = t.gamma;
  const std::size_t K = t.K;
  const double eps = 1e-12;

  if (t.g.size() != K + 1 || t.w.size() != K + 1) {
    fail("size mismatch");
    return bad;
  }
  if (t.g[0] != 1.0) fail("g_0 != 1");
  if (std::fabs(t.g[1] + gamma) > eps) fail("g_1 != -gamma");
  if (std::fabs(t.w[0] - 0.5 * gamma) > eps) fail("w_0 != gamma/2");
  if (t.w[0] > 1.0 + eps) fail("w_0 > 1");
  if (std::fabs(t.w[1] - 0.5 * (2.0 - gamma - gamma * gamma)) > eps)
    fail("w_1 != (2-gamma-gamma^2)/2");
  if (!(t.w[1] < 0.0)) fail("w_1 not negative");
  if (K >= 2 && std::fabs(t.w[2] - 0.25 * gamma * (gamma * gamma + gamma - 4.0)) > eps)
    fail("w_2 != gamma(gamma^2+gamma-4)/4");

  // 1 >= w_0 >= w_3 >= w_4 >= ... >= 0
  for (std::size_t k = 3; k <= K; ++k) {
    if (t.w[k] < -eps) fail("w_" + std::to_string(k) + " negative");
    const double prev = (k == 3) ? t.w[0] : t.w[k - 1];
    if (t.w[k] > prev + eps) {
      fail("w_" + std::to_string(k) + " not monotone");
      break;
    }
  }

  // partial sums: < 0 for 2 <= n <= K (== 0 from n = 2 on when gamma = 2)
  double psum = t.w[0] + t.w[1];
  for (std::size_t n = 2; n <= K; ++n) {
    psum += t.w[n];
    const bool ok = (gamma == 2.0) ? (psum <= eps) : (psum < 0.0);
    if (!ok) {
      fail("partial sum through n=" + std::to_string(n) + " not negative");
      break;
    }
  }

  // total sum tends to 0 like K^{-gamma}
  if (K >= 1000 && std::fabs(psum) > 10.0 * std::pow(double(K), -gamma))
    fail("total sum decays too slowly");

  // |w_k| <= C k^{-(gamma+1)} with a modest constant
  double c = 0.0;
  for (std::size_t k = 3; k <= K; ++k)
    c = std::max(c, std::fabs(t.w[k]) * std::pow(double(k), gamma + 1.0));
  if (c > 10.0) {
    std::ostringstream os;
    os << "decay constant too large: " << c;
    fail(os.str());
  }
  return bad;
}

} // namespace fde
