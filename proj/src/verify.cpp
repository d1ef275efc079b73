#include "fde/verify.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <memory>
#include <random>
#include <sstream>
#include <stdexcept>

#include "fde/kernels.hpp"
#include "fde/multigrid.hpp"
#include "fde/problem.hpp"
#include "fde/sparse.hpp"
#include "fde/structured.hpp"
#include "fde/symbols.hpp"
#include "fde/weights.hpp"

namespace fde::verify {
namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(4);
  os << std::scientific << v;
  return os.str();
}

// Signed binomial coefficient binom(gamma, k) for non-integer gamma via
// log-gamma; the reflection formula covers gamma - k + 1 <= 0.
double binom_lgamma(double gamma, std::size_t k) {
  const double z = gamma - static_cast<double>(k) + 1.0;
  const double lead = std::lgamma(gamma + 1.0) - std::lgamma(static_cast<double>(k) + 1.0);
  if (z > 0.0) return std::exp(lead - std::lgamma(z));
  const double s = std::sin(kPi * z);
  const double lg = lead + std::log(std::fabs(s)) + std::lgamma(1.0 - z) - std::log(kPi);
  return std::copysign(std::exp(lg), s);
}

// Dense symmetric constant-coefficient matrix
//   inv_r*I + d*(I (x) T(q_a)) + e*s_over_r*(T(q_b) (x) I)
// used for spectral checks where the identity shift may be zero.
Eigen::MatrixXd constant_symbol_dense(double alpha, double beta, double d,
                                      double e, double s_over_r, double inv_r,
                                      std::size_t n1, std::size_t n2) {
  const ToeplitzBlock ta = ToeplitzBlock::fractional(alpha, n1);
  const ToeplitzBlock tb = ToeplitzBlock::fractional(beta, n2);
  const std::size_t n = n1 * n2;
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                                            static_cast<Eigen::Index>(n));
  for (std::size_t j = 0; j < n2; ++j)
    for (std::size_t i = 0; i < n1; ++i) {
      const std::size_t p = j * n1 + i;
      m(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(p)) += inv_r;
      for (std::size_t ii = 0; ii < n1; ++ii)
        m(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(j * n1 + ii)) +=
            d * (ta.entry(i, ii) + ta.entry(ii, i));
      for (std::size_t jj = 0; jj < n2; ++jj)
        m(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(jj * n1 + i)) +=
            e * s_over_r * (tb.entry(j, jj) + tb.entry(jj, j));
    }
  return m;
}

// Same matrix in sparse form; avoids the dense footprint for larger grids.
sparse::Csr constant_symbol_csr(double alpha, double beta, double d, double e,
                                double s_over_r, double inv_r, std::size_t n1,
                                std::size_t n2) {
  const ToeplitzBlock ta = ToeplitzBlock::fractional(alpha, n1);
  const ToeplitzBlock tb = ToeplitzBlock::fractional(beta, n2);
  std::vector<sparse::Triplet> trips;
  trips.reserve(n1 * n2 * (n1 + n2 + 1));
  for (std::size_t j = 0; j < n2; ++j)
    for (std::size_t i = 0; i < n1; ++i) {
      const auto p = static_cast<std::uint32_t>(j * n1 + i);
      trips.push_back({p, p, inv_r});
      for (std::size_t ii = 0; ii < n1; ++ii) {
        const double v = d * (ta.entry(i, ii) + ta.entry(ii, i));
        if (v != 0.0)
          trips.push_back({p, static_cast<std::uint32_t>(j * n1 + ii), v});
      }
      for (std::size_t jj = 0; jj < n2; ++jj) {
        const double v = e * s_over_r * (tb.entry(j, jj) + tb.entry(jj, j));
        if (v != 0.0)
          trips.push_back({p, static_cast<std::uint32_t>(jj * n1 + i), v});
      }
    }
  return sparse::Csr::from_triplets(n1 * n2, n1 * n2, trips);
}

// Two-sample Kolmogorov-Smirnov statistic.
double ecdf_distance(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double dist = 0.0;
  while (i < a.size() && j < b.size()) {
    if (a[i] <= b[j])
      ++i;
    else
      ++j;
    dist = std::max(dist, std::fabs(static_cast<double>(i) / na -
                                    static_cast<double>(j) / nb));
  }
  return dist;
}

std::vector<double> random_vector(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = dist(rng);
  return v;
}

double nrm2(const std::vector<double>& v) {
  return kernels::nrm2(v.size(), v.data());
}

} // namespace

SuiteResult run_weights_suite(std::uint64_t seed) {
  (void)seed;
  SuiteResult res;
  res.suite = "weights";

  {
    Check c;
    c.name = "weight-inequalities";
    std::size_t total = 0;
    for (int i = 1; i <= 20; ++i) {
      const double gamma = 1.0 + 0.05 * i;
      total += weight_invariant_failures(wsgd_weights(gamma, 10000)).size();
    }
    c.pass = total == 0;
    c.detail = "20 orders in (1,2], K=10000, violations=" + std::to_string(total);
    res.checks.push_back(c);
  }

  {
    Check c;
    c.name = "binom-closed-form";
    double worst = 0.0;
    for (double gamma : {1.3, 1.5, 1.8}) {
      const WeightTable& t = wsgd_weights(gamma, 64);
      for (std::size_t k = 0; k <= 64; ++k) {
        const double ref = (k % 2 == 0 ? 1.0 : -1.0) * binom_lgamma(gamma, k);
        const double den = std::max(std::fabs(ref), 1e-30);
        worst = std::max(worst, std::fabs(t.g[k] - ref) / den);
      }
    }
    c.pass = worst <= 1e-10;
    c.detail = "max rel diff vs log-gamma oracle " + fmt(worst);
    res.checks.push_back(c);
  }

  {
    Check c;
    c.name = "hand-values";
    const WeightTable& t15 = wsgd_weights(1.5, 4);
    const WeightTable& t18 = wsgd_weights(1.8, 2);
    const WeightTable& t20 = wsgd_weights(2.0, 3);
    double worst = 0.0;
    worst = std::max(worst, std::fabs(t15.w[0] - 0.75));
    worst = std::max(worst, std::fabs(t15.w[1] + 0.875));
    worst = std::max(worst, std::fabs(t15.w[2] + 0.09375));
    worst = std::max(worst, std::fabs(t18.w[1] + 1.52));
    worst = std::max(worst, std::fabs(t20.g[0] - 1.0));
    worst = std::max(worst, std::fabs(t20.g[1] + 2.0));
    worst = std::max(worst, std::fabs(t20.g[2] - 1.0));
    worst = std::max(worst, std::fabs(t20.g[3]));
    c.pass = worst <= 1e-14;
    c.detail = "max abs diff vs pinned values " + fmt(worst);
    res.checks.push_back(c);
  }

  {
    Check c;
    c.name = "m-matrix-threshold";
    const double thr = m_matrix_threshold();
    const double ref = (-1.0 + std::sqrt(17.0)) / 2.0;
    const bool regime_hi = is_m_matrix_regime(1.8, 1.9);
    const bool regime_lo = is_m_matrix_regime(1.5, 1.8);
    c.pass = std::fabs(thr - ref) <= 1e-12 && regime_hi && !regime_lo;
    c.detail = "threshold=" + fmt(thr) + " regime(1.8,1.9)=" +
               std::to_string(regime_hi) + " regime(1.5,1.8)=" +
               std::to_string(regime_lo);
    res.checks.push_back(c);
  }

  return res;
}

SuiteResult run_symbols_suite(std::uint64_t seed) {
  SuiteResult res;
  res.suite = "symbols";
  std::mt19937_64 rng(seed ^ 0x73796d626f6cULL);

  {
    Check c;
    c.name = "f-series-agreement";
    const std::size_t terms = 100000;
    double worst = 0.0;
    for (double gamma : {1.2, 1.5, 1.8}) {
      const WeightTable& t = wsgd_weights(gamma, terms);
      for (int p = 0; p < 64; ++p) {
        const double xi = -kPi + (2.0 * kPi) * (p + 0.5) / 64.0;
        const std::complex<double> rot(std::cos(xi), std::sin(xi));
        std::complex<double> phase = std::conj(rot); // e^{i(k-1)xi} at k=0
        std::complex<double> acc(0.0, 0.0);
        for (std::size_t k = 0; k <= terms; ++k) {
          acc -= t.w[k] * phase;
          phase *= rot;
        }
        worst = std::max(worst, std::abs(eval_f_gamma(gamma, xi) - acc));
      }
    }
    c.pass = worst <= 1e-6;
    c.detail = "max |closed - series(K=1e5)| " + fmt(worst);
    res.checks.push_back(c);
  }

  {
    Check c;
    c.name = "f-at-pi";
    double worst = 0.0;
    for (double gamma : {1.1, 1.4, 1.7, 2.0}) {
      const std::complex<double> v = eval_f_gamma(gamma, kPi);
      const double ref = (gamma - 1.0) * std::pow(2.0, gamma);
      worst = std::max(worst, std::abs(v - std::complex<double>(ref, 0.0)));
    }
    c.pass = worst <= 1e-12;
    c.detail = "max |f(pi) - (gamma-1)2^gamma| " + fmt(worst);
    res.checks.push_back(c);
  }

  {
    Check c;
    c.name = "q-even-nonneg";
    std::uniform_real_distribution<double> u(-kPi, kPi);
    double min_q = 0.0;
    double worst_parity = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
      const double xi = u(rng);
      const double gamma = 1.0 + 0.999 * std::uniform_real_distribution<double>(0.0, 1.0)(rng);
      const double qa = eval_q_gamma(gamma, xi);
      const double qb = eval_q_gamma(gamma, -xi);
      min_q = std::min(min_q, qa);
      worst_parity = std::max(worst_parity, std::fabs(qa - qb));
    }
    c.pass = min_q >= -1e-12 && worst_parity <= 1e-12;
    c.detail = "min q " + fmt(min_q) + ", max |q(x)-q(-x)| " + fmt(worst_parity);
    res.checks.push_back(c);
  }

  {
    Check c;
    c.name = "q-zero-order";
    bool ok = true;
    double worst_rel = 0.0;
    for (double gamma : {1.2, 1.5, 1.8, 2.0}) {
      const double lim = -2.0 * std::cos(gamma * kPi / 2.0);
      double last = 0.0;
      for (double xi : {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6}) {
        const double ratio = eval_q_gamma(gamma, xi) / std::pow(xi, gamma);
        ok = ok && ratio >= 0.5 * lim && ratio <= 2.0 * lim;
        last = ratio;
      }
      worst_rel = std::max(worst_rel, std::fabs(last / lim - 1.0));
    }
    c.pass = ok && worst_rel <= 1e-2;
    c.detail = "bracket ok=" + std::to_string(ok) + ", rel err at 1e-6: " + fmt(worst_rel);
    res.checks.push_back(c);
  }

  {
    Check c;
    c.name = "F-nonneg-sup";
    const double alpha = 1.8;
    const double beta = 1.6;
    const double d = 0.7;
    const double e = 1.3;
    const double sr = 0.85;
    double lo = 1e300;
    double hi = -1e300;
    for (int i = 0; i <= 256; ++i)
      for (int j = 0; j <= 256; ++j) {
        const double x = -kPi + 2.0 * kPi * i / 256.0;
        const double y = -kPi + 2.0 * kPi * j / 256.0;
        const double v = eval_F(alpha, beta, d, e, sr, x, y);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
    const double bound = d * (alpha - 1.0) * std::pow(2.0, alpha + 1.0) +
                         e * sr * (beta - 1.0) * std::pow(2.0, beta + 1.0);
    c.pass = lo >= -1e-12 && hi <= bound + 1e-10;
    c.detail = "min " + fmt(lo) + ", max " + fmt(hi) + ", bound " + fmt(bound);
    res.checks.push_back(c);
  }

  {
    Check c;
    c.name = "projector-decay";
    // Squared-ratio condition vanishes fast enough to pass the pinned
    // threshold at every order; the plain-ratio condition decays like
    // rho^(2-gamma), so the threshold is only reachable at moderate orders
    // and the higher ones are held to monotone decay along every ray.
    bool ok = true;
    std::string why;
    for (auto [alpha, beta] : {std::pair{1.8, 1.6}, std::pair{1.5, 1.5}, std::pair{1.9, 1.2}}) {
      const LimitCheckReport rep =
          check_projector_condition(alpha, beta, 1.0, 1.0, 1.0, ProjectorMode::tgm);
      if (!rep.verdict) {
        ok = false;
        why = "tgm threshold missed at (" + fmt(alpha) + "," + fmt(beta) + ")";
      }
    }
    {
      const LimitCheckReport rep =
          check_projector_condition(1.5, 1.5, 1.0, 1.0, 1.0, ProjectorMode::vcycle);
      if (!rep.verdict) {
        ok = false;
        why = "vcycle threshold missed at (1.5,1.5)";
      }
    }
    for (auto [alpha, beta] : {std::pair{1.8, 1.6}, std::pair{1.9, 1.2}}) {
      const LimitCheckReport rep =
          check_projector_condition(alpha, beta, 1.0, 1.0, 1.0, ProjectorMode::vcycle);
      for (const std::vector<double>& row : rep.ratio_values) {
        for (std::size_t m = 0; m + 1 < row.size(); ++m)
          if (row[m + 1] > row[m] * (1.0 + 1e-9) + 1e-300) ok = false;
        if (row.front() > 0.0 && row.back() > 0.5 * row.front()) ok = false;
      }
      if (!ok && why.empty())
        why = "vcycle ratios not decaying at (" + fmt(alpha) + "," + fmt(beta) + ")";
    }
    c.pass = ok;
    c.detail = ok ? "tgm below threshold, vcycle ratios decay on every ray" : why;
    res.checks.push_back(c);
  }

  {
    Check c;
    c.name = "h-over-F-limit";
    bool ok = true;
    double worst = 0.0;
    {
      CoeffFns f;
      f.d_plus = [](double, double) { return 1.0; };
      f.d_minus = [](double, double) { return 1.0; };
      f.e_plus = [](double, double) { return 1.0; };
      f.e_minus = [](double, double) { return 1.0; };
      const LimitCheckReport rep =
          check_limsup_ratio_h_over_F(1.8, 1.6, f, 1.0, 1.0, 1.0, {0.5, 0.5});
      ok = ok && rep.verdict;
      worst = std::max(worst, std::abs(rep.estimate - rep.target));
    }
    {
      CoeffFns f;
      f.d_plus = [](double, double) { return 1.0; };
      f.d_minus = [](double, double) { return 1.0; };
      f.e_plus = [](double, double) { return 2.0; };
      f.e_minus = [](double, double) { return 0.5; };
      const LimitCheckReport rep =
          check_limsup_ratio_h_over_F(1.8, 1.6, f, 1.0, 1.25, 1.0, {0.5, 0.5});
      ok = ok && rep.verdict;
      worst = std::max(worst, std::abs(rep.estimate - rep.target));
    }
    c.pass = ok;
    c.detail = "max |estimate - closed form| " + fmt(worst);
    res.checks.push_back(c);
  }

  return res;
}

SuiteResult run_distribution_suite(std::uint64_t seed) {
  (void)seed;
  SuiteResult res;
  res.suite = "distribution";

  Check c;
  c.name = "ecdf-converges";
  const double alpha = 1.8;
  const double beta = 1.6;
  std::vector<double> dists;
  for (std::size_t n : {std::size_t{8}, std::size_t{16}, std::size_t{32}}) {
    auto eig1d = [&](double gamma) {
      const ToeplitzBlock t = ToeplitzBlock::fractional(gamma, n);
      Eigen::MatrixXd m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
              t.entry(i, j) + t.entry(j, i);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
      if (es.info() != Eigen::Success) throw std::runtime_error("eigensolve failed");
      return std::vector<double>(es.eigenvalues().data(), es.eigenvalues().data() + n);
    };
    const std::vector<double> la = eig1d(alpha);
    const std::vector<double> lb = eig1d(beta);
    std::vector<double> eigs;
    eigs.reserve(n * n);
    for (double a : la)
      for (double b : lb) eigs.push_back(a + b);
    std::vector<double> samples;
    samples.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const double x = -kPi + 2.0 * kPi * (static_cast<double>(i) + 0.5) / static_cast<double>(n);
        const double y = -kPi + 2.0 * kPi * (static_cast<double>(j) + 0.5) / static_cast<double>(n);
        samples.push_back(eval_F(alpha, beta, 1.0, 1.0, 1.0, x, y));
      }
    dists.push_back(ecdf_distance(std::move(eigs), std::move(samples)));
  }
  c.pass = dists[1] < dists[0] && dists[2] < dists[1];
  c.detail = "KS distances n=8,16,32: " + fmt(dists[0]) + ", " + fmt(dists[1]) +
             ", " + fmt(dists[2]);
  res.checks.push_back(c);

  return res;
}

SuiteResult run_tgm_suite(std::uint64_t seed) {
  SuiteResult res;
  res.suite = "tgm";
  std::mt19937_64 rng(seed ^ 0x74676dULL);

  {
    Check c;
    c.name = "tgm-theory-laplace";
    const Eigen::MatrixXd a = constant_symbol_dense(2.0, 2.0, 1.0, 1.0, 1.0, 0.0, 15, 15);
    const mg::GridTransfer tr(15, 15);
    const double omega = mg::smoothing_bound_omega(2.0, 2.0, 1.0, 1.0, 1.0, 0.0);
    const mg::TgmVerificationReport rep = mg::verify_tgm_theory(a, tr, omega, 1, 20, rng());
    const double worst = *std::max_element(rep.contraction_estimates.begin(),
                                           rep.contraction_estimates.end());
    c.pass = rep.ok && rep.delta_est > 0.0;
    c.detail = "delta=" + fmt(rep.delta_est) + " xi=" + fmt(rep.xi_est) +
               " bound=" + fmt(rep.bound) + " worst=" + fmt(worst);
    res.checks.push_back(c);
  }

  {
    Check c;
    c.name = "tgm-theory-fractional";
    const Eigen::MatrixXd a = constant_symbol_dense(1.8, 1.6, 1.0, 1.0, 1.0, 0.0, 15, 15);
    const mg::GridTransfer tr(15, 15);
    const double omega = mg::smoothing_bound_omega(1.8, 1.6, 1.0, 1.0, 1.0, 0.0);
    const mg::TgmVerificationReport rep = mg::verify_tgm_theory(a, tr, omega, 1, 20, rng());
    const double worst = *std::max_element(rep.contraction_estimates.begin(),
                                           rep.contraction_estimates.end());
    c.pass = rep.ok && rep.delta_est > 0.0;
    c.detail = "delta=" + fmt(rep.delta_est) + " xi=" + fmt(rep.xi_est) +
               " bound=" + fmt(rep.bound) + " worst=" + fmt(worst);
    res.checks.push_back(c);
  }

  {
    Check c;
    c.name = "smoother-anorm-monotone";
    const std::size_t n = 16;
    const sparse::Csr a = constant_symbol_csr(1.8, 1.6, 1.0, 1.0, 1.0, 0.5, n, n);
    const auto op = std::make_shared<sparse::CsrOp>(a);
    const double omega = mg::smoothing_bound_omega(1.8, 1.6, 1.0, 1.0, 1.0, 0.5);
    const std::size_t sz = op->size();
    std::vector<double> x(sz);
    std::vector<double> ax(sz);
    const std::vector<double> b(sz, 0.0);
    double worst_growth = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      x = random_vector(sz, rng);
      op->apply(x.data(), ax.data());
      const double before = kernels::dot(sz, x.data(), ax.data());
      mg::jacobi_sweep(*op, omega, b.data(), x.data());
      op->apply(x.data(), ax.data());
      const double after = kernels::dot(sz, x.data(), ax.data());
      worst_growth = std::max(worst_growth, after - before * (1.0 + 1e-12));
    }
    c.pass = worst_growth <= 0.0;
    c.detail = "max A-norm^2 growth over 100 starts " + fmt(worst_growth);
    res.checks.push_back(c);
  }

  {
    Check c;
    c.name = "tgm-anorm-monotone";
    const std::size_t n = 15;
    const sparse::Csr a = constant_symbol_csr(1.8, 1.6, 1.0, 1.0, 1.0, 0.5, n, n);
    const auto op = std::make_shared<sparse::CsrOp>(a);
    const double omega = mg::smoothing_bound_omega(1.8, 1.6, 1.0, 1.0, 1.0, 0.5);
    mg::TwoGrid tg(op, n, n, omega, 1);
    const std::size_t sz = op->size();
    const std::vector<double> b(sz, 0.0);
    std::vector<double> ax(sz);
    double worst_ratio = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<double> x = random_vector(sz, rng);
      op->apply(x.data(), ax.data());
      const double before = kernels::dot(sz, x.data(), ax.data());
      tg.iterate(b.data(), x.data());
      op->apply(x.data(), ax.data());
      const double after = kernels::dot(sz, x.data(), ax.data());
      worst_ratio = std::max(worst_ratio, after / before);
    }
    c.pass = worst_ratio <= 1.0 + 1e-10;
    c.detail = "max error A-norm^2 ratio over 100 starts " + fmt(worst_ratio);
    res.checks.push_back(c);
  }

  {
    Check c;
    c.name = "tgm-contraction-stable";
    std::vector<double> factors;
    for (std::size_t n : {std::size_t{15}, std::size_t{31}, std::size_t{63}}) {
      const sparse::Csr a = constant_symbol_csr(1.8, 1.6, 1.0, 1.0, 1.0, 0.5, n, n);
      const auto op = std::make_shared<sparse::CsrOp>(a);
      const double omega = mg::smoothing_bound_omega(1.8, 1.6, 1.0, 1.0, 1.0, 0.5);
      mg::TwoGrid tg(op, n, n, omega, 1);
      const std::size_t sz = op->size();
      const std::vector<double> b(sz, 0.0);
      std::vector<double> x = random_vector(sz, rng);
      double prev = nrm2(x);
      double factor = 0.0;
      for (int it = 0; it < 6; ++it) {
        tg.iterate(b.data(), x.data());
        const double cur = nrm2(x);
        if (it >= 2) factor = std::max(factor, cur / prev);
        prev = cur;
      }
      factors.push_back(factor);
    }
    const double spread = *std::max_element(factors.begin(), factors.end()) -
                          *std::min_element(factors.begin(), factors.end());
    c.pass = spread < 0.1 && *std::max_element(factors.begin(), factors.end()) < 1.0;
    c.detail = "factors n=15,31,63: " + fmt(factors[0]) + ", " + fmt(factors[1]) +
               ", " + fmt(factors[2]);
    res.checks.push_back(c);
  }

  {
    Check c;
    c.name = "tgm-step-operator";
    const FdeProblem prob = make_example(1, 1.8, 1.6);
    const Grid grid(prob, 15, 15, 15);
    const auto op = std::make_shared<StructuredFdeOperator>(
        assemble_step_operator(prob, grid, 1));
    mg::TwoGrid tg(op, 15, 15, 0.9, 1);
    const std::size_t sz = op->size();
    const std::vector<double> b = random_vector(sz, rng);
    std::vector<double> x(sz, 0.0);
    tg.iterate(b.data(), x.data());
    std::vector<double> r(sz);
    op->apply(x.data(), r.data());
    kernels::sub(sz, b.data(), r.data(), r.data());
    const double ratio = nrm2(r) / nrm2(b);
    c.pass = ratio <= 0.5;
    c.detail = "one iteration residual ratio " + fmt(ratio);
    res.checks.push_back(c);
  }

  {
    Check c;
    c.name = "vcycle-laplace";
    const std::size_t n = 63;
    const sparse::Csr a = constant_symbol_csr(2.0, 2.0, 1.0, 1.0, 1.0, 0.0, n, n);
    const mg::MgHierarchy h =
        mg::build_galerkin_hierarchy(a, n, n, 0.9);
    const std::size_t sz = n * n;
    const std::vector<double> b = random_vector(sz, rng);
    std::vector<double> x(sz, 0.0);
    std::vector<double> r(sz);
    const auto resid = [&] {
      h.level(0).op->apply(x.data(), r.data());
      kernels::sub(sz, b.data(), r.data(), r.data());
      return nrm2(r);
    };
    double prev = resid();
    double factor = 0.0;
    for (int it = 0; it < 8; ++it) {
      h.vcycle(b.data(), x.data());
      const double cur = resid();
      if (it >= 3) factor = std::max(factor, cur / prev);
      prev = cur;
    }
    // omega = 0.9 leaves the top Jacobi eigenvalue at |1 - 2 omega| = 0.8, so
    // the V(1,1) factor sits near 0.64; anything <= 0.7 means the cycle works.
    c.pass = factor <= 0.7;
    c.detail = "asymptotic per-cycle residual factor " + fmt(factor);
    res.checks.push_back(c);
  }

  {
    Check c;
    c.name = "vcycle-step-stability";
    bool ok = true;
    std::string detail;
    for (int which : {1, 2, 3}) {
      const FdeProblem prob = make_example(which, 1.8, which == 1 ? 1.6 : 1.9);
      std::vector<double> factors;
      for (std::size_t n : {std::size_t{31}, std::size_t{63}}) {
        const Grid grid(prob, n, n, n);
        const auto op = std::make_shared<StructuredFdeOperator>(
            assemble_step_operator(prob, grid, 1));
        const mg::MgHierarchy h = mg::build_geometric_hierarchy(prob, grid, 1, 0.9);
        const std::size_t sz = op->size();
        const std::vector<double> b = random_vector(sz, rng);
        std::vector<double> x(sz, 0.0);
        std::vector<double> r(sz);
        const auto resid = [&] {
          op->apply(x.data(), r.data());
          kernels::sub(sz, b.data(), r.data(), r.data());
          return nrm2(r);
        };
        double prev = resid();
        double factor = 0.0;
        for (int it = 0; it < 6; ++it) {
          h.vcycle(b.data(), x.data());
          const double cur = resid();
          if (it >= 2) factor = std::max(factor, cur / prev);
          prev = cur;
        }
        factors.push_back(factor);
      }
      ok = ok && std::fabs(factors[0] - factors[1]) < 0.1 && factors[0] < 1.0 &&
           factors[1] < 1.0;
      detail += (detail.empty() ? "" : "; ") + std::to_string(which) + ": " +
                fmt(factors[0]) + "/" + fmt(factors[1]);
    }
    c.pass = ok;
    c.detail = "per-problem factors n=31/63: " + detail;
    res.checks.push_back(c);
  }

  return res;
}

std::vector<SuiteResult> run_suites(const std::string& which,
                                    std::uint64_t seed) {
  std::vector<SuiteResult> out;
  const bool all = which == "all";
  if (all || which == "weights") out.push_back(run_weights_suite(seed));
  if (all || which == "symbols") out.push_back(run_symbols_suite(seed));
  if (all || which == "distribution") out.push_back(run_distribution_suite(seed));
  if (all || which == "tgm") out.push_back(run_tgm_suite(seed));
  if (out.empty()) throw std::invalid_argument("unknown verification suite: " + which);
  return out;
}

} // namespace fde::verify
