#include "fde/krylov.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>

#include "fde/kernels.hpp"

namespace fde {
namespace {

void precondition(const Precond* m, std::size_t n, const double* r, double* z) {
  if (m)
    m->apply(r, z);
  else
    std::memcpy(z, r, n * sizeof(double));
}

// y solving the leading (k x k) upper-triangular system of h against g.
std::vector<double> back_substitute(const std::vector<double>& h,
                                    std::size_t ld, const std::vector<double>& g,
                                    std::size_t k) {
  std::vector<double> y(k, 0.0);
  for (std::size_t i = k; i-- > 0;) {
    double v = g[i];
    for (std::size_t j = i + 1; j < k; ++j) v -= h[j * ld + i] * y[j];
    y[i] = h[i * ld + i] != 0.0 ? v / h[i * ld + i] : 0.0;
  }
  return y;
}

} // namespace

KrylovResult gmres(const LinOp& a, const SolverConfig& cfg,
                   const std::vector<double>& b, const std::vector<double>& x0) {
  const std::size_t n = a.size();
  if (b.size() != n) throw std::invalid_argument("rhs size mismatch");
  if (!x0.empty() && x0.size() != n)
    throw std::invalid_argument("initial guess size mismatch");
  if (cfg.restart == 0 || !(cfg.tol > 0.0))
    throw std::invalid_argument("invalid solver configuration");
  const Precond* m = cfg.preconditioner;
  const std::size_t rst = cfg.restart;

  KrylovResult res;
  res.solution = x0.empty() ? std::vector<double>(n, 0.0) : x0;
  double* x = res.solution.data();

  std::vector<double> t(n), r(n), z(n), w(n);
  precondition(m, n, b.data(), z.data());
  const double norm_b = kernels::nrm2(n, z.data());
  if (norm_b == 0.0) {
    std::fill(res.solution.begin(), res.solution.end(), 0.0);
    res.converged = true;
    res.residual_history.push_back(0.0);
    return res;
  }

  const auto true_rel = [&]() {
    a.apply(x, t.data());
    kernels::sub(n, b.data(), t.data(), r.data());
    precondition(m, n, r.data(), z.data());
    return kernels::nrm2(n, z.data()) / norm_b;
  };

  std::vector<std::vector<double>> v(rst + 1, std::vector<double>(n));
  const std::size_t ld = rst + 1;
  std::vector<double> h(ld * rst), g(ld), cs(rst), sn(rst), y;

  for (std::size_t outer = 0; outer < cfg.max_outer && !res.converged; ++outer) {
    a.apply(x, t.data());
    kernels::sub(n, b.data(), t.data(), r.data());
    precondition(m, n, r.data(), z.data());
    const double beta = kernels::nrm2(n, z.data());
    const double rel0 = beta / norm_b;
    if (outer == 0) res.residual_history.push_back(rel0);
    if (rel0 <= cfg.tol) {
      res.converged = true;
      break;
    }

    std::fill(g.begin(), g.end(), 0.0);
    g[0] = beta;
    kernels::scal(n, 1.0 / beta, z.data());
    v[0] = z;

    std::size_t spanned = 0;
    bool cycle_done = false;
    for (std::size_t i = 0; i < rst && !cycle_done; ++i) {
      a.apply(v[i].data(), t.data());
      precondition(m, n, t.data(), w.data());
      const double norm0 = kernels::nrm2(n, w.data());
      for (std::size_t k = 0; k <= i; ++k) {
        const double hk = kernels::dot(n, v[k].data(), w.data());
        kernels::axpy(n, -hk, v[k].data(), w.data());
        h[i * ld + k] = hk;
      }
      if (kernels::nrm2(n, w.data()) < 1e-8 * norm0) {
        for (std::size_t k = 0; k <= i; ++k) {
          const double c = kernels::dot(n, v[k].data(), w.data());
          kernels::axpy(n, -c, v[k].data(), w.data());
          h[i * ld + k] += c;
        }
      }
      const double hip = kernels::nrm2(n, w.data());
      const bool happy = hip <= 1e-14 * (norm0 > 0.0 ? norm0 : 1.0);

      // fold previous rotations into the new column, then add one more
      for (std::size_t k = 0; k + 1 <= i; ++k) {
        const double tmp = cs[k] * h[i * ld + k] + sn[k] * h[i * ld + k + 1];
        h[i * ld + k + 1] =
            -sn[k] * h[i * ld + k] + cs[k] * h[i * ld + k + 1];
        h[i * ld + k] = tmp;
      }
      const double denom = std::hypot(h[i * ld + i], hip);
      cs[i] = denom > 0.0 ? h[i * ld + i] / denom : 1.0;
      sn[i] = denom > 0.0 ? hip / denom : 0.0;
      h[i * ld + i] = denom;
      g[i + 1] = -sn[i] * g[i];
      g[i] = cs[i] * g[i];

      ++res.total_iterations;
      spanned = i + 1;
      const double est = std::fabs(g[i + 1]) / norm_b;
      res.residual_history.push_back(est);

      if (!happy) {
        v[i + 1] = w;
        kernels::scal(n, 1.0 / hip, v[i + 1].data());
      }

      if (est <= cfg.tol || happy) {
        // verify the estimate before accepting it
        y = back_substitute(h, ld, g, spanned);
        std::vector<double> trial(res.solution);
        for (std::size_t k = 0; k < spanned; ++k)
          kernels::axpy(n, y[k], v[k].data(), trial.data());
        std::swap(res.solution, trial);
        x = res.solution.data();
        if (true_rel() <= cfg.tol) {
          res.converged = true;
          cycle_done = true;
        } else if (happy) {
          cycle_done = true; // cannot extend the space; restart outer
        } else {
          std::swap(res.solution, trial); // estimate lied: keep iterating
          x = res.solution.data();
        }
      }
    }

    if (!res.converged && !cycle_done) {
      y = back_substitute(h, ld, g, spanned);
      for (std::size_t k = 0; k < spanned; ++k)
        kernels::axpy(n, y[k], v[k].data(), x);
    }
  }

  const double final_rel = true_rel();
  if (final_rel <= cfg.tol) res.converged = true;
  if (res.residual_history.empty())
    res.residual_history.push_back(final_rel);
  else
    res.residual_history.back() = final_rel;
  return res;
}

} // namespace fde
