#include "fde/problem.hpp"

#include <cmath>
#include <stdexcept>

namespace fde {

double EndPolynomial::value(double xi) const {
  double acc = 0.0;
  for (std::size_t p = c.size(); p-- > 0;) acc = acc * xi + c[p];
  return acc;
}

double EndPolynomial::frac_deriv(double gamma, double xi) const {
  double acc = 0.0;
  for (std::size_t p = 0; p < c.size(); ++p) {
    if (c[p] == 0.0) continue;
    const double q = static_cast<double>(p) + 1.0 - gamma;
    if (q <= 0.0 && std::fabs(q - std::nearbyint(q)) < 1e-12)
      continue; // 1/Gamma pole, term vanishes
    acc += c[p] * std::tgamma(static_cast<double>(p) + 1.0) / std::tgamma(q) *
           std::pow(xi, q - 1.0);
  }
  return acc;
}

Grid::Grid(const FdeProblem& p, std::size_t n1_, std::size_t n2_,
           std::size_t steps_) {
  if (n1_ == 0 || n2_ == 0 || steps_ == 0)
    throw std::invalid_argument("grid needs n1, n2, steps >= 1");
  if (!(p.bx > p.ax) || !(p.by > p.ay) || !(p.t_final > 0.0))
    throw std::invalid_argument("degenerate domain");
  n1 = n1_;
  n2 = n2_;
  steps = steps_;
  ax = p.ax;
  bx = p.bx;
  ay = p.ay;
  by = p.by;
  t_final = p.t_final;
  hx = (bx - ax) / static_cast<double>(n1 + 1);
  hy = (by - ay) / static_cast<double>(n2 + 1);
  dt = t_final / static_cast<double>(steps);
  r = dt / (2.0 * std::pow(hx, p.alpha));
  s = dt / (2.0 * std::pow(hy, p.beta));
  inv_r = 1.0 / r;
  s_over_r = s / r;
}

StructuredFdeOperator assemble_step_operator(const FdeProblem& p, const Grid& g,
                                             std::size_t m) {
  const double t = static_cast<double>(m) * g.dt;
  const std::size_t n = g.size();
  std::vector<double> dp(n), dm(n), ep(n), em(n);
  for (std::size_t j = 0; j < g.n2; ++j) {
    const double y = g.y(j);
    for (std::size_t i = 0; i < g.n1; ++i) {
      const double x = g.x(i);
      const std::size_t q = i + j * g.n1;
      dp[q] = p.d_plus(x, y, t);
      dm[q] = p.d_minus(x, y, t);
      ep[q] = p.e_plus(x, y, t);
      em[q] = p.e_minus(x, y, t);
    }
  }
  return StructuredFdeOperator(g.n1, g.n2, g.inv_r, g.s_over_r,
                               ToeplitzBlock::fractional(p.alpha, g.n1),
                               ToeplitzBlock::fractional(p.beta, g.n2),
                               std::move(dp), std::move(dm), std::move(ep),
                               std::move(em));
}

std::vector<double> assemble_rhs(const FdeProblem& p, const Grid& g,
                                 std::size_t m, const std::vector<double>& u_prev,
                                 const StructuredFdeOperator& op_prev) {
  if (m == 0) throw std::invalid_argument("step index starts at 1");
  if (u_prev.size() != g.size())
    throw std::invalid_argument("previous level size mismatch");
  std::vector<double> b(g.size());
  op_prev.apply_rhs(u_prev.data(), b.data());
  const double t_half = (static_cast<double>(m) - 0.5) * g.dt;
  const double scale = 2.0 * std::pow(g.hx, p.alpha);
  for (std::size_t j = 0; j < g.n2; ++j) {
    const double y = g.y(j);
    for (std::size_t i = 0; i < g.n1; ++i)
      b[i + j * g.n1] += scale * p.source(g.x(i), y, t_half);
  }
  return b;
}

std::vector<double> assemble_rhs(const FdeProblem& p, const Grid& g,
                                 std::size_t m,
                                 const std::vector<double>& u_prev) {
  if (m == 0) throw std::invalid_argument("step index starts at 1");
  return assemble_rhs(p, g, m, u_prev, assemble_step_operator(p, g, m - 1));
}

std::vector<double> sample_initial(const FdeProblem& p, const Grid& g) {
  std::vector<double> u(g.size());
  for (std::size_t j = 0; j < g.n2; ++j)
    for (std::size_t i = 0; i < g.n1; ++i)
      u[i + j * g.n1] = p.initial(g.x(i), g.y(j));
  return u;
}

std::vector<double> sample_exact(const FdeProblem& p, const Grid& g, double t) {
  if (!p.exact) throw std::invalid_argument("problem has no exact solution");
  std::vector<double> u(g.size());
  for (std::size_t j = 0; j < g.n2; ++j)
    for (std::size_t i = 0; i < g.n1; ++i)
      u[i + j * g.n1] = p.exact(g.x(i), g.y(j), t);
  return u;
}

double error_inf(const std::vector<double>& u, const FdeProblem& p,
                 const Grid& g, double t) {
  if (u.size() != g.size()) throw std::invalid_argument("size mismatch");
  const std::vector<double> ref = sample_exact(p, g, t);
  double e = 0.0;
  for (std::size_t q = 0; q < u.size(); ++q)
    e = std::max(e, std::fabs(u[q] - ref[q]));
  return e;
}

namespace {

// Shared machinery for the manufactured problems: separable solution
// amp e^{-t} X(x) Y(y) with X, Y end polynomials vanishing at both ends of
// their interval, one per direction.
FdeProblem make_separable(int index, std::string name, double alpha, double beta,
                          double ax, double bx, double ay, double by, double amp,
                          EndPolynomial px, EndPolynomial py) {
  FdeProblem p;
  p.name = std::move(name);
  p.index = index;
  p.alpha = alpha;
  p.beta = beta;
  p.ax = ax;
  p.bx = bx;
  p.ay = ay;
  p.by = by;
  p.t_final = 1.0;
  p.exact = [amp, px, py, ax, ay](double x, double y, double t) {
    return amp * std::exp(-t) * px.value(x - ax) * py.value(y - ay);
  };
  p.initial = [amp, px, py, ax, ay](double x, double y) {
    return amp * px.value(x - ax) * py.value(y - ay);
  };
  return p;
}

// v = u_t - d+ Dl_x u - d- Dr_x u - e+ Dl_y u - e- Dr_y u for the separable
// solution above; the fractional factors come from the end polynomials.
void attach_source(FdeProblem& p, double amp, const EndPolynomial& px,
                   const EndPolynomial& py) {
  const double alpha = p.alpha, beta = p.beta;
  const double ax = p.ax, bx = p.bx, ay = p.ay, by = p.by;
  const auto dp = p.d_plus, dm = p.d_minus, ep = p.e_plus, em = p.e_minus;
  p.source = [amp, px, py, alpha, beta, ax, bx, ay, by, dp, dm, ep,
              em](double x, double y, double t) {
    const double pref = amp * std::exp(-t);
    const double vx = px.value(x - ax), vy = py.value(y - ay);
    const double u = pref * vx * vy;
    const double dx = dp(x, y, t) * px.frac_deriv(alpha, x - ax) +
                      dm(x, y, t) * px.frac_deriv(alpha, bx - x);
    const double dy = ep(x, y, t) * py.frac_deriv(beta, y - ay) +
                      em(x, y, t) * py.frac_deriv(beta, by - y);
    return -u - pref * (dx * vy + vx * dy);
  };
}

EndPolynomial quartic_profile(double len) { // xi^2 (len - xi)^2
  return EndPolynomial{{0.0, 0.0, len * len, -2.0 * len, 1.0}};
}

EndPolynomial sextic_profile(double len) { // xi^3 (len - xi)^3
  return EndPolynomial{
      {0.0, 0.0, 0.0, len * len * len, -3.0 * len * len, 3.0 * len, -1.0}};
}

} // namespace

FdeProblem make_example_on(int which, double alpha, double beta, double ax,
                           double bx, double ay, double by) {
  if (which < 1 || which > 3) throw std::invalid_argument("example index must be 1..3");
  if (!(alpha > 1.0 && alpha <= 2.0 && beta > 1.0 && beta <= 2.0))
    throw std::invalid_argument("fractional orders must lie in (1, 2]");
  if (!(bx > ax) || !(by > ay)) throw std::invalid_argument("degenerate domain");

  if (which == 1) {
    // Quartic profile, smooth space-dependent coefficients.
    EndPolynomial px = quartic_profile(bx - ax);
    EndPolynomial py = quartic_profile(by - ay);
    FdeProblem p = make_separable(1, "example-1", alpha, beta, ax, bx, ay, by,
                                  16.0, px, py);
    const double ga = std::tgamma(3.0 - alpha);
    const double gb = std::tgamma(3.0 - beta);
    p.d_plus = [ga, alpha, ax, ay](double x, double y, double) {
      return ga * std::pow(1.0 + x - ax, alpha) * (1.0 + y - ay) * (1.0 + y - ay);
    };
    p.d_minus = [ga, alpha, bx, by](double x, double y, double) {
      return ga * std::pow(1.0 + bx - x, alpha) * (1.0 + by - y) * (1.0 + by - y);
    };
    p.e_plus = [gb, beta, ax, ay](double x, double y, double) {
      return gb * (1.0 + x - ax) * (1.0 + x - ax) * std::pow(1.0 + y - ay, beta);
    };
    p.e_minus = [gb, beta, bx, by](double x, double y, double) {
      return gb * (1.0 + bx - x) * (1.0 + bx - x) * std::pow(1.0 + by - y, beta);
    };
    p.time_dependent_coeffs = false;
    attach_source(p, 16.0, px, py);
    return p;
  }

  // Sextic profile shared by the remaining presets.
  EndPolynomial px = sextic_profile(bx - ax);
  EndPolynomial py = sextic_profile(by - ay);
  if (which == 2) {
    FdeProblem p = make_separable(2, "example-2", alpha, beta, ax, bx, ay, by,
                                  1.0, px, py);
    p.d_plus = [alpha, ax, ay](double x, double y, double t) {
      return 4.0 * (1.0 + t) * std::pow(x - ax, alpha) * (1.0 + y - ay);
    };
    p.d_minus = [alpha, bx, ay](double x, double y, double t) {
      return 4.0 * (1.0 + t) * std::pow(bx - x, alpha) * (1.0 + y - ay);
    };
    p.e_plus = [beta, ax, ay](double x, double y, double t) {
      return 4.0 * (1.0 + t) * (1.0 + x - ax) * std::pow(y - ay, beta);
    };
    p.e_minus = [beta, ax, by](double x, double y, double t) {
      return 4.0 * (1.0 + t) * (1.0 + x - ax) * std::pow(by - y, beta);
    };
    p.time_dependent_coeffs = true;
    attach_source(p, 1.0, px, py);
    return p;
  }

  FdeProblem p = make_separable(3, "example-3", alpha, beta, ax, bx, ay, by,
                                1.0, px, py);
  p.d_plus = [alpha, ax](double x, double, double) {
    return 6.0 * std::pow(x - ax, alpha);
  };
  p.d_minus = [alpha, bx](double x, double, double) {
    return 6.0 * std::pow(bx - x, alpha);
  };
  p.e_plus = [beta, ay](double, double y, double) {
    return 6.0 * std::pow(y - ay, beta);
  };
  p.e_minus = [beta, by](double, double y, double) {
    return 6.0 * std::pow(by - y, beta);
  };
  p.time_dependent_coeffs = false;
  attach_source(p, 1.0, px, py);
  return p;
}

FdeProblem make_example(int which, double alpha, double beta) {
  const double len = which == 1 ? 2.0 : 1.0;
  return make_example_on(which, alpha, beta, 0.0, len, 0.0, len);
}

std::vector<FdeProblem> builtin_examples() {
  return {make_example(1, 1.8, 1.6), make_example(2, 1.8, 1.9),
          make_example(3, 1.8, 1.9)};
}

} // namespace fde
