#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "fde/structured.hpp"

namespace fde {

// Polynomial in the distance xi from one end of an interval, sum_p c[p] xi^p,
// together with its Riemann-Liouville fractional derivative taken from that
// end: D^gamma xi^p = Gamma(p+1)/Gamma(p+1-gamma) xi^(p-gamma).  Terms whose
// 1/Gamma factor vanishes (integer orders hitting a pole) drop out.
struct EndPolynomial {
  std::vector<double> c;
  double value(double xi) const;
  double frac_deriv(double gamma, double xi) const;
};

struct FdeProblem {
  std::string name;
  int index = 0; // preset number, 0 for custom problems
  double alpha = 1.5, beta = 1.5;
  double ax = 0.0, bx = 1.0, ay = 0.0, by = 1.0;
  double t_final = 1.0;
  bool time_dependent_coeffs = false;
  std::function<double(double, double, double)> d_plus, d_minus, e_plus, e_minus;
  std::function<double(double, double, double)> source; // v(x, y, t)
  std::function<double(double, double)> initial;
  std::function<double(double, double, double)> exact; // may be empty
};

// Uniform interior grid, x index fastest.  Node i in x is ax + hx (i+1); the
// boundary rows/columns are eliminated by the homogeneous Dirichlet data.
struct Grid {
  std::size_t n1 = 0, n2 = 0, steps = 0;
  double ax = 0, bx = 0, ay = 0, by = 0, t_final = 0;
  double hx = 0, hy = 0, dt = 0;
  double r = 0, s = 0, inv_r = 0, s_over_r = 0;

  Grid() = default;
  Grid(const FdeProblem& p, std::size_t n1, std::size_t n2, std::size_t steps);

  double x(std::size_t i) const { return ax + hx * static_cast<double>(i + 1); }
  double y(std::size_t j) const { return ay + hy * static_cast<double>(j + 1); }
  std::size_t size() const { return n1 * n2; }
};

// Step operator with coefficients frozen at t^m = m dt.  Throws if any
// coefficient sample is negative.
StructuredFdeOperator assemble_step_operator(const FdeProblem& p, const Grid& g,
                                             std::size_t m);

// Right-hand side for the step to t^m:
//   b = apply_rhs(u_prev) + 2 hx^alpha v(., t^(m-1/2))
// where op_prev carries the coefficients at t^(m-1).
std::vector<double> assemble_rhs(const FdeProblem& p, const Grid& g,
                                 std::size_t m, const std::vector<double>& u_prev,
                                 const StructuredFdeOperator& op_prev);
std::vector<double> assemble_rhs(const FdeProblem& p, const Grid& g,
                                 std::size_t m, const std::vector<double>& u_prev);

std::vector<double> sample_initial(const FdeProblem& p, const Grid& g);
std::vector<double> sample_exact(const FdeProblem& p, const Grid& g, double t);

// Max-norm distance between a grid function and the exact solution at time t.
double error_inf(const std::vector<double>& u, const FdeProblem& p,
                 const Grid& g, double t);

// Built-in manufactured problems.  `which` is 1, 2 or 3; the fractional
// orders may differ from the preset defaults, the source adapts.
FdeProblem make_example(int which, double alpha, double beta);
// Same coefficient and solution families carried to the rectangle
// [ax, bx] x [ay, by].
FdeProblem make_example_on(int which, double alpha, double beta, double ax,
                           double bx, double ay, double by);
std::vector<FdeProblem> builtin_examples();

} // namespace fde
