#pragma once

#include <array>
#include <complex>
#include <functional>
#include <vector>

// Generating functions attached to the discretized fractional operators and
// numeric checks of their limit behaviour near the origin: the per-order
// symbol f_gamma, the nonnegative distribution symbol F of the symmetrized
// two-level matrix family, the variable-coefficient symbol h, the projector
// symbol p, and the mirror-point/limsup conditions the multigrid analysis
// rests on.

namespace fde {

std::complex<double> eval_f_gamma(double gamma, double xi);
// q_gamma = f_gamma(xi) + f_gamma(-xi) = 2 Re f_gamma(xi); real, even, >= 0.
double eval_q_gamma(double gamma, double xi);
// F(theta) = d q_alpha(theta1) + e s_over_r q_beta(theta2)
double eval_F(double alpha, double beta, double d, double e, double s_over_r,
              double theta1, double theta2);
// p(theta) = (1+cos theta1)(1+cos theta2) in [0,4]
double projector_p(double theta1, double theta2);

struct CoeffFns {
  std::function<double(double, double)> d_plus, d_minus, e_plus, e_minus;
};

// h(x, theta) = d+(x) f_alpha(theta1) + d-(x) f_alpha(-theta1)
//             + s_over_r [e+(x) f_beta(theta2) + e-(x) f_beta(-theta2)]
std::complex<double> eval_h(double alpha, double beta, const CoeffFns& coeffs,
                            double s_over_r, std::array<double, 2> x,
                            double theta1, double theta2);

// {(t1, pi-t2), (pi-t1, t2), (pi-t1, pi-t2)}
std::array<std::array<double, 2>, 3> mirror_points(double theta1, double theta2);

struct LimitCheckReport {
  std::vector<double> ray_angles;
  std::vector<double> radii; // strictly decreasing toward 0
  std::vector<std::vector<double>> ratio_values; // [ray][radius]
  double sup_estimate = 0.0;
  double inf_estimate = 0.0;
  std::complex<double> estimate{0.0, 0.0}; // limsup checks only
  std::complex<double> target{0.0, 0.0};
  bool verdict = false;
};

enum class ProjectorMode { tgm, vcycle };

// Samples p(y)^2/F(x) (tgm) or p(y)/F(x) (vcycle) over the mirror points of
// points x walking to 0 along >= 16 rays; true verdict = ratios decay
// monotonically below 1e-3 on every ray.
LimitCheckReport check_projector_condition(double alpha, double beta, double d,
                                           double e, double s_over_r,
                                           ProjectorMode mode);

// Estimates the limit of h/F as theta -> 0 with the minimal-order variable
// tending to 0 from the positive side, and compares against the analytic
// value (d+(x)+d-(x))/2d - i tan(alpha pi/2) (d+(x)-d-(x))/2d when the
// minimal order is alpha (the e/beta analogue otherwise).  The opposite
// branch is sampled into ratio_values but carries no verdict.
LimitCheckReport check_limsup_ratio_h_over_F(double alpha, double beta,
                                             const CoeffFns& coeffs, double d,
                                             double e, double s_over_r,
                                             std::array<double, 2> x);

} // namespace fde
