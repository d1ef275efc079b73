#include "fde/symbols.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace fde {

namespace {

constexpr double kPi = std::numbers::pi;

// 1 - e^{i xi} written as 2 sin(xi/2) (sin(xi/2) - i cos(xi/2)) so the real
// part does not cancel for tiny xi.
std::complex<double> one_minus_exp(double xi) {
  const double s = std::sin(0.5 * xi), c = std::cos(0.5 * xi);
  return {2.0 * s * s, -2.0 * s * c};
}

} // namespace

std::complex<double> eval_f_gamma(double gamma, double xi) {
  if (xi == 0.0) return {0.0, 0.0};
  const std::complex<double> z = one_minus_exp(xi); // = 1 + e^{i(xi+pi)}
  const std::complex<double> factor =
      -(1.0 - 0.5 * gamma * std::conj(z)); // -(2 - gamma(1 - e^{-i xi}))/2
  return factor * std::pow(z, gamma);      // principal branch
}

double eval_q_gamma(double gamma, double xi) {
  return 2.0 * eval_f_gamma(gamma, xi).real();
}

double eval_F(double alpha, double beta, double d, double e, double s_over_r,
              double theta1, double theta2) {
  return d * eval_q_gamma(alpha, theta1) +
         e * s_over_r * eval_q_gamma(beta, theta2);
}

double projector_p(double theta1, double theta2) {
  return (1.0 + std::cos(theta1)) * (1.0 + std::cos(theta2));
}

std::complex<double> eval_h(double alpha, double beta, const CoeffFns& coeffs,
                            double s_over_r, std::array<double, 2> x,
                            double theta1, double theta2) {
  const double dp = coeffs.d_plus(x[0], x[1]), dm = coeffs.d_minus(x[0], x[1]);
  const double ep = coeffs.e_plus(x[0], x[1]), em = coeffs.e_minus(x[0], x[1]);
  const std::complex<double> ga =
      dp * eval_f_gamma(alpha, theta1) + dm * eval_f_gamma(alpha, -theta1);
  const std::complex<double> gb =
      ep * eval_f_gamma(beta, theta2) + em * eval_f_gamma(beta, -theta2);
  return ga + s_over_r * gb;
}

std::array<std::array<double, 2>, 3> mirror_points(double t1, double t2) {
  return {{{t1, kPi - t2}, {kPi - t1, t2}, {kPi - t1, kPi - t2}}};
}

LimitCheckReport check_projector_condition(double alpha, double beta, double d,
                                           double e, double s_over_r,
                                           ProjectorMode mode) {
  if (!(alpha > 1.0 && alpha < 2.0 && beta > 1.0 && beta < 2.0))
    throw std::invalid_argument("check_projector_condition: orders must lie in (1,2)");

  LimitCheckReport rep;
  const std::size_t n_rays = 16, n_radii = 12;
  for (std::size_t i = 0; i < n_rays; ++i)
    rep.ray_angles.push_back(0.5 * kPi * double(i) / double(n_rays - 1));
  for (std::size_t m = 0; m < n_radii; ++m)
    rep.radii.push_back(std::pow(10.0, -1.0 - 5.0 * double(m) / double(n_radii - 1)));

  rep.verdict = true;
  rep.sup_estimate = 0.0;
  rep.inf_estimate = std::numeric_limits<double>::infinity();
  const double expo = (mode == ProjectorMode::tgm) ? 2.0 : 1.0;
  for (double phi : rep.ray_angles) {
    std::vector<double> row;
    for (double r : rep.radii) {
      const double t1 = r * std::cos(phi), t2 = r * std::sin(phi);
      const double F = eval_F(alpha, beta, d, e, s_over_r, t1, t2);
      double worst = 0.0;
      for (const auto& y : mirror_points(t1, t2))
        worst = std::max(worst, std::pow(projector_p(y[0], y[1]), expo) / F);
      row.push_back(worst);
      rep.sup_estimate = std::max(rep.sup_estimate, worst);
      rep.inf_estimate = std::min(rep.inf_estimate, worst);
    }
    for (std::size_t m = 0; m + 1 < row.size(); ++m)
      if (row[m + 1] > row[m] * (1.0 + 1e-9) + 1e-300) rep.verdict = false;
    if (row.back() > 1e-3) rep.verdict = false;
    rep.ratio_values.push_back(std::move(row));
  }
  return rep;
}

LimitCheckReport check_limsup_ratio_h_over_F(double alpha, double beta,
                                             const CoeffFns& coeffs, double d,
                                             double e, double s_over_r,
                                             std::array<double, 2> x) {
  if (alpha == beta)
    throw std::invalid_argument("check_limsup_ratio_h_over_F: requires alpha != beta");

  LimitCheckReport rep;
  rep.ray_angles = {0.25 * kPi, 1.25 * kPi}; // positive branch, opposite branch
  const std::size_t n_radii = 12;
  for (std::size_t m = 0; m < n_radii; ++m)
    rep.radii.push_back(std::pow(10.0, -1.0 - double(m)));

  std::vector<double> pos_re, pos_im, neg_re, neg_im;
  std::complex<double> last_pos{0.0, 0.0};
  for (double r : rep.radii) {
    for (int sgn : {+1, -1}) {
      const double t = sgn * r;
      const std::complex<double> h = eval_h(alpha, beta, coeffs, s_over_r, x, t, t);
      const double F = eval_F(alpha, beta, d, e, s_over_r, t, t);
      const std::complex<double> ratio = h / F;
      if (sgn > 0) {
        pos_re.push_back(ratio.real());
        pos_im.push_back(ratio.imag());
        last_pos = ratio;
      } else {
        neg_re.push_back(ratio.real());
        neg_im.push_back(ratio.imag());
      }
    }
  }
  rep.ratio_values = {pos_re, pos_im, neg_re, neg_im};
  rep.estimate = last_pos;

  const double dp = coeffs.d_plus(x[0], x[1]), dm = coeffs.d_minus(x[0], x[1]);
  const double ep = coeffs.e_plus(x[0], x[1]), em = coeffs.e_minus(x[0], x[1]);
  if (alpha < beta) {
    rep.target = {(dp + dm) / (2.0 * d),
                  -std::tan(0.5 * kPi * alpha) * (dp - dm) / (2.0 * d)};
  } else {
    rep.target = {(ep + em) / (2.0 * e),
                  -std::tan(0.5 * kPi * beta) * (ep - em) / (2.0 * e)};
  }
  rep.sup_estimate = std::abs(rep.estimate);
  rep.inf_estimate = std::abs(rep.target);
  rep.verdict = std::abs(rep.estimate - rep.target) <= 0.01 * std::abs(rep.target);
  return rep;
}

} // namespace fde
