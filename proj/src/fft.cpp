#include "fde/fft.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fde/kernels.hpp"

namespace fde::fft {

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

Plan::Plan(std::size_t n) : n_(n) {
  if (n == 0) return;
  if ((n & (n - 1)) != 0) throw std::invalid_argument("fft: size not a power of two");
  rev_.resize(n);
  std::size_t lg = 0;
  while ((std::size_t{1} << lg) < n) ++lg;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t r = 0;
    for (std::size_t b = 0; b < lg; ++b) r |= ((i >> b) & 1u) << (lg - 1 - b);
    rev_[i] = static_cast<std::uint32_t>(r);
  }
  tw_fwd_.resize(lg);
  tw_inv_.resize(lg);
  for (std::size_t s = 0; s < lg; ++s) {
    const std::size_t h = std::size_t{1} << s;
    tw_fwd_[s].resize(h);
    tw_inv_[s].resize(h);
    for (std::size_t j = 0; j < h; ++j) {
      const double ang = -std::numbers::pi * double(j) / double(h);
      tw_fwd_[s][j] = {std::cos(ang), std::sin(ang)};
      tw_inv_[s][j] = std::conj(tw_fwd_[s][j]);
    }
  }
}

void Plan::run(std::complex<double>* a,
               const std::vector<std::vector<std::complex<double>>>& tw) const {
  for (std::size_t i = 0; i < n_; ++i) {
    const std::size_t r = rev_[i];
    if (i < r) std::swap(a[i], a[r]);
  }
  for (std::size_t s = 0; s < tw.size(); ++s) {
    const std::size_t h = std::size_t{1} << s;
    const std::size_t m = h << 1;
    for (std::size_t b = 0; b < n_; b += m)
      kernels::fft_pass(h, tw[s].data(), a + b, a + b + h);
  }
}

void Plan::forward(std::complex<double>* a) const {
  if (n_ > 1) run(a, tw_fwd_);
}

void Plan::inverse(std::complex<double>* a) const {
  if (n_ <= 1) return;
  run(a, tw_inv_);
  kernels::scal(2 * n_, 1.0 / double(n_), reinterpret_cast<double*>(a));
}

std::vector<std::complex<double>> naive_dft(const std::vector<std::complex<double>>& a,
                                            bool inverse) {
  const std::size_t n = a.size();
  std::vector<std::complex<double>> out(n);
  const double sgn = inverse ? 1.0 : -1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::complex<double> s = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double ang = sgn * 2.0 * std::numbers::pi * double(k) * double(j) / double(n);
      s += a[j] * std::complex<double>{std::cos(ang), std::sin(ang)};
    }
    out[k] = inverse ? s / double(n) : s;
  }
  return out;
}

} // namespace fde::fft
