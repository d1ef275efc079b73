#pragma once

#include <complex>
#include <cstddef>
#include <vector>

// In-place iterative radix-2 complex FFT on power-of-two lengths.  Transform
// sizes in this project come from circulant embeddings and are always padded
// to a power of two, so no general-length machinery is needed.  Butterfly
// passes run through the kernels layer.

namespace fde::fft {

std::size_t next_pow2(std::size_t n);

class Plan {
public:
  Plan() = default;
  explicit Plan(std::size_t n); // n must be a power of two (or 0)

  std::size_t size() const { return n_; }
  void forward(std::complex<double>* a) const;
  // Inverse transform including the 1/n scaling.
  void inverse(std::complex<double>* a) const;

private:
  void run(std::complex<double>* a,
           const std::vector<std::vector<std::complex<double>>>& tw) const;

  std::size_t n_ = 0;
  std::vector<std::uint32_t> rev_;
  // tw_fwd_[s] holds the 2^s twiddles of the stage with half-block 2^s.
  std::vector<std::vector<std::complex<double>>> tw_fwd_, tw_inv_;
};

// Out-of-place convenience oracle: direct O(n^2) DFT (tests only).
std::vector<std::complex<double>> naive_dft(const std::vector<std::complex<double>>& a,
                                            bool inverse);

} // namespace fde::fft
