#pragma once

#include <complex>
#include <cstddef>

namespace fde::kernels {

struct KernelTable {
  void (*axpy)(std::size_t, double, const double*, double*);
  void (*scal)(std::size_t, double, double*);
  double (*dot)(std::size_t, const double*, const double*);
  void (*sub)(std::size_t, const double*, const double*, double*);
  void (*fma_had)(std::size_t, double, const double*, const double*, double*);
  void (*cmul)(std::size_t, const std::complex<double>*,
               const std::complex<double>*, std::complex<double>*);
  void (*fft_pass)(std::size_t, const std::complex<double>*,
                   std::complex<double>*, std::complex<double>*);
};

#ifdef FDE_BUILD_AVX2
const KernelTable& avx2_table();
#endif

} // namespace fde::kernels
