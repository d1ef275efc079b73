#pragma once

#include <complex>
#include <cstddef>
#include <string>

// Low-level array kernels used by the hot paths (FFT passes, spectral
// products, Krylov updates, Jacobi sweeps).  Every kernel has a scalar
// reference implementation and, on x86-64, an AVX2/FMA variant.  The active
// variant is chosen once at startup from CPUID and can be overridden with
// set_backend() (tests) or the FDE_BACKEND environment variable
// ("scalar"/"avx2").

namespace fde::kernels {

enum class Backend { scalar, avx2 };

Backend active_backend();
bool backend_available(Backend b);
// Returns false (and leaves the current backend) if b is unavailable.
bool set_backend(Backend b);
std::string backend_name(Backend b);

// y += a*x
void axpy(std::size_t n, double a, const double* x, double* y);
// x *= a
void scal(std::size_t n, double a, double* x);
double dot(std::size_t n, const double* x, const double* y);
// out = x - y
void sub(std::size_t n, const double* x, const double* y, double* out);
// y += a * d[i] * x[i]
void fma_had(std::size_t n, double a, const double* d, const double* x, double* y);
// out[i] = a[i] * b[i]
void cmul(std::size_t n, const std::complex<double>* a,
          const std::complex<double>* b, std::complex<double>* out);
// One radix-2 butterfly run of half-length h:
//   t = w[j]*hi[j]; hi[j] = lo[j] - t; lo[j] += t
void fft_pass(std::size_t h, const std::complex<double>* w,
              std::complex<double>* lo, std::complex<double>* hi);

double nrm2(std::size_t n, const double* x);
double inf_norm(std::size_t n, const double* x);

} // namespace fde::kernels
