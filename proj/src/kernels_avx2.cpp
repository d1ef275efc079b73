#ifdef FDE_BUILD_AVX2

#include <immintrin.h>

#include "kernels_table.hpp"

// AVX2/FMA kernel variants.  Compiled with -mavx2 -mfma; only ever invoked
// after a CPUID check in kernels.cpp.  Complex data is interleaved
// (re, im) pairs, two complex numbers per 256-bit lane group.

namespace fde::kernels {
namespace {

void axpy_avx2(std::size_t n, double a, const double* x, double* y) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256d y0 = _mm256_loadu_pd(y + i);
    __m256d y1 = _mm256_loadu_pd(y + i + 4);
    y0 = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), y0);
    y1 = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i + 4), y1);
    _mm256_storeu_pd(y + i, y0);
    _mm256_storeu_pd(y + i + 4, y1);
  }
  for (; i + 4 <= n; i += 4) {
    __m256d y0 = _mm256_loadu_pd(y + i);
    y0 = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), y0);
    _mm256_storeu_pd(y + i, y0);
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

void scal_avx2(std::size_t n, double a, double* x) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(x + i, _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
  for (; i < n; ++i) x[i] *= a;
}

double dot_avx2(std::size_t n, const double* x, const double* y) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4),
                           _mm256_loadu_pd(y + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4)
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
  acc0 = _mm256_add_pd(acc0, acc1);
  __m128d lo = _mm256_castpd256_pd128(acc0);
  __m128d hi = _mm256_extractf128_pd(acc0, 1);
  lo = _mm_add_pd(lo, hi);
  double s = _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
  for (; i < n; ++i) s += x[i] * y[i];
  return s;
}

void sub_avx2(std::size_t n, const double* x, const double* y, double* out) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(out + i, _mm256_sub_pd(_mm256_loadu_pd(x + i),
                                            _mm256_loadu_pd(y + i)));
  for (; i < n; ++i) out[i] = x[i] - y[i];
}

void fma_had_avx2(std::size_t n, double a, const double* d, const double* x,
                  double* y) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d dx = _mm256_mul_pd(_mm256_loadu_pd(d + i), _mm256_loadu_pd(x + i));
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, dx, _mm256_loadu_pd(y + i)));
  }
  for (; i < n; ++i) y[i] += a * d[i] * x[i];
}

// (ar+i*ai)(br+i*bi) for two interleaved complex values per vector:
// fmaddsub(a, br, a_swapped*bi) = [ar*br - ai*bi, ai*br + ar*bi]
inline __m256d cmul_pd(__m256d a, __m256d b) {
  const __m256d b_re = _mm256_movedup_pd(b);
  const __m256d b_im = _mm256_permute_pd(b, 0xF);
  const __m256d a_sw = _mm256_permute_pd(a, 0x5);
  return _mm256_fmaddsub_pd(a, b_re, _mm256_mul_pd(a_sw, b_im));
}

void cmul_avx2(std::size_t n, const std::complex<double>* a,
               const std::complex<double>* b, std::complex<double>* out) {
  const double* pa = reinterpret_cast<const double*>(a);
  const double* pb = reinterpret_cast<const double*>(b);
  double* po = reinterpret_cast<double*>(out);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    _mm256_storeu_pd(po + 2 * i, cmul_pd(_mm256_loadu_pd(pa + 2 * i),
                                         _mm256_loadu_pd(pb + 2 * i)));
  for (; i < n; ++i) out[i] = a[i] * b[i];
}

void fft_pass_avx2(std::size_t h, const std::complex<double>* w,
                   std::complex<double>* lo, std::complex<double>* hi) {
  double* plo = reinterpret_cast<double*>(lo);
  double* phi = reinterpret_cast<double*>(hi);
  const double* pw = reinterpret_cast<const double*>(w);
  std::size_t j = 0;
  for (; j + 2 <= h; j += 2) {
    const __m256d t =
        cmul_pd(_mm256_loadu_pd(pw + 2 * j), _mm256_loadu_pd(phi + 2 * j));
    const __m256d l = _mm256_loadu_pd(plo + 2 * j);
    _mm256_storeu_pd(phi + 2 * j, _mm256_sub_pd(l, t));
    _mm256_storeu_pd(plo + 2 * j, _mm256_add_pd(l, t));
  }
  for (; j < h; ++j) {
    const std::complex<double> t = w[j] * hi[j];
    hi[j] = lo[j] - t;
    lo[j] += t;
  }
}

} // namespace

const KernelTable& avx2_table() {
  static const KernelTable t = {axpy_avx2, scal_avx2,    dot_avx2, sub_avx2,
                                fma_had_avx2, cmul_avx2, fft_pass_avx2};
  return t;
}

} // namespace fde::kernels

#endif // FDE_BUILD_AVX2
