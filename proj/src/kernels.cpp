#include "fde/kernels.hpp"

#include <cmath>
#include <cstdlib>
#include <cstring>

#include "kernels_table.hpp"

namespace fde::kernels {

namespace {

void axpy_scalar(std::size_t n, double a, const double* x, double* y) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void scal_scalar(std::size_t n, double a, double* x) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

double dot_scalar(std::size_t n, const double* x, const double* y) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
  return s;
}

void sub_scalar(std::size_t n, const double* x, const double* y, double* out) {
  for (std::size_t i = 0; i < n; ++i) out[i] = x[i] - y[i];
}

void fma_had_scalar(std::size_t n, double a, const double* d, const double* x,
                    double* y) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * d[i] * x[i];
}

void cmul_scalar(std::size_t n, const std::complex<double>* a,
                 const std::complex<double>* b, std::complex<double>* out) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

void fft_pass_scalar(std::size_t h, const std::complex<double>* w,
                     std::complex<double>* lo, std::complex<double>* hi) {
  for (std::size_t j = 0; j < h; ++j) {
    const std::complex<double> t = w[j] * hi[j];
    hi[j] = lo[j] - t;
    lo[j] += t;
  }
}

} // namespace

namespace {

const KernelTable scalar_table = {axpy_scalar, scal_scalar,    dot_scalar,
                                  sub_scalar,  fma_had_scalar, cmul_scalar,
                                  fft_pass_scalar};

bool avx2_supported() {
#ifdef FDE_BUILD_AVX2
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend pick_default() {
  if (const char* env = std::getenv("FDE_BACKEND")) {
    if (std::strcmp(env, "scalar") == 0) return Backend::scalar;
    if (std::strcmp(env, "avx2") == 0 && avx2_supported()) return Backend::avx2;
  }
  return avx2_supported() ? Backend::avx2 : Backend::scalar;
}

const KernelTable* table_for(Backend b) {
#ifdef FDE_BUILD_AVX2
  if (b == Backend::avx2) return &avx2_table();
#endif
  (void)b;
  return &scalar_table;
}

Backend g_backend = pick_default();
const KernelTable* g_table = table_for(g_backend);

} // namespace

Backend active_backend() { return g_backend; }

bool backend_available(Backend b) {
  return b == Backend::scalar || (b == Backend::avx2 && avx2_supported());
}

bool set_backend(Backend b) {
  if (!backend_available(b)) return false;
  g_backend = b;
  g_table = table_for(b);
  return true;
}

std::string backend_name(Backend b) {
  return b == Backend::avx2 ? "avx2" : "scalar";
}

void axpy(std::size_t n, double a, const double* x, double* y) {
  g_table->axpy(n, a, x, y);
}
void scal(std::size_t n, double a, double* x) { g_table->scal(n, a, x); }
double dot(std::size_t n, const double* x, const double* y) {
  return g_table->dot(n, x, y);
}
void sub(std::size_t n, const double* x, const double* y, double* out) {
  g_table->sub(n, x, y, out);
}
void fma_had(std::size_t n, double a, const double* d, const double* x,
             double* y) {
  g_table->fma_had(n, a, d, x, y);
}
void cmul(std::size_t n, const std::complex<double>* a,
          const std::complex<double>* b, std::complex<double>* out) {
  g_table->cmul(n, a, b, out);
}
void fft_pass(std::size_t h, const std::complex<double>* w,
              std::complex<double>* lo, std::complex<double>* hi) {
  g_table->fft_pass(h, w, lo, hi);
}

double nrm2(std::size_t n, const double* x) {
  return std::sqrt(g_table->dot(n, x, x));
}

double inf_norm(std::size_t n, const double* x) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::fabs(x[i]));
  return m;
}

} // namespace fde::kernels
