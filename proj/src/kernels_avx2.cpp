#include "qeorbit/kernels.hpp"

#if defined(__AVX2__) && defined(__FMA__)

#include <immintrin.h>

namespace qeorbit::kernels {
namespace {

// |z|^2 for four interleaved complex doubles in natural order.
// hadd pairs within 128-bit lanes, so the raw result comes out in order
// (0,2,1,3); the permute restores natural order.
inline __m256d abs2x4(const std::complex<double>* p) {
  const double* q = reinterpret_cast<const double*>(p);
  const __m256d v0 = _mm256_loadu_pd(q);
  const __m256d v1 = _mm256_loadu_pd(q + 4);
  const __m256d h = _mm256_hadd_pd(_mm256_mul_pd(v0, v0), _mm256_mul_pd(v1, v1));
  return _mm256_permute4x64_pd(h, 0xD8);
}

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

void rowsum_avx2(const std::complex<double>* a, int d, const double* w,
                 double* out) {
  int i0 = 0;
  for (; i0 + 4 <= d; i0 += 4) {
    __m256d acc = _mm256_setzero_pd();
    for (int j = 0; j < d; ++j) {
      const __m256d wj = _mm256_set1_pd(w[j]);
      acc = _mm256_fmadd_pd(wj, abs2x4(a + static_cast<std::size_t>(j) * d + i0), acc);
    }
    _mm256_storeu_pd(out + i0, acc);
  }
  for (; i0 < d; ++i0) {
    double s = 0.0;
    for (int j = 0; j < d; ++j) {
      const std::complex<double> z = a[static_cast<std::size_t>(j) * d + i0];
      s += w[j] * (z.real() * z.real() + z.imag() * z.imag());
    }
    out[i0] = s;
  }
}

void colsum_avx2(const std::complex<double>* a, int d, const double* w,
                 double* out) {
  for (int j = 0; j < d; ++j) {
    const std::complex<double>* col = a + static_cast<std::size_t>(j) * d;
    __m256d acc = _mm256_setzero_pd();
    int i = 0;
    for (; i + 4 <= d; i += 4)
      acc = _mm256_fmadd_pd(_mm256_loadu_pd(w + i), abs2x4(col + i), acc);
    double s = hsum(acc);
    for (; i < d; ++i) {
      const double re = col[i].real(), im = col[i].imag();
      s += w[i] * (re * re + im * im);
    }
    out[j] = s;
  }
}

double sum_squares_avx2(const double* x, int n) {
  __m256d acc0 = _mm256_setzero_pd(), acc1 = _mm256_setzero_pd();
  int i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256d v0 = _mm256_loadu_pd(x + i);
    const __m256d v1 = _mm256_loadu_pd(x + i + 4);
    acc0 = _mm256_fmadd_pd(v0, v0, acc0);
    acc1 = _mm256_fmadd_pd(v1, v1, acc1);
  }
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(x + i);
    acc0 = _mm256_fmadd_pd(v, v, acc0);
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += x[i] * x[i];
  return s;
}

double dot_avx2(const double* x, const double* y, int n) {
  __m256d acc = _mm256_setzero_pd();
  int i = 0;
  for (; i + 4 <= n; i += 4)
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc);
  double s = hsum(acc);
  for (; i < n; ++i) s += x[i] * y[i];
  return s;
}

}  // namespace

const KernelSet* avx2_kernels() {
  static const KernelSet k{rowsum_avx2, colsum_avx2, sum_squares_avx2,
                           dot_avx2, "avx2"};
#if defined(__x86_64__) || defined(_M_X64) || defined(__i386__)
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) return &k;
#endif
  return nullptr;
}

}  // namespace qeorbit::kernels

#else  // no AVX2 in this build

namespace qeorbit::kernels {
const KernelSet* avx2_kernels() { return nullptr; }
}  // namespace qeorbit::kernels

#endif
