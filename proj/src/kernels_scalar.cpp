#include "qeorbit/kernels.hpp"

#include <algorithm>

namespace qeorbit::kernels {
namespace {

void rowsum_scalar(const std::complex<double>* a, int d, const double* w,
                   double* out) {
  std::fill(out, out + d, 0.0);
  for (int j = 0; j < d; ++j) {
    const std::complex<double>* col = a + static_cast<std::size_t>(j) * d;
    const double wj = w[j];
    for (int i = 0; i < d; ++i) {
      const double re = col[i].real(), im = col[i].imag();
      out[i] += wj * (re * re + im * im);
    }
  }
}

void colsum_scalar(const std::complex<double>* a, int d, const double* w,
                   double* out) {
  for (int j = 0; j < d; ++j) {
    const std::complex<double>* col = a + static_cast<std::size_t>(j) * d;
    double s = 0.0;
    for (int i = 0; i < d; ++i) {
      const double re = col[i].real(), im = col[i].imag();
      s += w[i] * (re * re + im * im);
    }
    out[j] = s;
  }
}

double sum_squares_scalar(const double* x, int n) {
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += x[i] * x[i];
  return s;
}

double dot_scalar(const double* x, const double* y, int n) {
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += x[i] * y[i];
  return s;
}

}  // namespace

const KernelSet& scalar_kernels() {
  static const KernelSet k{rowsum_scalar, colsum_scalar, sum_squares_scalar,
                           dot_scalar, "scalar"};
  return k;
}

}  // namespace qeorbit::kernels
