#pragma once

#include <complex>
#include <cstddef>

namespace qeorbit::kernels {

/// Data-parallel inner loops of the Monte-Carlo paths.  Each has a scalar
/// reference implementation and an AVX2 variant; the active set is picked
/// once at runtime from CPU features, overridable with the environment
/// variable QEORBIT_KERNELS=scalar|avx2 or force_kernels().  Variants are
/// equivalence-tested against each other on random inputs.
struct KernelSet {
  /// out[i] = sum_j w[j] |A(i,j)|^2 for a column-major d x d complex A.
  void (*weighted_abs2_rowsum)(const std::complex<double>* a, int d,
                               const double* w, double* out);
  /// out[j] = sum_i w[i] |A(i,j)|^2 for a column-major d x d complex A.
  void (*weighted_abs2_colsum)(const std::complex<double>* a, int d,
                               const double* w, double* out);
  double (*sum_squares)(const double* x, int n);
  double (*dot)(const double* x, const double* y, int n);
  const char* name;
};

const KernelSet& scalar_kernels();
/// Null when this build/CPU cannot run AVX2.
const KernelSet* avx2_kernels();

/// Active set (CPU-detected once, env override honored).
const KernelSet& active_kernels();

/// Force a specific set by name ("scalar"/"avx2"); returns false and leaves
/// the active set unchanged if the name is unknown or unavailable.
bool force_kernels(const char* name);

}  // namespace qeorbit::kernels
