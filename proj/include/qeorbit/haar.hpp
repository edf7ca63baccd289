#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>

#include "qeorbit/rng.hpp"
#include "qeorbit/spectrum.hpp"

namespace qeorbit {

// Draws d x d matrices distributed by unitarily invariant Haar measure.
// Construction: complex Ginibre matrix -> Householder QR -> column phase fix
// so that the effective R has positive diagonal.  Without the phase fix the
// QR factor is NOT Haar (the first entry acquires a systematic sign bias);
// tests cover both the fixed and the deliberately broken variant.
class HaarSampler {
 public:
  HaarSampler(std::uint64_t seed, std::uint64_t stream, int d);

  int dim() const { return d_; }
  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

  // iid standard complex gaussian entries, filled column-major.
  Eigen::MatrixXcd ginibre();

  // One Haar-distributed unitary.
  Eigen::MatrixXcd unitary();

  // Same as unitary() but skipping the phase fix; exposed only so the test
  // suite can demonstrate that the naive construction is detectably biased.
  Eigen::MatrixXcd unitary_unfixed();

  // Independent sampler derived from the same seed (distinct RNG stream).
  HaarSampler child(std::uint64_t idx) const {
    return HaarSampler(seed_, stream_ + 1 + idx, d_);
  }

 private:
  Eigen::MatrixXcd qr_unitary(bool fix_phases);

  std::uint64_t seed_;
  std::uint64_t stream_;
  int d_;
  GaussianStream gauss_;
};

struct MCEstimate {
  double mean = 0.0;
  double sem = 0.0;  // standard error of the mean
  long n = 0;
};

struct MCComplexEstimate {
  std::complex<double> mean{0.0, 0.0};
  double sem = 0.0;  // combined (real+imag) standard error
  long n = 0;
};

// Monte-Carlo estimate of E[ ||X||^k ] for the vector X with entries
// X_j = sum_i mu_i |U_ij|^2, mu the centered spectrum: k=2 gives the mean of
// Y = ||X||^2, k=4 the mean of Y^2.  k must be 2 or 4.
MCEstimate mc_moment(const SpectrumVector& s, int k, long n, HaarSampler& sampler);

// Monte-Carlo estimate of E[ exp(i sum_j x_j X_j) ] for a direction x.
MCComplexEstimate mc_characteristic(const SpectrumVector& s, const Eigen::VectorXd& x,
                                    long n, HaarSampler& sampler);

// Monte-Carlo estimate of E[ |U_{i1 j1}|^2 |U_{i2 j2}|^2 ].
MCEstimate mc_entry_moment22(int i1, int j1, int i2, int j2, long n, HaarSampler& sampler);

}  // namespace qeorbit
