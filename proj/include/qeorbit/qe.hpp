#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "qeorbit/spectrum.hpp"

namespace qeorbit {

/// A Hermitian operator with its eigendecomposition cached, together with the
/// target mean value (the infinite-volume state) the observable converges to.
struct HermitianCompression {
  Eigen::MatrixXcd matrix;        // T, Hermitian
  Eigen::MatrixXcd eigenvectors;  // unitary W with T = W diag(spectrum) W*
  SpectrumVector spectrum;        // eigenvalues of T
  double trace_mean = 0.0;        // (1/d) Tr T
  double liouville_mean = 0.0;    // caller-supplied target state
  int d() const { return static_cast<int>(matrix.rows()); }
};

/// Validates Hermiticity (||T - T*||_max <= 1e-10 * max(1, ||T||_max)) and
/// diagonalizes.  An exactly diagonal input keeps its diagonal as the
/// spectrum with the identity eigenbasis, so scalar operators stay exact.
HermitianCompression make_compression(Eigen::MatrixXcd t, double liouville_mean);

enum class Reference { trace_mean, liouville };

/// (1/d) sum_j |<T u_j, u_j> - ref|^2 over the columns u_j of U.  The
/// reference is subtracted from the operator before forming matrix elements,
/// so a scalar operator gives exactly zero in trace_mean mode.
double quantum_variance(const HermitianCompression& t, const Eigen::MatrixXcd& u,
                        Reference ref);

/// Y = sum_j ( sum_i mu_i |(W* U)_{ij}|^2 )^2 with mu the centered spectrum:
/// the squared norm of the diagonal of U* T0 U for T0 = T - trace_mean * I.
/// Equals d * quantum_variance(t, u, trace_mean) up to roundoff; the two are
/// computed by independent routes (spectral vs direct matrix elements).
double Y_value(const HermitianCompression& t, const Eigen::MatrixXcd& u);

struct LevelRecord {
  long level = 0;          // 1-based position in the sequence
  int d = 0;               // dimension at this level
  double y = 0.0;          // sampled Y
  double y_mean_exact = 0.0;  // closed-form E[Y] = p2/(d+1)
  double v_trace = 0.0;    // y / d
  double s_partial = 0.0;  // S_level = sum_{n<=level} (y_n - E y_n)/d_n
  double cesaro = 0.0;     // (1/level) sum_{n<=level} y_n/d_n
};

struct SequenceRun {
  std::vector<LevelRecord> levels;
  double s_final = 0.0;
  double cesaro_final = 0.0;
  double sum_inv_d = 0.0;      // sum of 1/d_n over the run
  double tail_inv_d_fraction = 0.0;  // second-half share of sum_inv_d
  std::uint64_t seed = 0;
};

/// One Haar draw per level (independent RNG streams derived from the seed);
/// partial sums are accumulated with compensated summation.
SequenceRun slln_run(const std::vector<SpectrumVector>& spectra, std::uint64_t seed);

struct SzegoMomentReport {
  int order = 0;
  double last_value = 0.0;
  double full_width = 0.0;  // max - min of the moment over the whole sequence
  double tail_width = 0.0;  // max - min over the second half
  bool stabilizing = false;  // tail_width <= max(0.1 * full_width, 1e-12)
};

struct SzegoReport {
  std::vector<SzegoMomentReport> moments;
  bool all_stabilizing = false;
};

/// Cauchy-style diagnostic for weak-* convergence of a sequence of spectral
/// measures: per moment order, the spread of the moment values over the full
/// sequence and over its tail.  No limit is claimed; only stabilization of
/// moments is reported.
SzegoReport szego_convergence(const std::vector<EmpiricalMeasure>& measures,
                              int max_moment);

}  // namespace qeorbit
