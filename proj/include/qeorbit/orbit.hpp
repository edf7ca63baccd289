#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>

#include "qeorbit/haar.hpp"
#include "qeorbit/spectrum.hpp"

namespace qeorbit {

// Diagonal of U D(mu) U* where mu is the centered spectrum: entry i is
// sum_j mu_j |U_ij|^2.  The output lies in the permutohedron of mu (it is a
// doubly stochastic mixture of its vertex permutations).
// Throws "not unitary" if ||U*U - I||_max > 1e-10.
Eigen::VectorXd moment_map_diagonal(const Eigen::MatrixXcd& u, const SpectrumVector& s);

// The fixed point of all coordinate permutations: every entry equals the mean.
Eigen::VectorXd permutohedron_center_of_mass(const Eigen::VectorXd& lambda);

// E[Y] for Y = sum_i (moment_map_diagonal entry_i)^2 over Haar U:
//   m2 = p2(mu) / (d + 1).
double moment2_exact(const SpectrumVector& s);

// E[Y^2] over Haar U, in the closed form certified against the exact
// degree-4 unitary integration oracle (see the weingarten module and its
// tests):
//   m4 = (d^2+6d+6) / (d(d+1)(d+2)(d+3)) * p2(mu)^2
//      + 2 / ((d+1)(d+2)(d+3)) * p4(mu).
// Regular for every d >= 1.
double moment4_exact(const SpectrumVector& s);

// Var(Y) = moment4_exact - moment2_exact^2 (>= 0).
double variance_Y(const SpectrumVector& s);

// Two candidate closed-form coefficients for E[Y^2]/p2(mu)^2 that circulate
// in variant forms of the same derivation; they differ from each other by an
// exact factor of 4 and are exposed verbatim so the adjudication command can
// compare each against the certified oracle.  Both have a pole at d = 2 and
// throw below d = 3.
double beta4_statement(long long d);
double beta4_resolved(long long d);

// Truncated characteristic function of the diagonal pushforward: the series
//   sum over partitions mu, |mu| <= max_degree, l(mu) <= d of
//     [prod_{i=1..l(mu)} (d-i)! / (mu_i+d-i)!] * S_mu(x) * i^{|mu|} * S_mu(centered spectrum)
// evaluated with log-gamma prefactors.  max_degree <= 4.  At x = 0 the value
// is exactly 1; the degree-2 Taylor term reproduces -m2 under the Laplacian.
std::complex<double> orbital_fourier_truncated(const SpectrumVector& s,
                                               const Eigen::VectorXd& x, int max_degree);

// Aggregate of the exact, Monte-Carlo, and (when the spectrum is small-scale
// decimal and the dimension modest) exact-oracle values of m2 and m4.
struct MomentReport {
  int d = 0;
  double m2_exact = 0.0;
  double m4_exact = 0.0;
  double variance_exact = 0.0;
  MCEstimate m2_mc;
  MCEstimate m4_mc;
  std::optional<double> m2_weingarten;
  std::optional<double> m4_weingarten;
  std::string oracle_note;  // why the oracle fields are absent, when they are
  long sample_count = 0;
  std::uint64_t seed = 0;
};

// Runs the Monte-Carlo cross-check and, when feasible, the exact oracle.
// The oracle path requires every entry to be an exact multiple of 1/1000
// and d <= 12; otherwise the optional fields stay empty with a note.
MomentReport build_moment_report(const SpectrumVector& s, long samples,
                                 std::uint64_t seed);

}  // namespace qeorbit
