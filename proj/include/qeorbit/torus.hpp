#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "qeorbit/haar.hpp"
#include "qeorbit/qe.hpp"

namespace qeorbit {

// All integer vectors of a fixed squared norm, in lexicographic order.
struct LatticeShell {
  int dim = 0;
  long long n = 0;  // squared radius
  std::vector<std::vector<int>> points;

  long long multiplicity() const { return static_cast<long long>(points.size()); }
};

// Enumerates the shell {k in Z^dim : |k|^2 = n}. dim must lie in [2, 6].
// Throws std::runtime_error (message names n) when the shell is empty.
LatticeShell lattice_shell(int dim, long long n);

// Multiplicities of every nonempty shell with 1 <= n <= n_max, one pass.
std::vector<std::pair<long long, long long>> multiplicity_counts(int dim, long long n_max);

struct MultiplicitySequence {
  std::vector<std::pair<long long, long long>> shells;  // (n, multiplicity)
  // Least-squares slope of log(multiplicity) against log(sqrt(n)) over the
  // upper half of the n range (n > n_max / 2).
  double loglog_slope = 0.0;
  int regression_points = 0;
};

MultiplicitySequence multiplicity_sequence(int dim, long long n_max,
                                           long long min_multiplicity);

struct MonomialTerm {
  double coeff = 0.0;
  std::vector<int> exponents;  // per coordinate; trailing zeros may be omitted
};

// Polynomial symbol evaluated on unit directions of R^dim.
struct Multiplier {
  std::vector<MonomialTerm> terms;

  double eval(const Eigen::VectorXd& u) const;
  // Exact mean over the unit sphere S^{dim-1}: a monomial with any odd
  // exponent averages to zero; prod x_i^{2 b_i} averages to
  // prod_i (2 b_i - 1)!!  /  prod_{j=0}^{B-1} (dim + 2 j),  B = sum b_i.
  double sphere_average(int dim) const;
};

// Multiplication operator on the torus combined with a direction-dependent
// symbol. Fourier data must be Hermitian: c_{-m} = conj(c_m), c_0 real.
struct TorusObservable {
  int dim = 0;
  std::map<std::vector<int>, std::complex<double>> potential;
  Multiplier multiplier;

  // Phase-space average: Re(c_0) times the sphere mean of the multiplier.
  double liouville() const;
};

// Validates Hermitian Fourier data; throws std::invalid_argument otherwise.
TorusObservable make_torus_observable(int dim,
                                      std::map<std::vector<int>, std::complex<double>> potential,
                                      Multiplier multiplier);

// Nontrivial default: c_0 = 0.3, c_{+-(1,1,0,...)} = 1/2, symbol 1 + u_1^2.
TorusObservable default_observable(int dim);
// Constant observable c0 * identity; compresses to an exactly scalar matrix.
TorusObservable scalar_observable(int dim, double c0);

// Restriction of the observable to the span of the shell's exponentials:
//   T[k,l] = c_{l-k} * g((k+l)/|k+l|)   (the symbol factor is g-bar when
//   k+l = 0), then symmetrized to (T + T^dagger)/2 entrywise.
HermitianCompression compress_observable(const LatticeShell& shell,
                                         const TorusObservable& obs);

// Mean diagonal value minus the phase-space average, one entry per shell.
// Uses the diagonal formula directly; never builds the full matrix.
std::vector<double> local_weyl_check(const std::vector<LatticeShell>& shells,
                                     const TorusObservable& obs);

// Shell average of the symbol over normalized directions, (1/d) sum_k g(k/|k|).
// Each monomial is summed over the shell in integer arithmetic first, so
// symmetry cancellations (odd exponents, coordinate exchanges) are exact.
double direction_deviation(const LatticeShell& shell, const Multiplier& g);

std::vector<double> direction_equidistribution(const LatticeShell& shell,
                                               const std::vector<Multiplier>& tests);

struct ShellQERecord {
  long long n = 0;
  long long d = 0;
  double trace_mean = 0.0;
  double liouville = 0.0;
  double p2 = 0.0;
  double ey_exact = 0.0;  // closed-form mean of Y for the shell spectrum
  double y_first = 0.0;   // first draw, feeds the running-sum record
  MCEstimate y;
  MCEstimate v_trace;
  MCEstimate v_liouville;
};

struct TorusQEResult {
  std::vector<ShellQERecord> shells;
  SequenceRun run;  // built from the first draw of each shell
  std::uint64_t seed = 0;
  int draws = 0;
};

// Compresses the observable on each shell, draws onb_draws random orthonormal
// bases per shell, and records quantum variances under both references
// together with the Y statistic and its closed-form mean.
TorusQEResult qe_experiment(const std::vector<LatticeShell>& shells,
                            const TorusObservable& obs, int onb_draws,
                            std::uint64_t seed);

}  // namespace qeorbit
