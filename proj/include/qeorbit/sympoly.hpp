#pragma once

#include <array>
#include <span>
#include <vector>

#include "qeorbit/partition.hpp"

namespace qeorbit {

/// Elementary symmetric polynomial e_k(x).  k = 0 gives 1; k > #x gives 0.
double elementary(int k, std::span<const double> x);

/// e_0..e_kmax in one pass (stable reverse-accumulation recurrence).
std::vector<double> elementary_all(int kmax, std::span<const double> x);

/// Power sum p_k(x) = sum x_i^k, compensated.  p_0 = #x.
double power_sum(int k, std::span<const double> x);

/// Complete homogeneous symmetric polynomial h_k(x) via the variable-by-
/// variable recurrence H_i(j) = H_{i-1}(j) + x_i H_i(j-1).
double complete_homogeneous(int k, std::span<const double> x);
std::vector<double> complete_homogeneous_all(int kmax, std::span<const double> x);

/// Schur polynomial via the Jacobi-Trudi determinant in the complete
/// homogeneous basis: S_lam = det(h_{lam_i - i + j}).
double schur(const Partition& lam, std::span<const double> x);

/// Newton's identities: recover (e_1..e_4) from (p_1..p_4).
/// Input/output arrays are 1-indexed conceptually: index 0 holds k=1.
std::array<double, 4> newton_e_from_p(const std::array<double, 4>& p);

/// Tabulated iterated Laplacian of the Schur polynomial at the origin:
/// weight-2 partitions give the single Laplacian, weight-4 the squared one,
/// as a function of the number of variables d.  Certified entry by entry
/// against a symbolic polynomial oracle (see tests).  Other weights throw
/// "degree not tabulated".
long long laplacian_at_zero(const Partition& mu, long long d);

}  // namespace qeorbit
