#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qeorbit/partition.hpp"
#include "qeorbit/rational.hpp"

namespace qeorbit {

/// The symmetric group S_k for k <= 4: enumerated elements, composition,
/// inversion, and cycle type lookup.  Element 0 is the identity.
class SymmetricGroup {
 public:
  explicit SymmetricGroup(int k);

  int k() const { return k_; }
  int size() const { return static_cast<int>(perms_.size()); }
  const std::vector<int>& perm(int a) const { return perms_[a]; }
  /// Index of the permutation x -> a(b(x)).
  int compose(int a, int b) const { return compose_[a][b]; }
  int inverse(int a) const { return inverse_[a]; }
  /// Index of the cycle type of element a in types().
  int type_index(int a) const { return type_[a]; }
  /// Cycle types = partitions_of(k) in reverse-lexicographic order.
  const std::vector<Partition>& types() const { return types_; }

  static const SymmetricGroup& get(int k);

 private:
  int k_;
  std::vector<std::vector<int>> perms_;
  std::vector<std::vector<int>> compose_;
  std::vector<int> inverse_;
  std::vector<int> type_;
  std::vector<Partition> types_;
};

/// Integer character table of S_k, k <= 4.  Irreducible characters (rows)
/// and conjugacy classes (columns) are both indexed by partitions_of(k) in
/// reverse-lexicographic order.  Row and column orthogonality, the class
/// size census, and the hook length dimension formula are all re-verified
/// at construction; any mismatch throws.
class CharacterTable {
 public:
  static const CharacterTable& get(int k);

  int count() const { return static_cast<int>(labels_.size()); }
  long long value(int irrep, int cls) const { return chi_[irrep][cls]; }
  long long class_size(int cls) const { return class_size_[cls]; }
  /// chi_lambda(identity) = dimension of the irrep.
  long long dim(int irrep) const { return chi_[irrep][count() - 1]; }
  const std::vector<Partition>& labels() const { return labels_; }

 private:
  explicit CharacterTable(int k);
  void verify() const;

  int k_;
  std::vector<Partition> labels_;
  std::vector<std::vector<long long>> chi_;
  std::vector<long long> class_size_;
};

/// Ratio of two integer-coefficient polynomials in the dimension d
/// (coefficients ascending in degree).  Evaluation is exact via 128-bit
/// Horner; |d| is capped so intermediate products cannot overflow.
struct RationalFunction {
  std::vector<long long> num;
  std::vector<long long> den;

  Rational eval_at(long long d) const;
};

/// Unitary-group Weingarten function for moment degree k <= 4, as rational
/// functions of the dimension d, one per cycle type.  The rational forms
/// have poles at d < k; use wg_general for small dimensions.  At
/// construction every form is cross-checked against the character-sum
/// evaluation at several dimensions.
class WeingartenTable {
 public:
  static const WeingartenTable& get(int k);

  const RationalFunction& fn(const Partition& cycle_type) const;
  /// Exact value; requires d >= k (the rational form has poles below).
  Rational wg(const Partition& cycle_type, long long d) const;

 private:
  explicit WeingartenTable(int k);

  int k_;
  std::vector<Partition> types_;
  std::vector<RationalFunction> fns_;
};

/// Weingarten value by the character sum restricted to partitions with at
/// most d rows; valid at every d >= 1 (including d < k).
Rational wg_general(const Partition& cycle_type, long long d);

/// Schur polynomial of the given shape evaluated at d ones (hook content
/// formula), exact.
Rational schur_at_ones(const Partition& lambda, long long d);

/// Exact mixed entry moment
///   E[ U_{r0 c0} ... U_{r(k-1) c(k-1)} * conj(U_{s0 t0} ... U_{s(k-1) t(k-1)}) ]
/// for a Haar unitary of dimension d; k = r.size() <= 4.  All four spans
/// must have equal length and entries in [0, d).
Rational entry_moment(std::span<const int> r, std::span<const int> c,
                      std::span<const int> s, std::span<const int> t, long long d);

/// Exact E[Y] and E[Y^2] for Y = sum_j ( sum_i mu_i |U_ij|^2 )^2, where mu is
/// the input spectrum recentred to mean zero and U is Haar on U(d),
/// d = spectrum.size().  exact_m4 groups index tuples by coincidence
/// pattern; exact_m4_unreduced evaluates every tuple through entry_moment
/// with no grouping (slow; used as a differential check at small d).
Rational exact_m2(std::span<const Rational> spectrum);
Rational exact_m4(std::span<const Rational> spectrum);
Rational exact_m4_unreduced(std::span<const Rational> spectrum);

}  // namespace qeorbit
