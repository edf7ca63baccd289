#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace qeorbit {

/// Integer partition: weakly decreasing positive parts.  Construction
/// normalizes (sorts descending, strips zeros) and rejects negatives.
class Partition {
public:
  Partition() = default;
  Partition(std::initializer_list<int> parts);
  explicit Partition(std::vector<int> parts);

  const std::vector<int>& parts() const { return parts_; }
  int weight() const;                  // sum of parts
  int length() const { return static_cast<int>(parts_.size()); }
  int part(int i) const { return i < length() ? parts_[i] : 0; }
  Partition conjugate() const;

  /// Multiset of hook lengths, row-major over the diagram.
  std::vector<int> hook_lengths() const;
  /// Multiset of contents j - i, row-major over the diagram.
  std::vector<int> contents() const;

  std::string str() const;             // "(3,1)"

  friend bool operator==(const Partition& a, const Partition& b) {
    return a.parts_ == b.parts_;
  }
  friend bool operator!=(const Partition& a, const Partition& b) { return !(a == b); }
  /// Reverse-lexicographic total order on equal weight: (4) < (3,1) < (2,2) < ...
  friend bool operator<(const Partition& a, const Partition& b);

private:
  std::vector<int> parts_;
};

/// All partitions of k in reverse-lexicographic order: (k) first, (1^k) last.
std::vector<Partition> partitions_of(int k);

/// Size of the conjugacy class of S_k with the given cycle type: k!/z_rho,
/// z_rho = prod over part sizes i of i^{m_i} m_i!.
long long conjugacy_class_size(const Partition& cycle_type);

long long factorial(int n);

}  // namespace qeorbit
