#include "qeorbit/partition.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace qeorbit {

Partition::Partition(std::initializer_list<int> parts)
    : Partition(std::vector<int>(parts)) {}

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  for (int p : parts_)
    if (p < 0) throw std::invalid_argument("partition parts must be nonnegative");
  std::sort(parts_.begin(), parts_.end(), std::greater<int>());
  while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
}

int Partition::weight() const {
  return std::accumulate(parts_.begin(), parts_.end(), 0);
}

Partition Partition::conjugate() const {
  std::vector<int> c;
  if (!parts_.empty()) {
    c.resize(parts_[0]);
    for (int j = 0; j < parts_[0]; ++j)
      c[j] = static_cast<int>(std::count_if(parts_.begin(), parts_.end(),
                                            [j](int p) { return p > j; }));
  }
  return Partition(std::move(c));
}

std::vector<int> Partition::hook_lengths() const {
  Partition conj = conjugate();
  std::vector<int> h;
  for (int i = 0; i < length(); ++i)
    for (int j = 0; j < parts_[i]; ++j)
      h.push_back((parts_[i] - j - 1) + (conj.parts()[j] - i - 1) + 1);
  return h;
}

std::vector<int> Partition::contents() const {
  std::vector<int> c;
  for (int i = 0; i < length(); ++i)
    for (int j = 0; j < parts_[i]; ++j) c.push_back(j - i);
  return c;
}

std::string Partition::str() const {
  std::string s = "(";
  for (int i = 0; i < length(); ++i) {
    if (i) s += ",";
    s += std::to_string(parts_[i]);
  }
  return s + ")";
}

bool operator<(const Partition& a, const Partition& b) {
  if (a.weight() != b.weight()) return a.weight() < b.weight();
  // reverse-lexicographic: larger leading parts come first
  return std::lexicographical_compare(b.parts_.begin(), b.parts_.end(),
                                      a.parts_.begin(), a.parts_.end());
}

std::vector<Partition> partitions_of(int k) {
  if (k < 0) throw std::invalid_argument("partitions_of: negative weight");
  std::vector<Partition> out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int rem, int mx) {
    if (rem == 0) {
      out.emplace_back(cur);
      return;
    }
    for (int p = std::min(rem, mx); p >= 1; --p) {
      cur.push_back(p);
      rec(rem - p, p);
      cur.pop_back();
    }
  };
  rec(k, k);
  return out;
}

long long factorial(int n) {
  long long f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

long long conjugacy_class_size(const Partition& cycle_type) {
  int k = cycle_type.weight();
  long long z = 1;
  int run = 0;
  int prev = -1;
  for (int p : cycle_type.parts()) {
    if (p == prev) {
      ++run;
    } else {
      prev = p;
      run = 1;
    }
    z *= p * run;  // accumulates i^{m_i} m_i! across the run
  }
  return factorial(k) / z;
}

}  // namespace qeorbit
