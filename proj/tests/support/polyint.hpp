#pragma once

// Test-only exact multivariate integer polynomials: just enough machinery to
// expand Schur polynomials symbolically, apply the Euclidean Laplacian, and
// read off constant terms with no floating point anywhere.

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>
#include <vector>

#include "qeorbit/partition.hpp"

namespace polyint {

using Monomial = std::vector<int>;  // exponent per variable

struct Poly {
  int nvars = 0;
  std::map<Monomial, long long> coeff;  // monomial -> integer coefficient

  static Poly zero(int nvars) { return Poly{nvars, {}}; }

  static Poly constant(int nvars, long long c) {
    Poly p{nvars, {}};
    if (c != 0) p.coeff[Monomial(static_cast<size_t>(nvars), 0)] = c;
    return p;
  }

  static Poly var(int nvars, int i) {
    Poly p{nvars, {}};
    Monomial m(static_cast<size_t>(nvars), 0);
    m[static_cast<size_t>(i)] = 1;
    p.coeff[m] = 1;
    return p;
  }

  Poly operator+(const Poly& o) const {
    Poly r = *this;
    for (const auto& [m, c] : o.coeff) {
      r.coeff[m] += c;
      if (r.coeff[m] == 0) r.coeff.erase(m);
    }
    return r;
  }

  Poly operator-(const Poly& o) const { return *this + o * -1; }

  Poly operator*(long long s) const {
    Poly r{nvars, {}};
    if (s == 0) return r;
    for (const auto& [m, c] : coeff) r.coeff[m] = c * s;
    return r;
  }

  Poly operator*(const Poly& o) const {
    Poly r{nvars, {}};
    for (const auto& [ma, ca] : coeff)
      for (const auto& [mb, cb] : o.coeff) {
        Monomial m(ma.size());
        for (size_t i = 0; i < ma.size(); ++i) m[i] = ma[i] + mb[i];
        r.coeff[m] += ca * cb;
        if (r.coeff[m] == 0) r.coeff.erase(m);
      }
    return r;
  }

  // sum_i d^2/dx_i^2
  Poly laplacian() const {
    Poly r{nvars, {}};
    for (const auto& [m, c] : coeff)
      for (size_t i = 0; i < m.size(); ++i) {
        if (m[i] < 2) continue;
        Monomial d = m;
        d[i] -= 2;
        r.coeff[d] += c * m[i] * (m[i] - 1);
        if (r.coeff[d] == 0) r.coeff.erase(d);
      }
    return r;
  }

  long long at_zero() const {
    const auto it = coeff.find(Monomial(static_cast<size_t>(nvars), 0));
    return it == coeff.end() ? 0 : it->second;
  }
};

// Complete homogeneous symmetric polynomial h_k in nvars variables: the sum
// of every degree-k monomial with coefficient one.
inline Poly complete_poly(int k, int nvars) {
  if (k < 0) return Poly::zero(nvars);
  if (k == 0) return Poly::constant(nvars, 1);
  Poly r = Poly::zero(nvars);
  Monomial m(static_cast<size_t>(nvars), 0);
  // enumerate compositions of k into nvars nonnegative parts
  std::vector<int> stack;
  std::function<void(int, int)> rec = [&](int var, int rem) {
    if (var == nvars - 1) {
      m[static_cast<size_t>(var)] = rem;
      r.coeff[m] += 1;
      return;
    }
    for (int a = 0; a <= rem; ++a) {
      m[static_cast<size_t>(var)] = a;
      rec(var + 1, rem - a);
    }
  };
  rec(0, k);
  return r;
}

// Schur polynomial via the Jacobi-Trudi determinant det(h_{lam_i - i + j}).
inline Poly schur_poly(const qeorbit::Partition& lam, int nvars) {
  const int l = lam.length();
  if (l == 0) return Poly::constant(nvars, 1);
  if (l > nvars) return Poly::zero(nvars);
  std::vector<std::vector<Poly>> h(static_cast<size_t>(l),
                                   std::vector<Poly>(static_cast<size_t>(l), Poly::zero(nvars)));
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < l; ++j)
      h[static_cast<size_t>(i)][static_cast<size_t>(j)] =
          complete_poly(lam.part(i) - i + j, nvars);
  // expand the determinant over permutations (l <= 4 here)
  std::vector<int> perm(static_cast<size_t>(l));
  for (int i = 0; i < l; ++i) perm[static_cast<size_t>(i)] = i;
  Poly det = Poly::zero(nvars);
  do {
    int inv = 0;
    for (int a = 0; a < l; ++a)
      for (int b = a + 1; b < l; ++b)
        if (perm[static_cast<size_t>(a)] > perm[static_cast<size_t>(b)]) ++inv;
    Poly term = Poly::constant(nvars, (inv % 2 == 0) ? 1 : -1);
    for (int i = 0; i < l; ++i)
      term = term * h[static_cast<size_t>(i)][static_cast<size_t>(perm[static_cast<size_t>(i)])];
    det = det + term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

}  // namespace polyint
