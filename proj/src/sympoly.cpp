#include "qeorbit/sympoly.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace qeorbit {

std::vector<double> elementary_all(int kmax, std::span<const double> x) {
  if (kmax < 0) throw std::invalid_argument("elementary: negative degree");
  const int m = static_cast<int>(x.size());
  std::vector<double> e(kmax + 1, 0.0);
  e[0] = 1.0;
  // after processing i variables, e[k] holds e_k of those variables
  for (int i = 0; i < m; ++i)
    for (int k = std::min(kmax, i + 1); k >= 1; --k) e[k] += x[i] * e[k - 1];
  return e;
}

double elementary(int k, std::span<const double> x) {
  if (k < 0) throw std::invalid_argument("elementary: negative degree");
  if (k > static_cast<int>(x.size())) return 0.0;
  return elementary_all(k, x)[k];
}

double power_sum(int k, std::span<const double> x) {
  if (k < 0) throw std::invalid_argument("power_sum: negative degree");
  double s = 0.0, c = 0.0;  // Neumaier compensation
  for (double xi : x) {
    double t = 1.0;
    for (int i = 0; i < k; ++i) t *= xi;
    double u = s + t;
    c += (std::abs(s) >= std::abs(t)) ? (s - u) + t : (t - u) + s;
    s = u;
  }
  return s + c;
}

std::vector<double> complete_homogeneous_all(int kmax, std::span<const double> x) {
  if (kmax < 0) throw std::invalid_argument("complete_homogeneous: negative degree");
  std::vector<double> h(kmax + 1, 0.0);
  h[0] = 1.0;
  for (double xi : x)
    for (int k = 1; k <= kmax; ++k) h[k] += xi * h[k - 1];
  return h;
}

double complete_homogeneous(int k, std::span<const double> x) {
  if (k < 0) throw std::invalid_argument("complete_homogeneous: negative degree");
  return complete_homogeneous_all(k, x)[k];
}

namespace {

double det_small(const std::vector<std::vector<double>>& a) {
  const int n = static_cast<int>(a.size());
  switch (n) {
    case 0: return 1.0;
    case 1: return a[0][0];
    case 2: return a[0][0] * a[1][1] - a[0][1] * a[1][0];
    default: {
      // cofactor expansion along the first row; n <= 4 in practice
      double s = 0.0;
      for (int j = 0; j < n; ++j) {
        std::vector<std::vector<double>> minor(n - 1, std::vector<double>(n - 1));
        for (int r = 1; r < n; ++r) {
          int cc = 0;
          for (int c = 0; c < n; ++c) {
            if (c == j) continue;
            minor[r - 1][cc++] = a[r][c];
          }
        }
        double term = a[0][j] * det_small(minor);
        s += (j % 2 == 0) ? term : -term;
      }
      return s;
    }
  }
}

}  // namespace

double schur(const Partition& lam, std::span<const double> x) {
  const int l = lam.length();
  if (l == 0) return 1.0;
  if (l > static_cast<int>(x.size())) return 0.0;  // too few variables
  const int hmax = lam.part(0) + l - 1;
  std::vector<double> h = complete_homogeneous_all(hmax, x);
  auto H = [&](int k) -> double {
    if (k < 0) return 0.0;
    return h[k];
  };
  std::vector<std::vector<double>> a(l, std::vector<double>(l));
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < l; ++j) a[i][j] = H(lam.part(i) - (i + 1) + (j + 1));
  return det_small(a);
}

std::array<double, 4> newton_e_from_p(const std::array<double, 4>& p) {
  std::array<double, 4> e{};
  e[0] = p[0];
  e[1] = (e[0] * p[0] - p[1]) / 2.0;
  e[2] = (e[1] * p[0] - e[0] * p[1] + p[2]) / 3.0;
  e[3] = (e[2] * p[0] - e[1] * p[1] + e[0] * p[2] - p[3]) / 4.0;
  return e;
}

long long laplacian_at_zero(const Partition& mu, long long d) {
  if (d < 1) throw std::invalid_argument("laplacian_at_zero: dimension must be >= 1");
  const int w = mu.weight();
  if (w == 2) {
    if (mu == Partition{1, 1}) return 0;
    if (mu == Partition{2}) return 2 * d;
  } else if (w == 4) {
    if (mu == Partition{1, 1, 1, 1}) return 0;
    if (mu == Partition{2, 1, 1}) return 0;
    if (mu == Partition{2, 2}) return 4 * d * (d - 1);
    if (mu == Partition{3, 1}) return 4 * d * (d - 1);
    if (mu == Partition{4}) return 4 * d * (d + 5);
  }
  throw std::invalid_argument("laplacian_at_zero: degree not tabulated for " + mu.str());
}

}  // namespace qeorbit
