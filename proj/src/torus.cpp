#include "qeorbit/torus.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

#include "qeorbit/haar.hpp"
#include "qeorbit/orbit.hpp"

namespace qeorbit {

namespace {

using int128 = __int128;

void check_dim(int dim) {
  if (dim < 2 || dim > 6) throw std::invalid_argument("dim must lie in [2, 6]");
}

long long isqrt_ll(long long n) {
  if (n < 0) return -1;
  auto r = static_cast<long long>(std::llround(std::sqrt(static_cast<double>(n))));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

// Neumaier-compensated accumulator.
struct Accum {
  double s = 0.0, c = 0.0;
  void add(double x) {
    const double t = s + x;
    c += (std::abs(s) >= std::abs(x)) ? (s - t) + x : (x - t) + s;
    s = t;
  }
  double value() const { return s + c; }
};

MCEstimate summarize(const std::vector<double>& v) {
  MCEstimate e;
  e.n = static_cast<long>(v.size());
  if (v.empty()) return e;
  Accum m;
  for (double x : v) m.add(x);
  e.mean = m.value() / static_cast<double>(v.size());
  if (v.size() >= 2) {
    Accum q;
    for (double x : v) {
      const double dx = x - e.mean;
      q.add(dx * dx);
    }
    const double var = q.value() / static_cast<double>(v.size() - 1);
    e.sem = std::sqrt(std::max(0.0, var) / static_cast<double>(v.size()));
  }
  return e;
}

int exponent_at(const MonomialTerm& t, int i) {
  return i < static_cast<int>(t.exponents.size()) ? t.exponents[i] : 0;
}

double odd_double_factorial(int m) {  // (m)!! for odd m >= -1
  double r = 1.0;
  for (int k = m; k >= 3; k -= 2) r *= static_cast<double>(k);
  return r;
}

}  // namespace

LatticeShell lattice_shell(int dim, long long n) {
  check_dim(dim);
  if (n < 1) throw std::invalid_argument("squared radius must be >= 1");
  LatticeShell shell;
  shell.dim = dim;
  shell.n = n;
  std::vector<int> point(static_cast<size_t>(dim), 0);
  // Depth-first over coordinates, ascending values: output is lexicographic.
  std::function<void(int, long long)> rec = [&](int coord, long long rem) {
    if (coord == dim - 1) {
      const long long r = isqrt_ll(rem);
      if (r * r != rem) return;
      if (r == 0) {
        point[static_cast<size_t>(coord)] = 0;
        shell.points.push_back(point);
      } else {
        point[static_cast<size_t>(coord)] = static_cast<int>(-r);
        shell.points.push_back(point);
        point[static_cast<size_t>(coord)] = static_cast<int>(r);
        shell.points.push_back(point);
      }
      return;
    }
    const long long r = isqrt_ll(rem);
    for (long long x = -r; x <= r; ++x) {
      point[static_cast<size_t>(coord)] = static_cast<int>(x);
      rec(coord + 1, rem - x * x);
    }
  };
  rec(0, n);
  if (shell.points.empty())
    throw std::runtime_error("no lattice points on shell n = " + std::to_string(n));
  // The last coordinate emits -r before +r, so resort to guarantee strict
  // lexicographic order.
  std::sort(shell.points.begin(), shell.points.end());
  return shell;
}

std::vector<std::pair<long long, long long>> multiplicity_counts(int dim, long long n_max) {
  check_dim(dim);
  if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
  std::vector<long long> counts(static_cast<size_t>(n_max) + 1, 0);
  std::function<void(int, long long)> rec = [&](int coord, long long used) {
    if (coord == dim) {
      ++counts[static_cast<size_t>(used)];
      return;
    }
    const long long r = isqrt_ll(n_max - used);
    for (long long x = -r; x <= r; ++x) rec(coord + 1, used + x * x);
  };
  rec(0, 0);
  std::vector<std::pair<long long, long long>> out;
  for (long long n = 1; n <= n_max; ++n)
    if (counts[static_cast<size_t>(n)] > 0) out.emplace_back(n, counts[static_cast<size_t>(n)]);
  return out;
}

MultiplicitySequence multiplicity_sequence(int dim, long long n_max,
                                           long long min_multiplicity) {
  MultiplicitySequence seq;
  for (const auto& [n, d] : multiplicity_counts(dim, n_max))
    if (d >= min_multiplicity) seq.shells.emplace_back(n, d);
  // Regress log multiplicity on log sqrt(n) over the upper half of the range.
  std::vector<double> xs, ys;
  for (const auto& [n, d] : seq.shells) {
    if (2 * n <= n_max) continue;
    xs.push_back(0.5 * std::log(static_cast<double>(n)));
    ys.push_back(std::log(static_cast<double>(d)));
  }
  seq.regression_points = static_cast<int>(xs.size());
  if (xs.size() >= 2) {
    Accum sx, sy;
    for (double x : xs) sx.add(x);
    for (double y : ys) sy.add(y);
    const double mx = sx.value() / static_cast<double>(xs.size());
    const double my = sy.value() / static_cast<double>(ys.size());
    Accum sxx, sxy;
    for (size_t i = 0; i < xs.size(); ++i) {
      sxx.add((xs[i] - mx) * (xs[i] - mx));
      sxy.add((xs[i] - mx) * (ys[i] - my));
    }
    if (sxx.value() > 0) seq.loglog_slope = sxy.value() / sxx.value();
  }
  return seq;
}

double Multiplier::eval(const Eigen::VectorXd& u) const {
  Accum total;
  for (const auto& t : terms) {
    double prod = t.coeff;
    for (int i = 0; i < static_cast<int>(u.size()); ++i) {
      const int a = exponent_at(t, i);
      for (int k = 0; k < a; ++k) prod *= u[i];
    }
    total.add(prod);
  }
  return total.value();
}

double Multiplier::sphere_average(int dim) const {
  check_dim(dim);
  Accum total;
  for (const auto& t : terms) {
    bool odd = false;
    int big = 0;  // B = half the total degree
    double num = 1.0;
    for (int a : t.exponents) {
      if (a < 0) throw std::invalid_argument("negative exponent");
      if (a % 2 == 1) {
        odd = true;
        break;
      }
      big += a / 2;
      num *= odd_double_factorial(a - 1);
    }
    if (odd) continue;  // averages to exactly zero
    double den = 1.0;
    for (int j = 0; j < big; ++j) den *= static_cast<double>(dim + 2 * j);
    total.add(t.coeff * num / den);
  }
  return total.value();
}

double TorusObservable::liouville() const {
  const auto it = potential.find(std::vector<int>(static_cast<size_t>(dim), 0));
  const double c0 = it == potential.end() ? 0.0 : it->second.real();
  return c0 * multiplier.sphere_average(dim);
}

TorusObservable make_torus_observable(int dim,
                                      std::map<std::vector<int>, std::complex<double>> potential,
                                      Multiplier multiplier) {
  check_dim(dim);
  for (const auto& [m, c] : potential) {
    if (static_cast<int>(m.size()) != dim)
      throw std::invalid_argument("frequency vector has wrong dimension");
    std::vector<int> neg(m.size());
    for (size_t i = 0; i < m.size(); ++i) neg[i] = -m[i];
    const auto it = potential.find(neg);
    const std::complex<double> other = it == potential.end() ? std::complex<double>(0.0, 0.0)
                                                             : it->second;
    const double scale = std::max(1.0, std::abs(c));
    if (std::abs(other - std::conj(c)) > 1e-12 * scale)
      throw std::invalid_argument("Fourier data is not Hermitian");
  }
  TorusObservable obs;
  obs.dim = dim;
  obs.potential = std::move(potential);
  obs.multiplier = std::move(multiplier);
  return obs;
}

TorusObservable default_observable(int dim) {
  check_dim(dim);
  std::map<std::vector<int>, std::complex<double>> pot;
  std::vector<int> zero(static_cast<size_t>(dim), 0);
  pot[zero] = {0.3, 0.0};
  std::vector<int> m(static_cast<size_t>(dim), 0);
  m[0] = 1;
  m[1] = 1;
  std::vector<int> neg(static_cast<size_t>(dim), 0);
  neg[0] = -1;
  neg[1] = -1;
  pot[m] = {0.5, 0.0};
  pot[neg] = {0.5, 0.0};
  Multiplier g;
  g.terms.push_back({1.0, {}});
  g.terms.push_back({1.0, {2}});  // 1 + u_1^2
  return make_torus_observable(dim, std::move(pot), std::move(g));
}

TorusObservable scalar_observable(int dim, double c0) {
  check_dim(dim);
  std::map<std::vector<int>, std::complex<double>> pot;
  pot[std::vector<int>(static_cast<size_t>(dim), 0)] = {c0, 0.0};
  Multiplier g;
  g.terms.push_back({1.0, {}});  // constant symbol
  return make_torus_observable(dim, std::move(pot), std::move(g));
}

HermitianCompression compress_observable(const LatticeShell& shell,
                                         const TorusObservable& obs) {
  if (shell.dim != obs.dim) throw std::invalid_argument("shell/observable dimension mismatch");
  const int d = static_cast<int>(shell.multiplicity());
  const double gbar = obs.multiplier.sphere_average(obs.dim);
  Eigen::MatrixXcd t = Eigen::MatrixXcd::Zero(d, d);
  std::vector<int> diff(static_cast<size_t>(obs.dim));
  Eigen::VectorXd u(obs.dim);
  for (int r = 0; r < d; ++r) {
    const auto& k = shell.points[static_cast<size_t>(r)];
    for (int c = 0; c < d; ++c) {
      const auto& l = shell.points[static_cast<size_t>(c)];
      for (int i = 0; i < obs.dim; ++i) diff[static_cast<size_t>(i)] = l[static_cast<size_t>(i)] - k[static_cast<size_t>(i)];
      const auto it = obs.potential.find(diff);
      if (it == obs.potential.end()) continue;
      long long norm2 = 0;
      for (int i = 0; i < obs.dim; ++i) {
        const long long s = static_cast<long long>(k[static_cast<size_t>(i)]) + l[static_cast<size_t>(i)];
        norm2 += s * s;
      }
      double factor;
      if (norm2 == 0) {
        factor = gbar;
      } else {
        const double inv = 1.0 / std::sqrt(static_cast<double>(norm2));
        for (int i = 0; i < obs.dim; ++i)
          u[i] = (static_cast<double>(k[static_cast<size_t>(i)]) + l[static_cast<size_t>(i)]) * inv;
        factor = obs.multiplier.eval(u);
      }
      t(r, c) = it->second * factor;
    }
  }
  Eigen::MatrixXcd herm = 0.5 * (t + t.adjoint().eval());
  return make_compression(std::move(herm), obs.liouville());
}

std::vector<double> local_weyl_check(const std::vector<LatticeShell>& shells,
                                     const TorusObservable& obs) {
  const auto it0 = obs.potential.find(std::vector<int>(static_cast<size_t>(obs.dim), 0));
  const double c0 = it0 == obs.potential.end() ? 0.0 : it0->second.real();
  const double omega = obs.liouville();
  std::vector<double> out;
  out.reserve(shells.size());
  Eigen::VectorXd u(obs.dim);
  for (const auto& shell : shells) {
    if (shell.dim != obs.dim) throw std::invalid_argument("shell/observable dimension mismatch");
    // Diagonal entries are c_0 * g(k/|k|); no matrix is built.
    std::vector<double> diag;
    diag.reserve(shell.points.size());
    const double inv = 1.0 / std::sqrt(static_cast<double>(shell.n));
    for (const auto& k : shell.points) {
      for (int i = 0; i < obs.dim; ++i) u[i] = static_cast<double>(k[static_cast<size_t>(i)]) * inv;
      diag.push_back(c0 * obs.multiplier.eval(u));
    }
    const auto [lo, hi] = std::minmax_element(diag.begin(), diag.end());
    double mean;
    if (*lo == *hi) {
      mean = *lo;  // constant diagonal: the mean (and the deviation) is exact
    } else {
      Accum a;
      for (double v : diag) a.add(v);
      mean = a.value() / static_cast<double>(diag.size());
    }
    out.push_back(mean - omega);
  }
  return out;
}

double direction_deviation(const LatticeShell& shell, const Multiplier& g) {
  const double d = static_cast<double>(shell.multiplicity());
  Accum total;
  for (const auto& t : g.terms) {
    int degree = 0;
    for (int a : t.exponents) {
      if (a < 0) throw std::invalid_argument("negative exponent");
      degree += a;
    }
    if (degree == 0) {
      total.add(t.coeff);
      continue;
    }
    // Integer lattice sum of the monomial over the shell; sign symmetries and
    // coordinate exchanges cancel exactly here, before any division.
    int128 lattice_sum = 0;
    for (const auto& k : shell.points) {
      int128 prod = 1;
      for (size_t i = 0; i < k.size(); ++i) {
        const int a = exponent_at(t, static_cast<int>(i));
        for (int e = 0; e < a; ++e) prod *= k[i];
      }
      lattice_sum += prod;
    }
    if (lattice_sum == 0) continue;  // exactly zero contribution
    double scale = 1.0;  // |k|^degree = n^{degree/2}
    if (degree % 2 == 0) {
      int128 p = 1;
      for (int e = 0; e < degree / 2; ++e) p *= shell.n;
      scale = static_cast<double>(p);
    } else {
      scale = std::pow(static_cast<double>(shell.n), 0.5 * degree);
    }
    total.add(t.coeff * (static_cast<double>(lattice_sum) / scale) / d);
  }
  return total.value();
}

std::vector<double> direction_equidistribution(const LatticeShell& shell,
                                               const std::vector<Multiplier>& tests) {
  std::vector<double> out;
  out.reserve(tests.size());
  for (const auto& g : tests) out.push_back(direction_deviation(shell, g));
  return out;
}

TorusQEResult qe_experiment(const std::vector<LatticeShell>& shells,
                            const TorusObservable& obs, int onb_draws,
                            std::uint64_t seed) {
  if (onb_draws < 1) throw std::invalid_argument("onb_draws must be >= 1");
  TorusQEResult result;
  result.seed = seed;
  result.draws = onb_draws;
  result.shells.reserve(shells.size());

  Accum s_partial, inv_d_sum;
  std::vector<double> inv_ds;
  long level = 0;
  Accum cesaro_sum;

  for (const auto& shell : shells) {
    const HermitianCompression comp = compress_observable(shell, obs);
    const int d = comp.d();
    ShellQERecord rec;
    rec.n = shell.n;
    rec.d = d;
    rec.trace_mean = comp.trace_mean;
    rec.liouville = comp.liouville_mean;
    rec.p2 = comp.spectrum.p2();
    rec.ey_exact = moment2_exact(comp.spectrum);

    HaarSampler sampler(seed, static_cast<std::uint64_t>(level) + 1, d);
    std::vector<double> ys, vts, vls;
    ys.reserve(static_cast<size_t>(onb_draws));
    vts.reserve(static_cast<size_t>(onb_draws));
    vls.reserve(static_cast<size_t>(onb_draws));
    for (int t = 0; t < onb_draws; ++t) {
      const Eigen::MatrixXcd u = sampler.unitary();
      ys.push_back(Y_value(comp, u));
      vts.push_back(quantum_variance(comp, u, Reference::trace_mean));
      vls.push_back(quantum_variance(comp, u, Reference::liouville));
    }
    rec.y_first = ys.front();
    rec.y = summarize(ys);
    rec.v_trace = summarize(vts);
    rec.v_liouville = summarize(vls);
    result.shells.push_back(rec);

    // Running-sum record built from the first draw of each shell.
    ++level;
    const double dd = static_cast<double>(d);
    LevelRecord lr;
    lr.level = level;
    lr.d = d;
    lr.y = rec.y_first;
    lr.y_mean_exact = rec.ey_exact;
    lr.v_trace = rec.y_first / dd;
    s_partial.add((rec.y_first - rec.ey_exact) / dd);
    cesaro_sum.add(rec.y_first / dd);
    lr.s_partial = s_partial.value();
    lr.cesaro = cesaro_sum.value() / static_cast<double>(level);
    result.run.levels.push_back(lr);
    inv_d_sum.add(1.0 / dd);
    inv_ds.push_back(1.0 / dd);
  }

  result.run.seed = seed;
  if (!result.run.levels.empty()) {
    result.run.s_final = result.run.levels.back().s_partial;
    result.run.cesaro_final = result.run.levels.back().cesaro;
    result.run.sum_inv_d = inv_d_sum.value();
    Accum tail;
    for (size_t i = inv_ds.size() / 2; i < inv_ds.size(); ++i) tail.add(inv_ds[i]);
    result.run.tail_inv_d_fraction =
        result.run.sum_inv_d > 0 ? tail.value() / result.run.sum_inv_d : 0.0;
  }
  return result;
}

}  // namespace qeorbit
