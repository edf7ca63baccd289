#include "qeorbit/haar.hpp"

#include <cmath>
#include <stdexcept>

#include "qeorbit/kernels.hpp"

namespace qeorbit {

namespace {

// Neumaier-compensated running sum.
struct Accum {
  double s = 0.0, c = 0.0;
  void add(double x) {
    const double t = s + x;
    c += (std::abs(s) >= std::abs(x)) ? (s - t) + x : (x - t) + s;
    s = t;
  }
  double value() const { return s + c; }
};

double sem_of(const Accum& sum, const Accum& sumsq, long n) {
  if (n < 2) return 0.0;
  const double mean = sum.value() / static_cast<double>(n);
  const double var = (sumsq.value() - static_cast<double>(n) * mean * mean) /
                     static_cast<double>(n - 1);
  return std::sqrt(std::max(var, 0.0) / static_cast<double>(n));
}

}  // namespace

HaarSampler::HaarSampler(std::uint64_t seed, std::uint64_t stream, int d)
    : seed_(seed), stream_(stream), d_(d), gauss_(seed, stream) {
  if (d < 1) throw std::invalid_argument("HaarSampler: d must be >= 1");
}

Eigen::MatrixXcd HaarSampler::ginibre() {
  Eigen::MatrixXcd a(d_, d_);
  for (int j = 0; j < d_; ++j)
    for (int i = 0; i < d_; ++i) {
      const double re = gauss_.next();
      const double im = gauss_.next();
      a(i, j) = std::complex<double>(re, im);
    }
  return a;
}

Eigen::MatrixXcd HaarSampler::qr_unitary(bool fix_phases) {
  Eigen::MatrixXcd a = ginibre();
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
  Eigen::MatrixXcd q = qr.householderQ();
  if (fix_phases) {
    for (int j = 0; j < d_; ++j) {
      const std::complex<double> r = qr.matrixQR()(j, j);
      const double m = std::abs(r);
      if (m > 0.0) q.col(j) *= r / m;
    }
  }
  return q;
}

Eigen::MatrixXcd HaarSampler::unitary() { return qr_unitary(true); }

Eigen::MatrixXcd HaarSampler::unitary_unfixed() { return qr_unitary(false); }

MCEstimate mc_moment(const SpectrumVector& s, int k, long n, HaarSampler& sampler) {
  if (k != 2 && k != 4) throw std::invalid_argument("mc_moment: k must be 2 or 4");
  if (n < 1) throw std::invalid_argument("mc_moment: n must be >= 1");
  const int d = s.d();
  if (sampler.dim() != d) throw std::invalid_argument("mc_moment: sampler dim mismatch");
  const auto& ker = kernels::active_kernels();
  Eigen::VectorXd x(d);
  Accum sum, sumsq;
  for (long t = 0; t < n; ++t) {
    const Eigen::MatrixXcd u = sampler.unitary();
    ker.weighted_abs2_colsum(u.data(), d, s.centered.data(), x.data());
    const double y = ker.sum_squares(x.data(), d);
    const double v = (k == 2) ? y : y * y;
    sum.add(v);
    sumsq.add(v * v);
  }
  return MCEstimate{sum.value() / static_cast<double>(n), sem_of(sum, sumsq, n), n};
}

MCComplexEstimate mc_characteristic(const SpectrumVector& s, const Eigen::VectorXd& x,
                                    long n, HaarSampler& sampler) {
  if (n < 1) throw std::invalid_argument("mc_characteristic: n must be >= 1");
  const int d = s.d();
  if (x.size() != d) throw std::invalid_argument("mc_characteristic: direction dim mismatch");
  if (sampler.dim() != d)
    throw std::invalid_argument("mc_characteristic: sampler dim mismatch");
  const auto& ker = kernels::active_kernels();
  Eigen::VectorXd y(d);
  Accum sre, sim, sre2, sim2;
  for (long t = 0; t < n; ++t) {
    const Eigen::MatrixXcd u = sampler.unitary();
    ker.weighted_abs2_colsum(u.data(), d, s.centered.data(), y.data());
    const double phase = ker.dot(x.data(), y.data(), d);
    const double cr = std::cos(phase);
    const double ci = std::sin(phase);
    sre.add(cr);
    sim.add(ci);
    sre2.add(cr * cr);
    sim2.add(ci * ci);
  }
  const double nr = static_cast<double>(n);
  MCComplexEstimate e;
  e.mean = {sre.value() / nr, sim.value() / nr};
  const double vr = (n > 1) ? (sre2.value() - nr * e.mean.real() * e.mean.real()) / (nr - 1) : 0.0;
  const double vi = (n > 1) ? (sim2.value() - nr * e.mean.imag() * e.mean.imag()) / (nr - 1) : 0.0;
  e.sem = std::sqrt(std::max(vr + vi, 0.0) / nr);
  e.n = n;
  return e;
}

MCEstimate mc_entry_moment22(int i1, int j1, int i2, int j2, long n, HaarSampler& sampler) {
  if (n < 1) throw std::invalid_argument("mc_entry_moment22: n must be >= 1");
  const int d = sampler.dim();
  if (i1 < 0 || i1 >= d || j1 < 0 || j1 >= d || i2 < 0 || i2 >= d || j2 < 0 || j2 >= d)
    throw std::invalid_argument("mc_entry_moment22: index out of range");
  Accum sum, sumsq;
  for (long t = 0; t < n; ++t) {
    const Eigen::MatrixXcd u = sampler.unitary();
    const double v = std::norm(u(i1, j1)) * std::norm(u(i2, j2));
    sum.add(v);
    sumsq.add(v * v);
  }
  return MCEstimate{sum.value() / static_cast<double>(n), sem_of(sum, sumsq, n), n};
}

}  // namespace qeorbit
