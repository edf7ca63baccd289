#include "qeorbit/orbit.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "qeorbit/kernels.hpp"
#include "qeorbit/partition.hpp"
#include "qeorbit/rational.hpp"
#include "qeorbit/sympoly.hpp"
#include "qeorbit/weingarten.hpp"

namespace qeorbit {

Eigen::VectorXd moment_map_diagonal(const Eigen::MatrixXcd& u, const SpectrumVector& s) {
  const int d = s.d();
  if (u.rows() != d || u.cols() != d)
    throw std::invalid_argument("moment_map_diagonal: dimension mismatch");
  const double dev = (u.adjoint() * u - Eigen::MatrixXcd::Identity(d, d))
                         .cwiseAbs()
                         .maxCoeff();
  if (dev > 1e-10) throw std::invalid_argument("not unitary");
  Eigen::VectorXd out(d);
  kernels::active_kernels().weighted_abs2_rowsum(u.data(), d, s.centered.data(),
                                                 out.data());
  return out;
}

Eigen::VectorXd permutohedron_center_of_mass(const Eigen::VectorXd& lambda) {
  if (lambda.size() == 0)
    throw std::invalid_argument("permutohedron_center_of_mass: empty input");
  const SpectrumVector s = SpectrumVector::from_raw(lambda);
  return Eigen::VectorXd::Constant(lambda.size(), s.mean);
}

double moment2_exact(const SpectrumVector& s) {
  const double d = static_cast<double>(s.d());
  return s.p2() / (d + 1.0);
}

double moment4_exact(const SpectrumVector& s) {
  const double d = static_cast<double>(s.d());
  const double p2 = s.p2();
  const double p4 = s.p4();
  const double c22 = (d * d + 6.0 * d + 6.0) / (d * (d + 1.0) * (d + 2.0) * (d + 3.0));
  const double c4 = 2.0 / ((d + 1.0) * (d + 2.0) * (d + 3.0));
  return c22 * p2 * p2 + c4 * p4;
}

double variance_Y(const SpectrumVector& s) {
  const double m2 = moment2_exact(s);
  return moment4_exact(s) - m2 * m2;
}

double beta4_statement(long long d) {
  if (d < 3) throw std::domain_error("beta4 forms have a pole at d = 2; need d >= 3");
  const double dd = static_cast<double>(d);
  return 4.0 * dd * (dd - 1.0) / ((dd + 1.0) * dd * dd * (dd - 1.0)) -
         4.0 * dd * (dd - 1.0) / ((dd + 2.0) * (dd + 1.0) * dd * (dd - 2.0)) +
         (12.0 * dd * dd + 4.0 * dd * (dd - 1.0)) /
             ((dd + 3.0) * (dd + 2.0) * (dd + 1.0) * dd);
}

double beta4_resolved(long long d) {
  if (d < 3) throw std::domain_error("beta4 forms have a pole at d = 2; need d >= 3");
  const double dd = static_cast<double>(d);
  return dd * (dd - 1.0) / ((dd + 1.0) * dd * dd * (dd - 1.0)) -
         dd * (dd - 1.0) / ((dd + 2.0) * (dd + 1.0) * dd * (dd - 2.0)) +
         (3.0 * dd * dd + dd * (dd - 1.0)) /
             ((dd + 3.0) * (dd + 2.0) * (dd + 1.0) * dd);
}

std::complex<double> orbital_fourier_truncated(const SpectrumVector& s,
                                               const Eigen::VectorXd& x,
                                               int max_degree) {
  const int d = s.d();
  if (x.size() != d)
    throw std::invalid_argument("orbital_fourier_truncated: direction dim mismatch");
  if (max_degree < 0 || max_degree > 4)
    throw std::invalid_argument("orbital_fourier_truncated: max_degree must be 0..4");
  const std::span<const double> xs(x.data(), static_cast<std::size_t>(x.size()));
  const std::span<const double> ms(s.centered.data(),
                                   static_cast<std::size_t>(s.centered.size()));
  static const std::complex<double> unit_powers[4] = {
      {1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
  std::complex<double> total(1.0, 0.0);  // empty partition
  for (int w = 1; w <= max_degree; ++w) {
    for (const Partition& mu : partitions_of(w)) {
      if (mu.length() > d) continue;
      double logpref = 0.0;
      for (int i = 1; i <= mu.length(); ++i)
        logpref += std::lgamma(static_cast<double>(d - i + 1)) -
                   std::lgamma(static_cast<double>(mu.part(i - 1) + d - i + 1));
      const double term = std::exp(logpref) * schur(mu, xs) * schur(mu, ms);
      total += unit_powers[w % 4] * term;
    }
  }
  return total;
}

namespace {

// Exact rationalization when every entry is a multiple of 1/1000 (up to one
// part in 1e9); the oracle path is reserved for such small-scale spectra.
std::optional<std::vector<Rational>> try_rationalize(const Eigen::VectorXd& v) {
  std::vector<Rational> out;
  out.reserve(static_cast<std::size_t>(v.size()));
  for (int i = 0; i < v.size(); ++i) {
    const double scaled = v[i] * 1000.0;
    const double rounded = std::round(scaled);
    if (std::abs(scaled - rounded) > 1e-9 * std::max(1.0, std::abs(scaled)))
      return std::nullopt;
    if (std::abs(rounded) > 9e15) return std::nullopt;
    out.emplace_back(static_cast<long long>(rounded), 1000);
  }
  return out;
}

}  // namespace

MomentReport build_moment_report(const SpectrumVector& s, long samples,
                                 std::uint64_t seed) {
  MomentReport r;
  r.d = s.d();
  r.m2_exact = moment2_exact(s);
  r.m4_exact = moment4_exact(s);
  r.variance_exact = variance_Y(s);
  r.sample_count = samples;
  r.seed = seed;
  HaarSampler sampler(seed, 0, s.d());
  r.m2_mc = mc_moment(s, 2, samples, sampler);
  HaarSampler sampler4 = sampler.child(0);
  r.m4_mc = mc_moment(s, 4, samples, sampler4);
  if (s.d() > 12) {
    r.oracle_note = "oracle skipped: d > 12";
    return r;
  }
  const auto rat = try_rationalize(s.raw);
  if (!rat) {
    r.oracle_note = "oracle skipped: spectrum entries are not multiples of 1/1000";
    return r;
  }
  try {
    r.m2_weingarten = exact_m2(*rat).to_double();
    r.m4_weingarten = exact_m4(*rat).to_double();
  } catch (const std::overflow_error&) {
    r.m2_weingarten.reset();
    r.m4_weingarten.reset();
    r.oracle_note = "oracle skipped: exact arithmetic overflow at this scale";
  }
  return r;
}

}  // namespace qeorbit
