#include "qeorbit/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>

#include "qeorbit/sympoly.hpp"

namespace qeorbit {

namespace {
double compensated_sum(const Eigen::VectorXd& v) {
  double s = 0.0, c = 0.0;
  for (int i = 0; i < v.size(); ++i) {
    const double x = v[i];
    const double t = s + x;
    c += (std::abs(s) >= std::abs(x)) ? (s - t) + x : (x - t) + s;
    s = t;
  }
  return s + c;
}
}  // namespace

SpectrumVector SpectrumVector::from_raw(Eigen::VectorXd raw) {
  if (raw.size() == 0) throw std::invalid_argument("spectrum must be nonempty");
  SpectrumVector s;
  if (raw.maxCoeff() == raw.minCoeff()) {
    // constant spectra center to exactly zero
    s.mean = raw[0];
    s.centered = Eigen::VectorXd::Zero(raw.size());
    s.raw = std::move(raw);
    return s;
  }
  s.mean = compensated_sum(raw) / static_cast<double>(raw.size());
  s.centered = raw.array() - s.mean;
  // one residual sweep pushes the centered sum to a few ulps
  const double r = compensated_sum(s.centered) / static_cast<double>(raw.size());
  s.centered.array() -= r;
  s.raw = std::move(raw);
  return s;
}

SpectrumVector SpectrumVector::uniform_grid(int d, double lo, double hi) {
  if (d < 1) throw std::invalid_argument("uniform_grid: d must be >= 1");
  Eigen::VectorXd v(d);
  if (d == 1) {
    v[0] = 0.5 * (lo + hi);
  } else {
    for (int j = 0; j < d; ++j)
      v[j] = lo + (hi - lo) * static_cast<double>(j) / static_cast<double>(d - 1);
  }
  return from_raw(std::move(v));
}

double SpectrumVector::p2() const {
  return power_sum(2, std::span<const double>(centered.data(), centered.size()));
}

double SpectrumVector::p4() const {
  return power_sum(4, std::span<const double>(centered.data(), centered.size()));
}

double EmpiricalMeasure::moment(int k) const {
  const double w = 1.0 / static_cast<double>(atoms.size());
  return w * power_sum(k, std::span<const double>(atoms.data(), atoms.size()));
}

double EmpiricalMeasure::centered_moment(int k) const {
  Eigen::VectorXd c = atoms.array() - moment(1);
  const double w = 1.0 / static_cast<double>(atoms.size());
  return w * power_sum(k, std::span<const double>(c.data(), c.size()));
}

EmpiricalMeasure empirical_measure(const SpectrumVector& s) {
  EmpiricalMeasure m;
  m.atoms = s.raw;
  std::sort(m.atoms.data(), m.atoms.data() + m.atoms.size());
  return m;
}

}  // namespace qeorbit
