#pragma once

#include <Eigen/Dense>

namespace qeorbit {

/// Real spectrum with its traceless (centered) representative.  The centered
/// entries sum to zero to within a relative 1e-12 of the l1 mass; centering
/// uses a compensated mean plus one residual sweep.
struct SpectrumVector {
  Eigen::VectorXd raw;
  Eigen::VectorXd centered;
  double mean = 0.0;

  int d() const { return static_cast<int>(raw.size()); }
  /// Power sums of the centered entries.
  double p2() const;
  double p4() const;

  static SpectrumVector from_raw(Eigen::VectorXd raw);
  /// Uniform grid of d points on [lo, hi] (inclusive endpoints; d = 1 gives
  /// the midpoint).
  static SpectrumVector uniform_grid(int d, double lo = -1.0, double hi = 1.0);
};

/// Uniform probability measure on the spectrum values (weight 1/d each).
struct EmpiricalMeasure {
  Eigen::VectorXd atoms;  // sorted ascending
  double moment(int k) const;               // raw k-th moment
  double centered_moment(int k) const;      // about the measure's mean
};

EmpiricalMeasure empirical_measure(const SpectrumVector& s);

}  // namespace qeorbit
