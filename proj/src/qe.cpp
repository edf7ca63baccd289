#include "qeorbit/qe.hpp"

#include <cmath>
#include <stdexcept>

#include "qeorbit/haar.hpp"
#include "qeorbit/kernels.hpp"
#include "qeorbit/orbit.hpp"

namespace qeorbit {

namespace {

struct Accum {
  double s = 0.0, c = 0.0;
  void add(double x) {
    const double t = s + x;
    c += (std::abs(s) >= std::abs(x)) ? (s - t) + x : (x - t) + s;
    s = t;
  }
  double value() const { return s + c; }
};

}  // namespace

HermitianCompression make_compression(Eigen::MatrixXcd t, double liouville_mean) {
  const int d = static_cast<int>(t.rows());
  if (d < 1 || t.cols() != d)
    throw std::invalid_argument("make_compression: matrix must be square and nonempty");
  const double scale = std::max(1.0, t.cwiseAbs().maxCoeff());
  const double herm_dev = (t - t.adjoint()).cwiseAbs().maxCoeff();
  if (herm_dev > 1e-10 * scale)
    throw std::invalid_argument("make_compression: matrix is not Hermitian");

  HermitianCompression out;
  bool diagonal = true;
  for (int j = 0; j < d && diagonal; ++j)
    for (int i = 0; i < d; ++i)
      if (i != j && t(i, j) != std::complex<double>(0.0, 0.0)) {
        diagonal = false;
        break;
      }
  if (diagonal) {
    Eigen::VectorXd eig(d);
    for (int i = 0; i < d; ++i) eig[i] = t(i, i).real();
    out.eigenvectors = Eigen::MatrixXcd::Identity(d, d);
    out.spectrum = SpectrumVector::from_raw(std::move(eig));
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(t);
    if (es.info() != Eigen::Success)
      throw std::runtime_error("make_compression: eigendecomposition failed");
    out.eigenvectors = es.eigenvectors();
    out.spectrum = SpectrumVector::from_raw(es.eigenvalues());
  }
  out.matrix = std::move(t);
  out.trace_mean = out.spectrum.mean;
  out.liouville_mean = liouville_mean;
  return out;
}

double quantum_variance(const HermitianCompression& t, const Eigen::MatrixXcd& u,
                        Reference ref) {
  const int d = t.d();
  if (u.rows() != d || u.cols() != d)
    throw std::invalid_argument("quantum_variance: dimension mismatch");
  const double r = (ref == Reference::trace_mean) ? t.trace_mean : t.liouville_mean;
  const Eigen::MatrixXcd t0 =
      t.matrix - r * Eigen::MatrixXcd::Identity(d, d);
  Accum acc;
  for (int j = 0; j < d; ++j) {
    const double v = (u.col(j).adjoint() * (t0 * u.col(j)))(0, 0).real();
    acc.add(v * v);
  }
  return acc.value() / static_cast<double>(d);
}

double Y_value(const HermitianCompression& t, const Eigen::MatrixXcd& u) {
  const int d = t.d();
  if (u.rows() != d || u.cols() != d)
    throw std::invalid_argument("Y_value: dimension mismatch");
  const Eigen::MatrixXcd m = t.eigenvectors.adjoint() * u;
  const auto& ker = kernels::active_kernels();
  Eigen::VectorXd x(d);
  ker.weighted_abs2_colsum(m.data(), d, t.spectrum.centered.data(), x.data());
  return ker.sum_squares(x.data(), d);
}

SequenceRun slln_run(const std::vector<SpectrumVector>& spectra, std::uint64_t seed) {
  if (spectra.empty()) throw std::invalid_argument("slln_run: empty sequence");
  SequenceRun run;
  run.seed = seed;
  run.levels.reserve(spectra.size());
  const auto& ker = kernels::active_kernels();
  Accum s_partial, cesaro_sum, inv_d;
  for (std::size_t n = 0; n < spectra.size(); ++n) {
    const SpectrumVector& s = spectra[n];
    const int d = s.d();
    HaarSampler sampler(seed, n + 1, d);
    const Eigen::MatrixXcd u = sampler.unitary();
    Eigen::VectorXd x(d);
    ker.weighted_abs2_colsum(u.data(), d, s.centered.data(), x.data());
    const double y = ker.sum_squares(x.data(), d);
    LevelRecord rec;
    rec.level = static_cast<long>(n + 1);
    rec.d = d;
    rec.y = y;
    rec.y_mean_exact = moment2_exact(s);
    rec.v_trace = y / static_cast<double>(d);
    s_partial.add((y - rec.y_mean_exact) / static_cast<double>(d));
    cesaro_sum.add(y / static_cast<double>(d));
    inv_d.add(1.0 / static_cast<double>(d));
    rec.s_partial = s_partial.value();
    rec.cesaro = cesaro_sum.value() / static_cast<double>(n + 1);
    run.levels.push_back(rec);
  }
  run.s_final = s_partial.value();
  run.cesaro_final = run.levels.back().cesaro;
  run.sum_inv_d = inv_d.value();
  Accum head;
  const std::size_t half = spectra.size() / 2;
  for (std::size_t n = 0; n < half; ++n)
    head.add(1.0 / static_cast<double>(spectra[n].d()));
  run.tail_inv_d_fraction =
      (run.sum_inv_d > 0.0) ? (run.sum_inv_d - head.value()) / run.sum_inv_d : 0.0;
  return run;
}

SzegoReport szego_convergence(const std::vector<EmpiricalMeasure>& measures,
                              int max_moment) {
  if (measures.size() < 2)
    throw std::invalid_argument("szego_convergence: need at least two measures");
  if (max_moment < 1)
    throw std::invalid_argument("szego_convergence: max_moment must be >= 1");
  SzegoReport report;
  report.all_stabilizing = true;
  for (int k = 1; k <= max_moment; ++k) {
    std::vector<double> v(measures.size());
    for (std::size_t i = 0; i < measures.size(); ++i) v[i] = measures[i].moment(k);
    const auto width = [&](std::size_t from) {
      double lo = v[from], hi = v[from];
      for (std::size_t i = from; i < v.size(); ++i) {
        lo = std::min(lo, v[i]);
        hi = std::max(hi, v[i]);
      }
      return hi - lo;
    };
    SzegoMomentReport m;
    m.order = k;
    m.last_value = v.back();
    m.full_width = width(0);
    m.tail_width = width(v.size() / 2);
    m.stabilizing = m.tail_width <= std::max(0.1 * m.full_width, 1e-12);
    report.all_stabilizing = report.all_stabilizing && m.stabilizing;
    report.moments.push_back(m);
  }
  return report;
}

}  // namespace qeorbit
