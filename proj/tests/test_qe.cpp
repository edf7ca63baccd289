#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <vector>

#include "qeorbit/haar.hpp"
#include "qeorbit/orbit.hpp"
#include "qeorbit/qe.hpp"
#include "qeorbit/spectrum.hpp"

using namespace qeorbit;

namespace {

Eigen::MatrixXcd random_hermitian(int d, std::uint64_t seed) {
  HaarSampler s(seed, 0, d);
  const Eigen::MatrixXcd g = s.ginibre();
  return 0.5 * (g + g.adjoint().eval());
}

}  // namespace

TEST_CASE("compression validates hermiticity and diagonalizes") {
  const Eigen::MatrixXcd t = random_hermitian(6, 1);
  const HermitianCompression c = make_compression(t, 0.25);
  CHECK(c.d() == 6);
  CHECK(c.liouville_mean == 0.25);
  // reconstruction
  const Eigen::MatrixXcd rebuilt =
      c.eigenvectors * c.spectrum.raw.asDiagonal() * c.eigenvectors.adjoint();
  CHECK((rebuilt - t).cwiseAbs().maxCoeff() < 1e-12);
  // trace mean
  CHECK(c.trace_mean == doctest::Approx(t.trace().real() / 6.0).epsilon(1e-13));
  // non-hermitian input rejected
  Eigen::MatrixXcd bad = t;
  bad(0, 1) += std::complex<double>(0.1, 0.0);
  CHECK_THROWS(make_compression(bad, 0.0));
}

TEST_CASE("exactly diagonal input keeps its diagonal untouched") {
  Eigen::MatrixXcd t = Eigen::MatrixXcd::Zero(4, 4);
  t(0, 0) = 0.3;
  t(1, 1) = 0.3;
  t(2, 2) = 0.7;
  t(3, 3) = -0.1;
  const HermitianCompression c = make_compression(t, 0.0);
  CHECK(c.spectrum.raw[0] == 0.3);
  CHECK(c.spectrum.raw[2] == 0.7);
  CHECK((c.eigenvectors - Eigen::MatrixXcd::Identity(4, 4)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("scalar operators give exactly zero variance and Y") {
  const double c0 = 0.3;  // deliberately not a dyadic rational
  Eigen::MatrixXcd t = c0 * Eigen::MatrixXcd::Identity(5, 5);
  const HermitianCompression c = make_compression(t, c0);
  HaarSampler s(5, 0, 5);
  const Eigen::MatrixXcd u = s.unitary();
  CHECK(quantum_variance(c, u, Reference::trace_mean) == 0.0);
  CHECK(quantum_variance(c, u, Reference::liouville) == 0.0);
  CHECK(Y_value(c, u) == 0.0);
}

TEST_CASE("spectral and direct routes to Y agree") {
  for (int d : {3, 6, 11}) {
    const Eigen::MatrixXcd t = random_hermitian(d, 100 + static_cast<std::uint64_t>(d));
    const HermitianCompression c = make_compression(t, 0.0);
    HaarSampler s(7, 0, d);
    for (int i = 0; i < 5; ++i) {
      const Eigen::MatrixXcd u = s.unitary();
      const double y = Y_value(c, u);
      const double v = quantum_variance(c, u, Reference::trace_mean);
      CHECK(y == doctest::Approx(d * v).epsilon(1e-12));
    }
  }
}

TEST_CASE("quantum variance is covariant under basis rotation of the operator") {
  const int d = 5;
  const Eigen::MatrixXcd t = random_hermitian(d, 3);
  HaarSampler s(9, 0, d);
  const Eigen::MatrixXcd w = s.unitary();
  const Eigen::MatrixXcd t2 = w * t * w.adjoint();
  const HermitianCompression c1 = make_compression(t, 0.0);
  const HermitianCompression c2 = make_compression(t2, 0.0);
  const Eigen::MatrixXcd u = s.unitary();
  // V_A(T2, U) = V_A(T, W* U): matrix elements transform together
  const double a = quantum_variance(c2, u, Reference::trace_mean);
  const double b = quantum_variance(c1, w.adjoint() * u, Reference::trace_mean);
  CHECK(a == doctest::Approx(b).epsilon(1e-10));
  CHECK(Y_value(c2, u) == doctest::Approx(Y_value(c1, w.adjoint() * u)).epsilon(1e-10));
}

TEST_CASE("reference shift moves the variance by the squared offset plus cross term") {
  // V(ref) = (1/d) sum_j |<T u_j, u_j> - ref|^2 is a quadratic in ref with
  // minimum at the mean of the matrix elements; check the algebraic identity
  // V(liouville) - V(trace) = (m - w)(2 a - m - w) with a = mean element,
  // m = trace mean, w = liouville mean.
  const int d = 6;
  const Eigen::MatrixXcd t = random_hermitian(d, 8);
  const double w = 0.35;
  const HermitianCompression c = make_compression(t, w);
  HaarSampler s(21, 0, d);
  const Eigen::MatrixXcd u = s.unitary();
  double mean_elem = 0.0;
  for (int j = 0; j < d; ++j)
    mean_elem += (u.col(j).adjoint() * (t * u.col(j)))(0, 0).real();
  mean_elem /= d;
  const double m = c.trace_mean;
  const double lhs = quantum_variance(c, u, Reference::liouville) -
                     quantum_variance(c, u, Reference::trace_mean);
  const double rhs = (m - w) * (2.0 * mean_elem - m - w);
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
}

TEST_CASE("bridge bound between the two reference modes") {
  // |V(liou) - V(trace)| <= |w - m| (2 max_j |<T u_j,u_j> - m| + |w - m|)
  const int d = 7;
  const Eigen::MatrixXcd t = random_hermitian(d, 12);
  const double w = -0.2;
  const HermitianCompression c = make_compression(t, w);
  HaarSampler s(23, 0, d);
  for (int i = 0; i < 10; ++i) {
    const Eigen::MatrixXcd u = s.unitary();
    double max_dev = 0.0;
    for (int j = 0; j < d; ++j) {
      const double e = (u.col(j).adjoint() * (t * u.col(j)))(0, 0).real();
      max_dev = std::max(max_dev, std::abs(e - c.trace_mean));
    }
    const double gap = std::abs(quantum_variance(c, u, Reference::liouville) -
                                quantum_variance(c, u, Reference::trace_mean));
    const double off = std::abs(w - c.trace_mean);
    CHECK(gap <= off * (2.0 * max_dev + off) + 1e-12);
  }
}

TEST_CASE("running sums over a synthetic dimension sequence") {
  std::vector<SpectrumVector> spectra;
  for (int n = 1; n <= 40; ++n) spectra.push_back(SpectrumVector::uniform_grid(n));
  const SequenceRun run = slln_run(spectra, 99);
  REQUIRE(run.levels.size() == 40);
  CHECK(run.seed == 99);
  // levels are 1-based with matching dimensions
  CHECK(run.levels.front().level == 1);
  CHECK(run.levels.front().d == 1);
  CHECK(run.levels.back().d == 40);
  // one-point spectra have Y identically zero
  CHECK(run.levels.front().y == 0.0);
  // partial sums recompute from the records
  double acc = 0.0, ces = 0.0;
  for (const auto& lv : run.levels) {
    acc += (lv.y - lv.y_mean_exact) / lv.d;
    ces += lv.y / lv.d;
    CHECK(lv.s_partial == doctest::Approx(acc).epsilon(1e-12));
    CHECK(lv.cesaro == doctest::Approx(ces / lv.level).epsilon(1e-12));
    CHECK(lv.y_mean_exact ==
          doctest::Approx(moment2_exact(spectra[static_cast<size_t>(lv.level - 1)]))
              .epsilon(1e-14));
  }
  CHECK(run.s_final == run.levels.back().s_partial);
  CHECK(run.cesaro_final == run.levels.back().cesaro);
  // reruns with the same seed are bit-identical
  const SequenceRun again = slln_run(spectra, 99);
  CHECK(again.s_final == run.s_final);
  // a different seed gives a different draw
  const SequenceRun other = slln_run(spectra, 100);
  CHECK(other.s_final != run.s_final);
}

TEST_CASE("moment stabilization diagnostic on uniform grids") {
  // empirical measures of finer and finer uniform grids: moments settle
  // toward those of the uniform density on [-1,1] (second moment 1/3)
  std::vector<EmpiricalMeasure> measures;
  for (int d = 10; d <= 300; d += 10)
    measures.push_back(empirical_measure(SpectrumVector::uniform_grid(d)));
  const SzegoReport rep = szego_convergence(measures, 4);
  REQUIRE(rep.moments.size() == 4);  // orders 1..4
  CHECK(rep.all_stabilizing);
  // exact grid moments at the finest level d = 300, near the 1/3 and 1/5
  // limits of the uniform density on [-1, 1]
  const SpectrumVector finest = SpectrumVector::uniform_grid(300);
  const double exact2 = finest.p2() / 300.0;
  const double exact4 = finest.p4() / 300.0;
  CHECK(exact2 == doctest::Approx(1.0 / 3.0).epsilon(1e-2));
  CHECK(exact4 == doctest::Approx(0.2).epsilon(2e-2));
  CHECK(rep.moments[1].last_value == doctest::Approx(exact2).epsilon(1e-12));
  CHECK(std::abs(rep.moments[0].last_value) < 1e-12);
  CHECK(rep.moments[3].last_value == doctest::Approx(exact4).epsilon(1e-9));
  for (const auto& m : rep.moments) {
    CHECK(m.tail_width <= m.full_width + 1e-18);
    CHECK(m.stabilizing);
  }

  // identical measures: zero widths, trivially stabilizing
  std::vector<EmpiricalMeasure> same(5, measures.back());
  const SzegoReport flat = szego_convergence(same, 3);
  for (const auto& m : flat.moments) {
    CHECK(m.full_width == 0.0);
    CHECK(m.stabilizing);
  }
}
