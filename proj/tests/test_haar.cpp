#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>

#include "qeorbit/haar.hpp"
#include "qeorbit/rng.hpp"
#include "qeorbit/spectrum.hpp"

using namespace qeorbit;

TEST_CASE("construction validates the dimension") {
  CHECK_THROWS(HaarSampler(1, 0, 0));
  CHECK_THROWS(HaarSampler(1, 0, -3));
}

TEST_CASE("draws are bit-exactly reproducible") {
  HaarSampler a(42, 0, 5), b(42, 0, 5);
  const Eigen::MatrixXcd ua = a.unitary();
  const Eigen::MatrixXcd ub = b.unitary();
  CHECK((ua - ub).cwiseAbs().maxCoeff() == 0.0);
  HaarSampler c(42, 1, 5);
  CHECK((ua - c.unitary()).cwiseAbs().maxCoeff() > 1e-3);
}

TEST_CASE("ginibre entries come from the gaussian stream column-major") {
  HaarSampler s(7, 3, 2);
  const Eigen::MatrixXcd g = s.ginibre();
  GaussianStream ref(7, 3);
  CHECK(g(0, 0).real() == ref.next());
  CHECK(g(0, 0).imag() == ref.next());
  CHECK(g(1, 0).real() == ref.next());
  CHECK(g(1, 0).imag() == ref.next());
  CHECK(g(0, 1).real() == ref.next());
}

TEST_CASE("unitarity across dimensions") {
  for (int d : {1, 2, 3, 8, 20}) {
    HaarSampler s(5, 0, d);
    const Eigen::MatrixXcd u = s.unitary();
    const Eigen::MatrixXcd err =
        u.adjoint() * u - Eigen::MatrixXcd::Identity(d, d);
    CHECK(err.cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("skipping the phase fix biases the first entry") {
  // The deliberately broken variant has E[Re U_11] far below zero at d = 2;
  // the fixed sampler is consistent with zero.  A 4-sigma detector separates
  // them decisively.
  const int n = 4000;
  HaarSampler s(11, 0, 2);
  double broken = 0.0, brokensq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double v = s.unitary_unfixed()(0, 0).real();
    broken += v;
    brokensq += v * v;
  }
  const double bm = broken / n;
  const double bsem = std::sqrt((brokensq / n - bm * bm) / n);
  CHECK(bm < -4.0 * bsem);
  CHECK(bm < -0.25);

  HaarSampler f(11, 1, 2);
  double fixed = 0.0, fixedsq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double v = f.unitary()(0, 0).real();
    fixed += v;
    fixedsq += v * v;
  }
  const double fm = fixed / n;
  const double fsem = std::sqrt((fixedsq / n - fm * fm) / n);
  CHECK(std::abs(fm) < 5.0 * fsem);
}

TEST_CASE("second moment of an entry is 1/d") {
  const int d = 5, n = 20000;
  HaarSampler s(13, 0, d);
  double acc = 0.0, accsq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double v = std::norm(s.unitary()(1, 2));
    acc += v;
    accsq += v * v;
  }
  const double mean = acc / n;
  const double sem = std::sqrt((accsq / n - mean * mean) / n);
  CHECK(std::abs(mean - 1.0 / d) < 5.0 * sem);
}

TEST_CASE("left multiplication by a fixed unitary preserves entry statistics") {
  const int d = 4, n = 20000;
  // deterministic discrete Fourier unitary
  Eigen::MatrixXcd v(d, d);
  const double tau = 8.0 * std::atan(1.0);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c)
      v(r, c) = std::polar(1.0 / std::sqrt(static_cast<double>(d)), tau * r * c / d);
  HaarSampler s(17, 0, d);
  double acc = 0.0, accsq = 0.0;
  for (int i = 0; i < n; ++i) {
    const Eigen::MatrixXcd u = v * s.unitary();
    const double w = std::norm(u(0, 0));
    acc += w;
    accsq += w * w;
  }
  const double mean = acc / n;
  const double sem = std::sqrt((accsq / n - mean * mean) / n);
  CHECK(std::abs(mean - 1.0 / d) < 5.0 * sem);
}

TEST_CASE("mc_moment matches the closed forms on a known spectrum") {
  Eigen::VectorXd raw(3);
  raw << 1.0, 0.0, -1.0;
  const auto s = SpectrumVector::from_raw(raw);
  HaarSampler sampler(19, 0, 3);
  const MCEstimate m2 = mc_moment(s, 2, 20000, sampler);
  CHECK(std::abs(m2.mean - 0.5) < 5.0 * m2.sem);
  HaarSampler sampler4 = sampler.child(0);
  const MCEstimate m4 = mc_moment(s, 4, 20000, sampler4);
  CHECK(std::abs(m4.mean - 0.4) < 5.0 * m4.sem);
  CHECK(m2.n == 20000);
  CHECK_THROWS(mc_moment(s, 3, 100, sampler));
}

TEST_CASE("characteristic estimate is exactly one at the origin") {
  Eigen::VectorXd raw(4);
  raw << 2.0, 1.0, -1.0, -2.0;
  const auto s = SpectrumVector::from_raw(raw);
  HaarSampler sampler(23, 0, 4);
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(4);
  const MCComplexEstimate at0 = mc_characteristic(s, zero, 500, sampler);
  CHECK(at0.mean.real() == 1.0);
  CHECK(at0.mean.imag() == 0.0);

  Eigen::VectorXd x(4);
  x << 0.3, -0.1, 0.2, 0.05;
  const MCComplexEstimate cf = mc_characteristic(s, x, 4000, sampler);
  CHECK(std::abs(cf.mean) <= 1.0 + 5.0 * cf.sem);
}

TEST_CASE("entry second-order product moments") {
  const int d = 4, n = 20000;
  HaarSampler s1(29, 0, d);
  const MCEstimate same = mc_entry_moment22(0, 0, 0, 0, n, s1);
  CHECK(std::abs(same.mean - 2.0 / (d * (d + 1.0))) < 5.0 * same.sem);
  HaarSampler s2(29, 1, d);
  const MCEstimate cross = mc_entry_moment22(0, 0, 0, 1, n, s2);
  CHECK(std::abs(cross.mean - 1.0 / (d * (d + 1.0))) < 5.0 * cross.sem);
}
