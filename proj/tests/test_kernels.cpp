#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "qeorbit/kernels.hpp"
#include "qeorbit/rng.hpp"

using namespace qeorbit;

namespace {

struct Problem {
  int d;
  std::vector<std::complex<double>> a;  // column-major d x d
  std::vector<double> w;
  std::vector<double> x, y;
};

Problem random_problem(int d, std::uint64_t seed) {
  GaussianStream g(seed, 0);
  Problem p;
  p.d = d;
  p.a.resize(static_cast<size_t>(d) * d);
  for (auto& v : p.a) v = {g.next(), g.next()};
  p.w.resize(static_cast<size_t>(d));
  for (auto& v : p.w) v = g.next();
  p.x.resize(static_cast<size_t>(d));
  p.y.resize(static_cast<size_t>(d));
  for (auto& v : p.x) v = g.next();
  for (auto& v : p.y) v = g.next();
  return p;
}

bool close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({std::abs(a), std::abs(b), 1.0});
}

}  // namespace

TEST_CASE("scalar kernels compute the reference sums") {
  // 2x2 column-major: A = [[1+i, 2], [0, 1-i]] stored as col0=(1+i, 0), col1=(2, 1-i)
  const std::vector<std::complex<double>> a = {{1, 1}, {0, 0}, {2, 0}, {1, -1}};
  const std::vector<double> w = {3.0, 5.0};
  std::vector<double> out(2);
  const auto& k = kernels::scalar_kernels();
  k.weighted_abs2_rowsum(a.data(), 2, w.data(), out.data());
  CHECK(out[0] == doctest::Approx(3.0 * 2.0 + 5.0 * 4.0));  // |1+i|^2*3 + |2|^2*5
  CHECK(out[1] == doctest::Approx(3.0 * 0.0 + 5.0 * 2.0));
  k.weighted_abs2_colsum(a.data(), 2, w.data(), out.data());
  CHECK(out[0] == doctest::Approx(3.0 * 2.0 + 5.0 * 0.0));
  CHECK(out[1] == doctest::Approx(3.0 * 4.0 + 5.0 * 2.0));

  const std::vector<double> x = {1.0, -2.0, 3.0};
  const std::vector<double> y = {4.0, 0.5, -1.0};
  CHECK(k.sum_squares(x.data(), 3) == doctest::Approx(14.0));
  CHECK(k.dot(x.data(), y.data(), 3) == doctest::Approx(0.0));
}

TEST_CASE("active set is valid and nameable") {
  const auto& k = kernels::active_kernels();
  CHECK(k.name != nullptr);
  const std::string name = k.name;
  CHECK((name == "scalar" || name == "avx2"));
  CHECK(kernels::force_kernels("does-not-exist") == false);
  CHECK(kernels::force_kernels("scalar") == true);
  CHECK(std::string(kernels::active_kernels().name) == "scalar");
}

TEST_CASE("vector variant agrees with the scalar reference") {
  const auto* vec = kernels::avx2_kernels();
  if (vec == nullptr) {
    MESSAGE("no vector kernel on this CPU; equivalence trivially holds");
    return;
  }
  const auto& ref = kernels::scalar_kernels();
  for (int d : {1, 2, 3, 4, 5, 7, 8, 16, 33, 64, 127}) {
    const Problem p = random_problem(d, 1000 + static_cast<std::uint64_t>(d));
    std::vector<double> out_ref(static_cast<size_t>(d)), out_vec(static_cast<size_t>(d));

    ref.weighted_abs2_rowsum(p.a.data(), d, p.w.data(), out_ref.data());
    vec->weighted_abs2_rowsum(p.a.data(), d, p.w.data(), out_vec.data());
    for (int i = 0; i < d; ++i) CHECK(close(out_ref[static_cast<size_t>(i)], out_vec[static_cast<size_t>(i)], 1e-13));

    ref.weighted_abs2_colsum(p.a.data(), d, p.w.data(), out_ref.data());
    vec->weighted_abs2_colsum(p.a.data(), d, p.w.data(), out_vec.data());
    for (int i = 0; i < d; ++i) CHECK(close(out_ref[static_cast<size_t>(i)], out_vec[static_cast<size_t>(i)], 1e-13));

    CHECK(close(ref.sum_squares(p.x.data(), d), vec->sum_squares(p.x.data(), d), 1e-13));
    CHECK(close(ref.dot(p.x.data(), p.y.data(), d), vec->dot(p.x.data(), p.y.data(), d), 1e-13));
  }
}

TEST_CASE("forcing restores both directions") {
  const auto* vec = kernels::avx2_kernels();
  if (vec != nullptr) {
    CHECK(kernels::force_kernels("avx2"));
    CHECK(std::string(kernels::active_kernels().name) == "avx2");
  }
  CHECK(kernels::force_kernels("scalar"));
  CHECK(std::string(kernels::active_kernels().name) == "scalar");
}
