#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "oscfred/linalg.hpp"
#include "support/reference.hpp"

using namespace oscfred;

namespace {

double frob(const ComplexMatrix& a) { return matrix_norms(a).frobenius; }

ComplexMatrix reconstruct_pa_minus_lu(const ComplexMatrix& a, const LUFactorization& f) {
  const std::size_t n = a.rows();
  ComplexMatrix r(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      cplx s = 0.0;
      for (std::size_t k = 0; k <= std::min(i, j); ++k) s += (k == i ? cplx(1.0) : f.lu(i, k)) * f.lu(k, j);
      r(i, j) = a(f.perm[i], j) - s;
    }
  }
  return r;
}

ComplexMatrix hilbert(std::size_t n) {
  ComplexMatrix h(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) h(i, j) = 1.0 / static_cast<double>(i + j + 1);
  return h;
}

}  // namespace

TEST_CASE("matrix construction") {
  CHECK_THROWS_AS(ComplexMatrix(0, 3), std::invalid_argument);
  const ComplexMatrix i3 = ComplexMatrix::identity(3);
  CHECK(i3(1, 1) == cplx(1.0));
  CHECK(i3(0, 2) == cplx(0.0));
  ComplexMatrix bad = ComplexMatrix::identity(2);
  bad(0, 1) = std::numeric_limits<double>::quiet_NaN();
  CHECK_FALSE(all_finite(bad));
  CHECK_THROWS_AS(lu_factor(bad), std::invalid_argument);
  CHECK_THROWS_AS(lu_factor(ComplexMatrix(2, 3)), std::invalid_argument);
}

TEST_CASE("lu factorization examples") {
  const auto f = lu_factor(ComplexMatrix::identity(3));
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(f.perm[i] == i);
    for (std::size_t j = 0; j < 3; ++j) CHECK(f.lu(i, j) == cplx(i == j ? 1.0 : 0.0));
  }

  ComplexMatrix p(2, 2);
  p(0, 1) = 1.0;
  p(1, 0) = 1.0;
  const auto fp = lu_factor(p);
  CHECK(fp.perm[0] == 1);
  const auto x = lu_solve(fp, std::vector<cplx>{3.0, 4.0});
  CHECK(x[0] == cplx(4.0));
  CHECK(x[1] == cplx(3.0));

  ComplexMatrix z(3, 3);
  z(0, 0) = 1.0;
  z(1, 1) = 1.0;
  CHECK_THROWS_AS(lu_factor(z), SingularMatrixError);
  try {
    lu_factor(z);
  } catch (const SingularMatrixError& e) {
    CHECK(e.column() == 2);
  }

  std::mt19937_64 rng(50);
  const ComplexMatrix a = ref::random_matrix(50, rng);
  const auto fa = lu_factor(a);
  CHECK(frob(reconstruct_pa_minus_lu(a, fa)) / frob(a) <= 1e-13);
}

TEST_CASE("lu reconstruction for sizes up to 200") {
  std::mt19937_64 rng(7);
  for (std::size_t n : {1u, 2u, 17u, 64u, 200u}) {
    const ComplexMatrix a = ref::random_matrix(n, rng);
    const auto f = lu_factor(a);
    CHECK(frob(reconstruct_pa_minus_lu(a, f)) <= 1e-11 * frob(a));
  }
}

TEST_CASE("lu_solve examples") {
  const auto fi = lu_factor(ComplexMatrix::identity(4));
  const std::vector<cplx> b{1.0, cplx(0, 2), -3.0, cplx(4, -4)};
  CHECK(lu_solve(fi, b) == b);

  ComplexMatrix d(2, 2);
  d(0, 0) = 2.0;
  d(1, 1) = cplx(0, 1);
  const auto x = lu_solve(lu_factor(d), std::vector<cplx>{2.0, cplx(0, 1)});
  CHECK(std::abs(x[0] - 1.0) < 1e-15);
  CHECK(std::abs(x[1] - 1.0) < 1e-15);

  CHECK_THROWS_AS(lu_solve(fi, std::vector<cplx>{1.0}), std::invalid_argument);
  CHECK_THROWS_AS(lu_solve_adjoint(fi, std::vector<cplx>{1.0}), std::invalid_argument);

  std::mt19937_64 rng(100);
  const ComplexMatrix a = ref::random_matrix(100, rng);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<cplx> xs(100);
  for (auto& v : xs) v = {u(rng), u(rng)};
  const auto got = lu_solve(lu_factor(a), multiply(a, xs));
  std::vector<cplx> diff(100);
  for (std::size_t i = 0; i < 100; ++i) diff[i] = got[i] - xs[i];
  CHECK(norm2(diff) <= 1e-10 * norm2(xs));
}

TEST_CASE("adjoint solve") {
  std::mt19937_64 rng(3);
  const ComplexMatrix a = ref::random_matrix(30, rng);
  std::vector<cplx> xs(30);
  std::normal_distribution<double> g;
  for (auto& v : xs) v = {g(rng), g(rng)};
  const auto got = lu_solve_adjoint(lu_factor(a), adjoint_multiply(a, xs));
  for (std::size_t i = 0; i < xs.size(); ++i) CHECK(std::abs(got[i] - xs[i]) < 1e-10);
}

TEST_CASE("backward-stable residual on random systems") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> size(1, 300);
  const double eps = std::numeric_limits<double>::epsilon();
  for (int trial = 0; trial < 100; ++trial) {
    const auto n = static_cast<std::size_t>(trial < 3 ? 300 : size(rng));
    const ComplexMatrix a = ref::random_matrix(n, rng);
    std::vector<cplx> b(n);
    for (auto& v : b) v = {std::normal_distribution<double>()(rng), std::normal_distribution<double>()(rng)};
    const auto x = lu_solve(lu_factor(a), b);
    auto r = multiply(a, x);
    for (std::size_t i = 0; i < n; ++i) r[i] -= b[i];
    CHECK(norm2(r) <= 10.0 * static_cast<double>(n) * eps * frob(a) * norm2(x));
  }
}

TEST_CASE("matrix norms") {
  const auto ni = matrix_norms(ComplexMatrix::identity(5));
  CHECK(ni.one == 1.0);
  CHECK(ni.inf == 1.0);
  CHECK(ni.frobenius == doctest::Approx(std::sqrt(5.0)));

  ComplexMatrix a(2, 2);
  a(0, 0) = 1.0;
  a(0, 1) = -2.0;
  a(1, 0) = 3.0;
  a(1, 1) = 4.0;
  const auto na = matrix_norms(a);
  CHECK(na.one == doctest::Approx(6.0));
  CHECK(na.inf == doctest::Approx(7.0));
  CHECK(na.frobenius == doctest::Approx(std::sqrt(30.0)));

  const auto nz = matrix_norms(ComplexMatrix(3, 3));
  CHECK(nz.one == 0.0);
  CHECK(nz.inf == 0.0);
  CHECK(nz.frobenius == 0.0);
}

TEST_CASE("cond2 examples") {
  CHECK(cond2(ComplexMatrix::identity(6)) == doctest::Approx(1.0).epsilon(1e-9));
  ComplexMatrix d(2, 2);
  d(0, 0) = 10.0;
  d(1, 1) = 1.0;
  CHECK(cond2(d) == doctest::Approx(10.0).epsilon(1e-6));
  CHECK(cond2(hilbert(4)) == doctest::Approx(1.5514e4).epsilon(0.01));

  ComplexMatrix s(2, 2);
  s(0, 0) = 1.0;
  s(0, 1) = 2.0;
  s(1, 0) = 2.0;
  s(1, 1) = 4.0;
  CHECK(std::isinf(cond2(s)));
  CHECK_THROWS_AS(cond2(ComplexMatrix(2, 3)), std::invalid_argument);
}

TEST_CASE("cond2 agrees with a Jacobi singular value oracle") {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<int> size(2, 12);
  for (int trial = 0; trial < 50; ++trial) {
    const ComplexMatrix a = ref::random_matrix(static_cast<std::size_t>(size(rng)), rng);
    const auto sv = ref::jacobi_singular_values(a);
    const double want = sv.front() / sv.back();
    CHECK(cond2(a) == doctest::Approx(want).epsilon(0.01));
  }
}

TEST_CASE("cond2 is scale invariant and at least one") {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<int> size(2, 100);
  for (int trial = 0; trial < 20; ++trial) {
    ComplexMatrix a = ref::random_matrix(static_cast<std::size_t>(size(rng)), rng);
    const double c0 = cond2(a);
    CHECK(c0 >= 1.0);
    const cplx scale(-3.5, 0.25);
    for (auto& v : a.data()) v *= scale;
    CHECK(cond2(a) == doctest::Approx(c0).epsilon(1e-6));
  }
}

TEST_CASE("cond2 is reproducible") {
  std::mt19937_64 rng(14);
  const ComplexMatrix a = ref::random_matrix(40, rng);
  CHECK(cond2(a) == cond2(a));
}
