#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oscfred/galerkin.hpp"
#include "oscfred/oracle.hpp"
#include "oscfred/problems.hpp"

using namespace oscfred;

namespace {

OscKernel constant_kernel(double c, double kappa) {
  return OscKernel::polynomial(BivariatePolynomial::constant(c), kappa);
}

StructuredFunction benchmark_solution(double kappa) {
  StructuredFunction y(kappa);
  y.add(0, Polynomial{1.0});
  y.add(1, Polynomial::monomial(3));
  return y;
}

double max_gap(const StructuredFunction& a, const StructuredFunction& b, int points, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double m = 0.0;
  for (int i = 0; i < points; ++i) {
    const double s = u(rng);
    m = std::max(m, std::abs(a(s) - b(s)));
  }
  return m;
}

double solve_error(const Problem& p, Method method, int n) {
  const TrialSpace sp = make_trial_space(method, n, 2, p.kappa());
  const ComplexVector a = solve(assemble(sp, p.kernel, p.rhs));
  return relative_error_eN([&](double s) { return eval_solution(sp, a, s); }, [&](double s) { return (*p.exact)(s); },
                           p.norm_y);
}

}  // namespace

TEST_CASE("benchmark problem") {
  CHECK_THROWS_AS(paper_benchmark(1.0), std::invalid_argument);
  CHECK_THROWS_AS(paper_benchmark(-5.0), std::invalid_argument);

  const double kappa = 50.0;
  const Problem p = paper_benchmark(kappa);
  CHECK(p.norm_y == doctest::Approx(1.51186).epsilon(1e-5));
  CHECK(p.norm_y == doctest::Approx(4.0 * std::sqrt(7.0) / 7.0).epsilon(1e-15));
  CHECK(p.kernel.is_polynomial());
  CHECK(p.kappa() == kappa);
  REQUIRE(p.exact.has_value());
  CHECK(std::abs((*p.exact)(1.0) - (1.0 + std::exp(kI * kappa))) < 1e-14);
  CHECK(std::abs((*p.exact)(0.0) - 1.0) < 1e-15);

  // The printed right-hand side satisfies the equation.
  std::mt19937_64 rng(64);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const auto y = [&](double t) { return (*p.exact)(t); };
  double worst = 0.0;
  for (int i = 0; i < 64; ++i) {
    const double s = u(rng);
    const auto ky = oracle::apply_operator_at(p.kernel, y, s, kappa);
    worst = std::max(worst, std::abs(p.rhs(s) - (y(s) - ky.value)));
  }
  CHECK(worst <= 1e-9);
}

TEST_CASE("manufactured problems") {
  const double kappa = 50.0;
  const Problem zero = manufactured(constant_kernel(1.0, kappa), StructuredFunction(kappa));
  CHECK(max_gap(zero.rhs, StructuredFunction(kappa), 16, 1) == 0.0);
  CHECK(zero.norm_y == 1.0);

  const StructuredFunction y = benchmark_solution(kappa);
  const Problem same = manufactured(constant_kernel(0.0, kappa), y);
  CHECK(max_gap(same.rhs, y, 32, 2) < 1e-15);

  // Closed form against the printed formula.
  for (double k : {50.0, 500.0, 5000.0}) {
    CAPTURE(k);
    const Problem m = manufactured(constant_kernel(1.0, k), benchmark_solution(k));
    CHECK(max_gap(m.rhs, paper_benchmark(k).rhs, 64, 3) <= 1e-10);
    CHECK(m.norm_y == doctest::Approx(4.0 * std::sqrt(7.0) / 7.0).epsilon(0.02));
  }

  // General kernel and solution against the oracle.
  const BivariatePolynomial k({{0.5, -1.0, 0.25}, {0.0, 2.0}, {1.0}});
  const OscKernel ker = OscKernel::polynomial(k, 30.0);
  StructuredFunction w(30.0);
  w.add(-1, Polynomial{cplx(0, 1), 0.5});
  w.add(0, Polynomial{1.0, 0.0, -2.0});
  w.add(2, Polynomial{0.0, 0.0, 0.0, 1.0});
  const Problem g = manufactured(ker, w);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 16; ++i) {
    const double s = u(rng);
    const auto ky = oracle::apply_operator_at(ker, [&](double t) { return w(t); }, s, 60.0);
    CHECK(std::abs(g.rhs(s) - (w(s) - ky.value)) < 1e-11);
  }

  CHECK_THROWS_AS(apply_operator(OscKernel::smooth([](double, double) { return cplx(1.0); }, kappa), y),
                  std::invalid_argument);
  StructuredFunction big(kappa);
  big.add(0, Polynomial::monomial(kMaxManufacturedDegree));
  CHECK_THROWS_AS(apply_operator(OscKernel::polynomial(BivariatePolynomial({{0.0, 1.0}}), kappa), big),
                  std::overflow_error);
}

TEST_CASE("manufactured round trip") {
  for (double kappa : {50.0, 500.0}) {
    CAPTURE(kappa);
    StructuredFunction y(kappa);
    y.add(1, Polynomial{0.5, -1.0, 0.0, 2.0});
    y.add(-1, Polynomial{0.0, cplx(0, 1), 1.0});
    y.add(0, Polynomial{1.0, 0.25, 0.0, -0.5});
    const BivariatePolynomial k({{1.0, 0.5}, {-0.5}});
    const Problem p = manufactured(OscKernel::polynomial(k, kappa), y);
    CHECK(solve_error(p, Method::opgm, 256) <= 1e-4);
  }
}

TEST_CASE("oscillatory probe functions") {
  for (int j = 1; j <= 3; ++j) {
    const double kappa = 40.0;
    const OscProbeFunction g{j, kappa};
    const double amp = std::pow(kappa, 1.0 - j);
    const double peak = std::numbers::pi / (2.0 * kappa);
    CHECK(g(peak) - peak * peak == doctest::Approx(amp).epsilon(1e-12));
    for (int i = 0; i <= 1000; ++i) {
      const double t = -1.0 + i * 0.002;
      CHECK(std::abs(g(t) - t * t) <= amp * (1 + 1e-15));
    }
  }
}

TEST_CASE("interpolation table") {
  const std::vector<double> kappas{40.0, 80.0, 160.0, 320.0, 640.0};
  const auto rows = table1_experiment(kappas);
  REQUIRE(rows.size() == 5);
  CHECK(rows[0].kappa == 40.0);
  CHECK(rows[0].errors[0] == doctest::Approx(4.89e-4).epsilon(0.05));
  CHECK(rows[0].errors[1] == doctest::Approx(1.28e-5).epsilon(0.05));
  CHECK(rows[0].errors[2] == doctest::Approx(9.16e-7).epsilon(0.05));
  CHECK(rows[4].errors[0] == doctest::Approx(1.22e-1).epsilon(0.05));
  CHECK(rows[4].errors[1] == doctest::Approx(1.92e-4).epsilon(0.05));
  CHECK(rows[4].errors[2] == doctest::Approx(9.09e-7).epsilon(0.05));
  for (std::size_t i = 0; i + 1 < rows.size(); ++i)
    CHECK(rows[i + 1].errors[0] / rows[i].errors[0] == doctest::Approx(4.0).epsilon(0.1));
  CHECK_THROWS_AS(table1_experiment(std::vector<double>{0.0}), std::invalid_argument);
}
