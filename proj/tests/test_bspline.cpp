#include <doctest.h>

#include <cmath>
#include <random>

#include "oscfred/bspline.hpp"
#include "oscfred/linalg.hpp"
#include "oscfred/problems.hpp"

using namespace oscfred;

TEST_CASE("uniform knots") {
  const KnotVector kv = make_uniform_knots(3, 2);
  CHECK(kv.mesh_width() == doctest::Approx(0.5));
  const auto b = kv.breakpoints();
  REQUIRE(b.size() == 5);
  CHECK(b[1] == doctest::Approx(-0.5));
  CHECK(b[2] == doctest::Approx(0.0));
  CHECK(b[3] == doctest::Approx(0.5));
  const auto t = kv.knots();
  REQUIRE(t.size() == 7);  // d + m = 5 + 2
  CHECK(t[0] == -1.0);
  CHECK(t[1] == -1.0);
  CHECK(t[5] == 1.0);
  CHECK(t[6] == 1.0);

  const KnotVector kv4 = make_uniform_knots(4, 3);
  CHECK(kv4.mesh_width() == doctest::Approx(2.0 / 5.0));

  CHECK(SplineSpace(make_uniform_knots(16, 2)).dimension() == 18);
  CHECK(3 * SplineSpace(make_uniform_knots(16, 2)).dimension() == 54);
}

TEST_CASE("degenerate mesh without interior breakpoints") {
  const SplineSpace sp(make_uniform_knots(0, 2));
  CHECK(sp.dimension() == 2);
  CHECK(sp.eval_basis(0, -1.0) == doctest::Approx(1.0));
  CHECK(sp.eval_basis(0, 0.0) == doctest::Approx(0.5));
  CHECK(sp.eval_basis(1, 0.0) == doctest::Approx(0.5));
  CHECK(sp.eval_basis(1, 1.0) == doctest::Approx(1.0));
}

TEST_CASE("knot validation") {
  CHECK_THROWS_AS(KnotVector({0.2, 0.1}, 2), std::invalid_argument);
  CHECK_THROWS_AS(KnotVector({0.1, 0.1}, 2), std::invalid_argument);
  CHECK_THROWS_AS(KnotVector({1.5}, 2), std::invalid_argument);
  CHECK_THROWS_AS(KnotVector({}, 0), std::invalid_argument);
  CHECK_THROWS_AS(make_uniform_knots(-1, 2), std::invalid_argument);
  const KnotVector kv = make_uniform_knots(3, 2);
  CHECK(kv.locate(1.0) == 3);
  CHECK(kv.locate(-1.0) == 0);
  CHECK(kv.locate(0.0) == 2);
  CHECK_THROWS_AS(kv.locate(1.01), std::out_of_range);
}

TEST_CASE("hat functions of order 2") {
  const SplineSpace sp(make_uniform_knots(3, 2));
  const auto b = sp.knots().breakpoints();
  for (int j = 0; j < sp.dimension(); ++j) CHECK(sp.eval_basis(j, b[static_cast<std::size_t>(j)]) == doctest::Approx(1.0));
  CHECK(sp.eval_basis(1, -0.75) == doctest::Approx(0.5));
  CHECK(sp.eval_basis(1, 0.25) == 0.0);
  CHECK_THROWS_AS(sp.eval_basis(5, 0.0), std::out_of_range);
  CHECK_THROWS_AS(sp.eval_basis(-1, 0.0), std::out_of_range);
}

TEST_CASE("partition of unity and local support for orders 1 to 5") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int m = 1; m <= 5; ++m) {
    std::vector<double> interior{-0.7, -0.45, -0.1, 0.05, 0.3, 0.62, 0.9};
    const SplineSpace sp(KnotVector(interior, m));
    CHECK(sp.dimension() == 7 + m);
    for (int i = 0; i < 1000; ++i) {
      const double s = u(rng);
      double sum = 0.0;
      for (int j = 0; j < sp.dimension(); ++j) {
        const double v = sp.eval_basis(j, s);
        CHECK(v >= -1e-15);
        sum += v;
      }
      CHECK(std::abs(sum - 1.0) <= 1e-14);
    }
    CHECK(std::abs([&] {
            double s = 0.0;
            for (int j = 0; j < sp.dimension(); ++j) s += sp.eval_basis(j, 0.3);
            return s;
          }() - 1.0) <= 1e-14);

    const auto t = sp.knots().knots();
    for (int j = 0; j < sp.dimension(); ++j) {
      const double lo = t[static_cast<std::size_t>(j)], hi = t[static_cast<std::size_t>(j + m)];
      for (int i = 0; i < 50; ++i) {
        const double s = u(rng);
        if (s < lo || s > hi) CHECK(sp.eval_basis(j, s) == 0.0);
      }
    }
  }
}

TEST_CASE("eval_nonzero and local pieces agree with eval_basis") {
  const SplineSpace sp(make_uniform_knots(6, 3));
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const double s = u(rng);
    const LocalBasis lb = sp.eval_nonzero(s);
    const int k = sp.knots().locate(s);
    for (std::size_t q = 0; q < lb.values.size(); ++q) {
      const int j = lb.first + static_cast<int>(q);
      CHECK(lb.values[q] == doctest::Approx(sp.eval_basis(j, s)).epsilon(1e-13));
      const double c = sp.knots().cell_center(k);
      CHECK(std::abs(sp.piece(k, static_cast<int>(q))(s - c) - sp.eval_basis(j, s)) < 1e-13);
    }
  }
  const auto [a, b] = sp.support_cells(4);
  CHECK(a == 2);
  CHECK(b == 4);
}

TEST_CASE("gram matrix") {
  const int n = 7;
  const SplineSpace sp(make_uniform_knots(n, 2));
  const double h = 2.0 / (n + 1);
  const RealMatrix g = gram_matrix(sp);
  CHECK(g(3, 3) == doctest::Approx(2 * h / 3));
  CHECK(g(3, 4) == doctest::Approx(h / 6));
  CHECK(g(0, 0) == doctest::Approx(h / 3));
  CHECK(g(8, 8) == doctest::Approx(h / 3));
  CHECK(g(0, 2) == 0.0);

  // Composite midpoint rule with 1e4 subintervals split at the knots, with a
  // Richardson step against 5e3 subintervals.
  for (int m = 1; m <= 4; ++m) {
    for (int nn : {0, 3, 8}) {
      const SplineSpace s(make_uniform_knots(nn, m));
      const RealMatrix gg = gram_matrix(s);
      const int d = s.dimension();
      const auto br = s.knots().breakpoints();
      auto midpoint = [&](int sub) {
        RealMatrix out(static_cast<std::size_t>(d), static_cast<std::size_t>(d), 0.0);
        std::vector<double> v(static_cast<std::size_t>(d));
        const int per_cell = sub / static_cast<int>(br.size() - 1);
        for (std::size_t k = 0; k + 1 < br.size(); ++k) {
          const double w = (br[k + 1] - br[k]) / per_cell;
          for (int i = 0; i < per_cell; ++i) {
            const double x = br[k] + (i + 0.5) * w;
            for (int j = 0; j < d; ++j) v[static_cast<std::size_t>(j)] = s.eval_basis(j, x);
            for (int a = 0; a < d; ++a)
              for (int b = 0; b < d; ++b) out(a, b) += v[a] * v[b] * w;
          }
        }
        return out;
      };
      const RealMatrix fine = midpoint(10000), coarse = midpoint(5000);
      RealMatrix mid(static_cast<std::size_t>(d), static_cast<std::size_t>(d), 0.0);
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) mid(a, b) = (4.0 * fine(a, b) - coarse(a, b)) / 3.0;
      for (int a = 0; a < d; ++a) {
        for (int b = 0; b < d; ++b) {
          CHECK(gg(a, b) == doctest::Approx(gg(b, a)));
          CHECK(std::abs(gg(a, b) - mid(a, b)) <= 1e-8 * std::max(gg(a, a), 1e-300) + 1e-14);
        }
      }
      // Positive definite: Cholesky succeeds.
      std::vector<double> l(static_cast<std::size_t>(d * d), 0.0);
      bool spd = true;
      for (int i = 0; i < d && spd; ++i) {
        for (int j = 0; j <= i; ++j) {
          double acc = gg(i, j);
          for (int k = 0; k < j; ++k) acc -= l[i * d + k] * l[j * d + k];
          if (i == j) {
            if (acc <= 0.0) spd = false;
            l[i * d + i] = std::sqrt(std::max(acc, 0.0));
          } else {
            l[i * d + j] = acc / l[j * d + j];
          }
        }
      }
      CHECK(spd);
    }
  }
}

TEST_CASE("gram matrix condition number is mesh independent") {
  // Interior rows have spectrum in [h/3, h]; the corner entries h/3 pull the
  // smallest eigenvalue down to h/4, so the bound is 4.
  double lo = 1e300, hi = 0.0;
  for (int n = 16; n <= 512; n *= 2) {
    const RealMatrix g = gram_matrix(SplineSpace(make_uniform_knots(n, 2)));
    const double c = cond2(to_complex(g));
    CHECK(c <= 4.0 + 1e-6);
    CHECK(c >= 3.9);
    lo = std::min(lo, c);
    hi = std::max(hi, c);
  }
  CHECK(hi / lo < 1.01);
}

TEST_CASE("piecewise linear interpolation") {
  const auto lin = interp_linear(std::vector<double>{-1.0, 0.0, 1.0});
  for (double s : {-1.0, -0.37, 0.0, 0.5, 1.0}) CHECK(lin(s) == doctest::Approx(s));
  CHECK_THROWS_AS(interp_linear(std::vector<double>{1.0}), std::invalid_argument);

  const auto sq = [](double t) { return t * t; };
  const auto isq = interpolate_on_grid(sq, 1281);
  const double h = 2.0 / 1280;
  // h^2/8 * max|f''| with f'' = 2.
  CHECK(max_error_on_grid(sq, isq, 20001) <= h * h / 4 * (1 + 1e-9));
  for (double s : uniform_grid(1281)) CHECK(isq(s) == doctest::Approx(sq(s)));

  const auto zero = [](double) { return 0.0; };
  const auto one = [](double) { return 1.0; };
  CHECK(max_error_on_grid(sq, sq, 7) == 0.0);
  CHECK(max_error_on_grid(one, zero, 2) == 1.0);
  CHECK(max_error_on_grid(one, zero, 2049) == 1.0);
}

TEST_CASE("oscillatory interpolation errors") {
  const OscProbeFunction g1{1, 40.0};
  CHECK(max_error_on_grid(g1, interpolate_on_grid(g1, kTable1Nodes), kTable1Samples) ==
        doctest::Approx(4.89e-4).epsilon(0.05));
  const OscProbeFunction g3{3, 640.0};
  CHECK(max_error_on_grid(g3, interpolate_on_grid(g3, kTable1Nodes), kTable1Samples) ==
        doctest::Approx(9.09e-7).epsilon(0.05));
}
