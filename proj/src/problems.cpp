#include "oscfred/problems.hpp"

#include <cmath>
#include <stdexcept>

#include "oscfred/bspline.hpp"
#include "oscfred/galerkin.hpp"

namespace oscfred {

Problem paper_benchmark(double kappa) {
  if (!(kappa > 1.0)) throw std::invalid_argument("paper_benchmark: wavenumber must exceed 1");
  const double k = kappa, k2 = k * k, k3 = k2 * k, k4 = k3 * k;
  const cplx e1 = std::exp(kI * k), e2 = std::exp(2.0 * kI * k);

  StructuredFunction f(kappa);
  f.add(1, Polynomial({-3.0 / (8.0 * k4) + kI * e1 / k + 0.25, 3.0 * kI / (4.0 * k3), 3.0 / (4.0 * k2),
                       1.0 - kI / (2.0 * k), -0.25}));
  const cplx c_minus = -(e2 / (8.0 * k4) * (-3.0 + 6.0 * kI * k + 6.0 * k2 - 4.0 * kI * k3) - kI * e1 / k);
  f.add(-1, Polynomial::constant(c_minus));
  f.add(0, Polynomial::constant(1.0 - 2.0 * kI / k));

  StructuredFunction y(kappa);
  y.add(0, Polynomial::constant(1.0));
  y.add(1, Polynomial::monomial(3));

  return Problem{OscKernel::polynomial(BivariatePolynomial::constant(1.0), kappa), std::move(f), std::move(y),
                 4.0 * std::sqrt(7.0) / 7.0, "benchmark"};
}

StructuredFunction apply_operator(const OscKernel& kernel, const StructuredFunction& y) {
  if (!kernel.is_polynomial()) throw std::invalid_argument("apply_operator: kernel factor must be polynomial");
  const double kappa = kernel.kappa();
  if (std::abs(y.kappa() - kappa) > 1e-12 * kappa)
    throw std::invalid_argument("apply_operator: wavenumber mismatch");
  const BivariatePolynomial& kp = kernel.poly();
  StructuredFunction out(kappa);
  for (int a = 0; a <= kp.degree_s(); ++a) {
    for (int b = 0; b <= kp.degree_t(); ++b) {
      const cplx cab = kp.coeff(a, b);
      if (cab == cplx(0.0)) continue;
      const Polynomial sa = Polynomial::monomial(a, cab);
      for (const auto& term : y.terms()) {
        const int tau = term.tau;
        const Polynomial q = Polynomial::monomial(b) * term.amplitude;
        if (q.is_zero()) continue;
        // t < s:  exp(i kappa s) int_{-1}^{s} q(t) exp(i kappa (tau - 1) t) dt
        if (tau == 1) {
          const Polynomial anti = q.antiderivative();
          out.add(1, sa * (anti - Polynomial::constant(anti(-1.0))));
        } else {
          const double w = kappa * (tau - 1);
          const Polynomial r = sigma_polynomial(q, w);
          out.add(tau, sa * r);
          out.add(1, sa * (-std::exp(-kI * w) * r(-1.0)));
        }
        // t > s:  exp(-i kappa s) int_{s}^{1} q(t) exp(i kappa (tau + 1) t) dt
        if (tau == -1) {
          const Polynomial anti = q.antiderivative();
          out.add(-1, sa * (Polynomial::constant(anti(1.0)) - anti));
        } else {
          const double w = kappa * (tau + 1);
          const Polynomial r = sigma_polynomial(q, w);
          out.add(-1, sa * (std::exp(kI * w) * r(1.0)));
          out.add(tau, sa * cplx(-1.0) * r);
        }
      }
    }
  }
  if (out.max_degree() > kMaxManufacturedDegree)
    throw std::overflow_error("apply_operator: amplitude degree exceeds the manufactured-problem cap");
  return out;
}

Problem manufactured(const OscKernel& kernel, const StructuredFunction& y) {
  StructuredFunction f = y - apply_operator(kernel, y);
  double norm = sampled_norm([&](double s) { return y(s); });
  if (norm == 0.0) norm = 1.0;
  return Problem{kernel, std::move(f), y, norm, "manufactured"};
}

double OscProbeFunction::operator()(double t) const {
  return t * t + std::sin(kappa * t) / std::pow(kappa, j - 1);
}

std::vector<Table1Row> table1_experiment(std::span<const double> kappas) {
  std::vector<Table1Row> rows;
  for (double kappa : kappas) {
    if (!(kappa > 0.0)) throw std::invalid_argument("table1_experiment: wavenumbers must be positive");
    Table1Row row{kappa, {}};
    for (int j = 1; j <= 3; ++j) {
      const OscProbeFunction g{j, kappa};
      const auto interp = interpolate_on_grid(g, kTable1Nodes);
      row.errors[static_cast<std::size_t>(j - 1)] = max_error_on_grid(g, interp, kTable1Samples);
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace oscfred
