#pragma once

// Oscillatory quadrature engine.
//
// Integrals of the form  int_a^b u(t) exp(i w t) dt  are evaluated either in
// closed form (polynomial u) or by the integration-by-parts boundary series
// plus a remainder (smooth u). Whenever the phase across the interval
// |w (b - a)| drops below one (below the degree for polynomial u), the
// 1/(i w) expansions lose accuracy and Gauss-Legendre is used instead.

#include <functional>
#include <vector>

#include "oscfred/polynomial.hpp"

namespace oscfred {

/// Below this phase |w (b - a)| the boundary expansions are replaced by
/// Gauss-Legendre.
inline constexpr double kSmallPhase = 1.0;

/// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Cached q-point rule, q in [1, 64]. Throws std::invalid_argument otherwise.
const GaussRule& gauss_rule(int q);

using ComplexFn = std::function<cplx(double)>;

/// q-point Gauss-Legendre approximation of int_a^b u(t) dt.
cplx gauss_legendre(const ComplexFn& u, double a, double b, int q);

/// Composite Gauss-Legendre on panels no longer than one wavelength 2 pi/|w|
/// (and never more than `max_panel` long), `nodes` points per panel.
cplx panelized_gauss(const ComplexFn& u, double a, double b, double omega, int nodes = 20,
                     double max_panel = 2.0);

/// A smooth amplitude together with its derivatives: derivatives()[k] is u^(k).
class SmoothAmplitude {
 public:
  SmoothAmplitude() = default;
  explicit SmoothAmplitude(std::vector<ComplexFn> derivatives);

  /// Polynomial amplitude with all derivatives up to `order` available.
  static SmoothAmplitude from_polynomial(const Polynomial& p, int order);

  /// Highest derivative order available (value only = 0, empty = -1).
  int available_order() const { return static_cast<int>(derivs_.size()) - 1; }
  cplx operator()(double t) const { return derivative(0, t); }
  /// u^(k)(t); throws std::out_of_range when k is not available.
  cplx derivative(int k, double t) const;

  /// Amplitude u * p, derivatives by the Leibniz rule.
  SmoothAmplitude times(const Polynomial& p) const;

 private:
  std::vector<ComplexFn> derivs_;
};

/// sigma_n[u](t) = sum_{j<n} (-1)^j (i w)^{-(j+1)} u^(j)(t).
/// Throws std::domain_error for w == 0 and std::invalid_argument when u lacks
/// derivatives up to n - 1.
cplx sigma_n(const SmoothAmplitude& u, double t, double omega, int n);

/// Polynomial R with d/dt [exp(i w t) R(t)] = p(t) exp(i w t), i.e. the
/// boundary series carried to n = deg p + 1 where it terminates. w != 0.
Polynomial sigma_polynomial(const Polynomial& p, double omega);

/// Exact int_a^b p(t) exp(i w t) dt. The polynomial is re-centred on the
/// interval midpoint before integration.
cplx poly_exp_moment(const Polynomial& p, double a, double b, double omega);

/// Same as poly_exp_moment but without re-centring: use when p is already
/// written in a coordinate local to [lo, hi].
cplx local_poly_exp_moment(const Polynomial& p, double lo, double hi, double omega);

/// Boundary terms exp(i w b) sigma_n[u](b) - exp(i w a) sigma_n[u](a) only.
cplx filon_asymptotic(const SmoothAmplitude& u, double a, double b, double omega, int n);

/// Boundary terms plus the remainder (-1)^n (i w)^{-n} int_a^b u^(n) exp(i w t) dt,
/// the remainder evaluated by panelized Gauss-Legendre.
/// Requires |w (b - a)| >= 1 and u^(n) available; throws std::invalid_argument.
cplx filon_integral(const SmoothAmplitude& u, double a, double b, double omega, int n);

/// One term amp(t) * exp(i w t) of an exponential polynomial.
struct ExpPolyTerm {
  double omega = 0.0;
  Polynomial amplitude;
};
using ExpPoly = std::vector<ExpPolyTerm>;

cplx evaluate(const ExpPoly& f, double t);

/// Antiderivative t -> int_lo^t q(u) exp(i w u) du as an exponential
/// polynomial, accurate for t in [lo, hi]. Large phases use sigma_polynomial,
/// small ones a truncated Taylor expansion of the exponential about the
/// interval midpoint (a pure polynomial result).
ExpPoly exp_antiderivative(const Polynomial& q, double omega, double lo, double hi);

}  // namespace oscfred
