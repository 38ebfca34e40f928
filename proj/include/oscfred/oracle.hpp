#pragma once

// Brute-force reference quadrature for checking the closed-form assembly.
//
// Everything here works from point evaluations only (B-spline values, kernel
// values, right-hand side values) on composite Gauss-Legendre rules with at
// least 40 nodes per wavelength, split at every knot and at the kink s = t.
// Each result is computed at two resolutions; the difference is reported so
// callers can confirm convergence. Cost grows with kappa, so this is meant for
// small instances only.

#include <functional>

#include "oscfred/galerkin.hpp"

namespace oscfred::oracle {

template <class T>
struct Checked {
  T value;
  /// Largest absolute change between the two resolutions.
  double discrepancy = 0.0;
};

/// int_a^b f, panels no longer than half a wavelength of omega_max, refined
/// by doubling until successive results agree to tol (at most 8 doublings).
Checked<cplx> integrate(const std::function<cplx(double)>& f, double a, double b, double omega_max,
                        double tol = 1e-14);

Checked<ComplexMatrix> mass_matrix(const TrialSpace& space);
Checked<ComplexMatrix> operator_matrix(const TrialSpace& space, const OscKernel& kernel);
Checked<ComplexVector> load_vector(const TrialSpace& space, const std::function<cplx(double)>& f,
                                   double omega_max);

/// (K y)(s) = int K(s,t) exp(i kappa |s-t|) y(t) dt by splitting at t = s.
Checked<cplx> apply_operator_at(const OscKernel& kernel, const std::function<cplx(double)>& y, double s,
                                double omega_max);

}  // namespace oscfred::oracle
