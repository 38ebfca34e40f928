#pragma once

// Galerkin discretization of
//
//   y(s) - int_{-1}^{1} K(s,t) exp(i kappa |s - t|) y(t) dt = f(s)
//
// on the plain spline space (CGM) or on the oscillation-enriched space
// S + S exp(i kappa s) + S exp(-i kappa s) (OPGM).
//
// Indexing: basis function index = block * d + j for B_j(s) exp(i eps_block kappa s),
// with block multipliers eps = (-1, 0, +1) for OPGM and (0) for CGM.
// Matrix entries follow the usual test-by-trial convention
//   mass(r, c) = (phi_c, phi_r),   op(r, c) = (K phi_c, phi_r),   load(r) = (f, phi_r),
// with (u, v) = int u conj(v), so mass is Hermitian and (mass - op) a = load
// is the Galerkin system.

#include <functional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "oscfred/bspline.hpp"
#include "oscfred/linalg.hpp"
#include "oscfred/structured.hpp"

namespace oscfred {

enum class Method { cgm, opgm };

std::string_view to_string(Method m);
/// "cgm" or "opgm"; throws std::invalid_argument otherwise.
Method parse_method(std::string_view s);

class TrialSpace {
 public:
  TrialSpace(SplineSpace spline, Method method, double kappa);

  const SplineSpace& spline() const { return spline_; }
  Method method() const { return method_; }
  double kappa() const { return kappa_; }
  int block_size() const { return spline_.dimension(); }
  int block_count() const { return static_cast<int>(eps_.size()); }
  int dimension() const { return block_size() * block_count(); }
  int multiplier(int block) const { return eps_[static_cast<std::size_t>(block)]; }
  std::span<const int> multipliers() const { return eps_; }

  /// phi_index(s) = B_j(s) exp(i eps kappa s).
  cplx eval_basis(int index, double s) const;

 private:
  SplineSpace spline_;
  Method method_;
  double kappa_;
  std::vector<int> eps_;
};

/// Trial space on the uniform mesh with N interior breakpoints.
TrialSpace make_trial_space(Method method, int n_interior, int order, double kappa);

struct DiscreteSystem {
  ComplexMatrix mass;
  ComplexMatrix op;
  ComplexVector load;
  int block_size = 0;
  int block_count = 0;

  /// mass - op.
  ComplexMatrix matrix() const;
};

ComplexMatrix assemble_mass(const TrialSpace& space);

/// Closed-form assembly of the operator matrix; cost does not depend on kappa.
/// threads <= 0 uses default_thread_count().
/// Throws std::invalid_argument when the kernel wavenumber differs from the space's.
ComplexMatrix assemble_operator(const TrialSpace& space, const OscKernel& kernel, int threads = 0);

ComplexVector assemble_rhs(const TrialSpace& space, const StructuredFunction& f);

/// Right-hand side with smooth amplitudes: Filon integration on every cell
/// whose phase reaches the oscillatory threshold, Gauss-Legendre elsewhere.
/// Amplitudes must provide at least their first derivative.
ComplexVector assemble_rhs(const TrialSpace& space, const SmoothStructuredFunction& f);

DiscreteSystem assemble(const TrialSpace& space, const OscKernel& kernel, const StructuredFunction& f,
                        int threads = 0);

/// The discrete operator has 1 as an eigenvalue (or the basis degenerated).
class SingularSystemError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Coefficients a with (mass - op) a = load. Throws SingularSystemError.
ComplexVector solve(const DiscreteSystem& system);

/// y_h(s) for coefficients a; throws std::invalid_argument on size mismatch.
cplx eval_solution(const TrialSpace& space, std::span<const cplx> a, double s);

using ComplexFn1 = std::function<cplx(double)>;

/// Number of samples and grid of the relative error metric:
/// s_j = -1 + j/1024, j = 1..2048.
inline constexpr int kErrorSamples = 2048;

/// e_N = (1/norm_y) * ( sum_j |y(s_j) - y_h(s_j)|^2 / 2048 )^{1/2}.
double relative_error_eN(const ComplexFn1& y_h, const ComplexFn1& y, double norm_y);

/// L2 norm on [-1, 1] from the grid of relative_error_eN:
/// ( sum_j |y(s_j)|^2 / 1024 )^{1/2}. Gives about 4 sqrt(7)/7 for the benchmark solution.
double sampled_norm(const ComplexFn1& y);

/// log2(e_N / e_2N). Throws std::invalid_argument unless both are positive.
double convergence_order(double e_n, double e_2n);

}  // namespace oscfred
