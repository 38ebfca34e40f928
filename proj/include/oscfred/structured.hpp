#pragma once

// Functions with a known oscillatory structure  sum_tau w_tau(s) exp(i tau kappa s),
// and the smooth kernel factor K(s, t) of the integral operator.

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "oscfred/oscquad.hpp"
#include "oscfred/polynomial.hpp"

namespace oscfred {

/// Frequencies tau are restricted to {-kMaxTau, ..., kMaxTau}.
inline constexpr int kMaxTau = 2;

struct StructuredTerm {
  int tau = 0;
  Polynomial amplitude;
};

/// sum_tau w_tau(s) exp(i tau kappa s) with polynomial amplitudes, at most one
/// term per tau, kept sorted by tau.
class StructuredFunction {
 public:
  explicit StructuredFunction(double kappa = 0.0) : kappa_(kappa) {}
  StructuredFunction(double kappa, std::vector<StructuredTerm> terms);

  double kappa() const { return kappa_; }
  std::span<const StructuredTerm> terms() const { return terms_; }

  /// Adds amp to the tau term (creating it when missing).
  void add(int tau, const Polynomial& amp);
  /// Amplitude of the tau term, or nullptr.
  const Polynomial* amplitude(int tau) const;
  int max_degree() const;

  cplx operator()(double s) const;

 private:
  double kappa_;
  std::vector<StructuredTerm> terms_;
};

StructuredFunction operator-(const StructuredFunction& a, const StructuredFunction& b);

struct SmoothStructuredTerm {
  int tau = 0;
  SmoothAmplitude amplitude;
};

/// Structured function whose amplitudes are general smooth functions with
/// derivative callables.
class SmoothStructuredFunction {
 public:
  SmoothStructuredFunction(double kappa, std::vector<SmoothStructuredTerm> terms);
  double kappa() const { return kappa_; }
  std::span<const SmoothStructuredTerm> terms() const { return terms_; }
  cplx operator()(double s) const;

 private:
  double kappa_;
  std::vector<SmoothStructuredTerm> terms_;
};

/// K(s, t) = sum_{a,b} c[a][b] s^a t^b.
class BivariatePolynomial {
 public:
  BivariatePolynomial() = default;
  /// coeffs[a][b] multiplies s^a t^b; ragged rows are padded with zeros.
  explicit BivariatePolynomial(std::vector<std::vector<cplx>> coeffs);
  static BivariatePolynomial constant(cplx c);

  int degree_s() const { return static_cast<int>(rows_) - 1; }
  int degree_t() const { return static_cast<int>(cols_) - 1; }
  bool is_zero() const;
  cplx coeff(int a, int b) const;
  cplx operator()(double s, double t) const;

  /// (v, u) -> K(cs + v, ct + u).
  BivariatePolynomial shifted(double cs, double ct) const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<cplx> c_;  // row-major rows_ x cols_
};

using KernelFn = std::function<cplx(double, double)>;

/// The kernel K(s,t) exp(i kappa |s - t|): a smooth factor K independent of
/// kappa and the wavenumber kappa > 1.
class OscKernel {
 public:
  static OscKernel polynomial(BivariatePolynomial k, double kappa);
  /// General smooth factor. On every pair of mesh cells it is replaced by its
  /// tensor Chebyshev interpolant with `points` nodes per direction.
  static OscKernel smooth(KernelFn k, double kappa, int points = 10);

  double kappa() const { return kappa_; }
  bool is_polynomial() const { return !fn_; }
  const BivariatePolynomial& poly() const { return poly_; }
  cplx operator()(double s, double t) const { return fn_ ? fn_(s, t) : poly_(s, t); }
  /// Polynomial degree per variable of the local representation.
  int local_degree_s() const;
  int local_degree_t() const;

  /// Local polynomial in (v, u) on [cs - hs, cs + hs] x [ct - ht, ct + ht]
  /// with s = cs + v, t = ct + u. Exact for polynomial kernels.
  BivariatePolynomial local(double cs, double hs, double ct, double ht) const;

 private:
  OscKernel() = default;
  double kappa_ = 0.0;
  BivariatePolynomial poly_;
  KernelFn fn_;
  int points_ = 0;
  std::shared_ptr<const std::vector<double>> nodes_;
  std::shared_ptr<const std::vector<double>> inv_vandermonde_;
};

}  // namespace oscfred
