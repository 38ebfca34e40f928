#pragma once

#include <complex>
#include <initializer_list>
#include <span>
#include <vector>

namespace oscfred {

using cplx = std::complex<double>;

inline constexpr cplx kI{0.0, 1.0};

/// Univariate polynomial with complex coefficients in the monomial basis,
/// stored lowest degree first. Trailing zero coefficients are trimmed, so the
/// zero polynomial has an empty coefficient list.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<cplx> coeffs);
  Polynomial(std::initializer_list<cplx> coeffs);
  /// Constant polynomial.
  explicit Polynomial(double c) : Polynomial(std::vector<cplx>{c}) {}

  static Polynomial constant(cplx c);
  static Polynomial monomial(int k, cplx c = 1.0);
  /// c0 + c1 * t, the affine map used by the B-spline recurrences.
  static Polynomial linear(cplx c0, cplx c1);

  /// Degree of the polynomial; the zero polynomial reports 0.
  int degree() const { return coeffs_.empty() ? 0 : static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  std::span<const cplx> coeffs() const { return coeffs_; }
  /// Coefficient of t^k, zero beyond the stored degree.
  cplx operator[](int k) const;

  cplx operator()(double t) const;
  cplx operator()(cplx t) const;

  Polynomial derivative(int order = 1) const;
  /// Antiderivative vanishing at t = 0.
  Polynomial antiderivative() const;
  /// q(u) = p(center + u).
  Polynomial shifted(double center) const;

  Polynomial& operator+=(const Polynomial& rhs);
  Polynomial& operator-=(const Polynomial& rhs);
  Polynomial& operator*=(cplx c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, cplx c) { return a *= c; }
  friend Polynomial operator*(cplx c, Polynomial a) { return a *= c; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

 private:
  void trim();
  std::vector<cplx> coeffs_;
};

}  // namespace oscfred
