#include "oscfred/polynomial.hpp"

#include <algorithm>

namespace oscfred {

Polynomial::Polynomial(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Polynomial::Polynomial(std::initializer_list<cplx> coeffs) : coeffs_(coeffs) { trim(); }

Polynomial Polynomial::constant(cplx c) { return Polynomial(std::vector<cplx>{c}); }

Polynomial Polynomial::monomial(int k, cplx c) {
  std::vector<cplx> v(static_cast<std::size_t>(k) + 1, 0.0);
  v.back() = c;
  return Polynomial(std::move(v));
}

Polynomial Polynomial::linear(cplx c0, cplx c1) { return Polynomial({c0, c1}); }

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == cplx(0.0)) coeffs_.pop_back();
}

cplx Polynomial::operator[](int k) const {
  if (k < 0 || k >= static_cast<int>(coeffs_.size())) return 0.0;
  return coeffs_[static_cast<std::size_t>(k)];
}

cplx Polynomial::operator()(double t) const {
  cplx acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

cplx Polynomial::operator()(cplx t) const {
  cplx acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

Polynomial Polynomial::derivative(int order) const {
  std::vector<cplx> c = coeffs_;
  for (int r = 0; r < order && !c.empty(); ++r) {
    for (std::size_t k = 1; k < c.size(); ++k) c[k - 1] = c[k] * static_cast<double>(k);
    c.pop_back();
  }
  return Polynomial(std::move(c));
}

Polynomial Polynomial::antiderivative() const {
  if (coeffs_.empty()) return {};
  std::vector<cplx> c(coeffs_.size() + 1, 0.0);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) c[k + 1] = coeffs_[k] / static_cast<double>(k + 1);
  return Polynomial(std::move(c));
}

Polynomial Polynomial::shifted(double center) const {
  // Repeated synthetic division (Taylor shift), O(n^2).
  std::vector<cplx> c = coeffs_;
  const std::size_t n = c.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t k = n - 1; k > i; --k) c[k - 1] += center * c[k];
  }
  return Polynomial(std::move(c));
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), 0.0);
  for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k) coeffs_[k] += rhs.coeffs_[k];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), 0.0);
  for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k) coeffs_[k] -= rhs.coeffs_[k];
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(cplx c) {
  for (auto& x : coeffs_) x *= c;
  trim();
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<cplx> c(a.coeffs_.size() + b.coeffs_.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return Polynomial(std::move(c));
}

}  // namespace oscfred
