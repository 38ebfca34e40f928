#include "oscfred/structured.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace oscfred {

namespace {

void check_tau(int tau) {
  if (tau < -kMaxTau || tau > kMaxTau)
    throw std::invalid_argument("structured function: frequency index " + std::to_string(tau) + " out of range");
}

}  // namespace

StructuredFunction::StructuredFunction(double kappa, std::vector<StructuredTerm> terms) : kappa_(kappa) {
  for (auto& t : terms) add(t.tau, t.amplitude);
}

void StructuredFunction::add(int tau, const Polynomial& amp) {
  check_tau(tau);
  auto it = std::lower_bound(terms_.begin(), terms_.end(), tau,
                             [](const StructuredTerm& t, int v) { return t.tau < v; });
  if (it != terms_.end() && it->tau == tau) {
    it->amplitude += amp;
  } else {
    terms_.insert(it, StructuredTerm{tau, amp});
  }
}

const Polynomial* StructuredFunction::amplitude(int tau) const {
  for (const auto& t : terms_)
    if (t.tau == tau) return &t.amplitude;
  return nullptr;
}

int StructuredFunction::max_degree() const {
  int d = 0;
  for (const auto& t : terms_) d = std::max(d, t.amplitude.degree());
  return d;
}

cplx StructuredFunction::operator()(double s) const {
  cplx sum = 0.0;
  for (const auto& t : terms_) sum += t.amplitude(s) * std::exp(kI * (t.tau * kappa_ * s));
  return sum;
}

StructuredFunction operator-(const StructuredFunction& a, const StructuredFunction& b) {
  StructuredFunction out = a;
  for (const auto& t : b.terms()) out.add(t.tau, t.amplitude * cplx(-1.0));
  return out;
}

SmoothStructuredFunction::SmoothStructuredFunction(double kappa, std::vector<SmoothStructuredTerm> terms)
    : kappa_(kappa), terms_(std::move(terms)) {
  for (const auto& t : terms_) check_tau(t.tau);
}

cplx SmoothStructuredFunction::operator()(double s) const {
  cplx sum = 0.0;
  for (const auto& t : terms_) sum += t.amplitude(s) * std::exp(kI * (t.tau * kappa_ * s));
  return sum;
}

BivariatePolynomial::BivariatePolynomial(std::vector<std::vector<cplx>> coeffs) {
  rows_ = coeffs.size();
  for (const auto& r : coeffs) cols_ = std::max(cols_, r.size());
  if (rows_ == 0 || cols_ == 0) {
    rows_ = cols_ = 0;
    return;
  }
  c_.assign(rows_ * cols_, 0.0);
  for (std::size_t a = 0; a < rows_; ++a)
    for (std::size_t b = 0; b < coeffs[a].size(); ++b) c_[a * cols_ + b] = coeffs[a][b];
}

BivariatePolynomial BivariatePolynomial::constant(cplx c) { return BivariatePolynomial({{c}}); }

bool BivariatePolynomial::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const cplx& z) { return z == cplx(0.0); });
}

cplx BivariatePolynomial::coeff(int a, int b) const {
  if (a < 0 || b < 0 || a > degree_s() || b > degree_t()) return 0.0;
  return c_[static_cast<std::size_t>(a) * cols_ + static_cast<std::size_t>(b)];
}

cplx BivariatePolynomial::operator()(double s, double t) const {
  cplx acc = 0.0;
  for (std::size_t a = rows_; a-- > 0;) {
    cplx row = 0.0;
    for (std::size_t b = cols_; b-- > 0;) row = row * t + c_[a * cols_ + b];
    acc = acc * s + row;
  }
  return acc;
}

BivariatePolynomial BivariatePolynomial::shifted(double cs, double ct) const {
  if (rows_ == 0) return {};
  std::vector<std::vector<cplx>> out(rows_, std::vector<cplx>(cols_, 0.0));
  std::vector<Polynomial> in_t(rows_);
  for (std::size_t a = 0; a < rows_; ++a) {
    std::vector<cplx> r(c_.begin() + static_cast<long>(a * cols_), c_.begin() + static_cast<long>((a + 1) * cols_));
    in_t[a] = Polynomial(std::move(r)).shifted(ct);
  }
  for (std::size_t b = 0; b < cols_; ++b) {
    std::vector<cplx> col(rows_);
    for (std::size_t a = 0; a < rows_; ++a) col[a] = in_t[a][static_cast<int>(b)];
    const Polynomial p = Polynomial(std::move(col)).shifted(cs);
    for (std::size_t a = 0; a < rows_; ++a) out[a][b] = p[static_cast<int>(a)];
  }
  return BivariatePolynomial(std::move(out));
}

OscKernel OscKernel::polynomial(BivariatePolynomial k, double kappa) {
  if (!(kappa > 1.0)) throw std::invalid_argument("OscKernel: wavenumber must exceed 1");
  OscKernel out;
  out.kappa_ = kappa;
  out.poly_ = std::move(k);
  return out;
}

OscKernel OscKernel::smooth(KernelFn k, double kappa, int points) {
  if (!(kappa > 1.0)) throw std::invalid_argument("OscKernel: wavenumber must exceed 1");
  if (!k) throw std::invalid_argument("OscKernel: empty kernel callable");
  if (points < 1 || points > 20) throw std::invalid_argument("OscKernel: interpolation points must lie in [1, 20]");
  OscKernel out;
  out.kappa_ = kappa;
  out.fn_ = std::move(k);
  out.points_ = points;

  const auto n = static_cast<std::size_t>(points);
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = std::cos(std::numbers::pi * (2.0 * i + 1.0) / (2.0 * points));
  // Gauss-Jordan inverse of V[i][k] = x_i^k.
  std::vector<double> v(n * n), inv(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double p = 1.0;
    for (std::size_t k = 0; k < n; ++k, p *= x[i]) v[i * n + k] = p;
    inv[i * n + i] = 1.0;
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(v[r * n + col]) > std::abs(v[piv * n + col])) piv = r;
    for (std::size_t k = 0; k < n; ++k) {
      std::swap(v[col * n + k], v[piv * n + k]);
      std::swap(inv[col * n + k], inv[piv * n + k]);
    }
    const double d = v[col * n + col];
    for (std::size_t k = 0; k < n; ++k) v[col * n + k] /= d, inv[col * n + k] /= d;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = v[r * n + col];
      if (f == 0.0) continue;
      for (std::size_t k = 0; k < n; ++k) v[r * n + k] -= f * v[col * n + k], inv[r * n + k] -= f * inv[col * n + k];
    }
  }
  out.nodes_ = std::make_shared<const std::vector<double>>(std::move(x));
  out.inv_vandermonde_ = std::make_shared<const std::vector<double>>(std::move(inv));
  return out;
}

int OscKernel::local_degree_s() const { return fn_ ? points_ - 1 : poly_.degree_s(); }
int OscKernel::local_degree_t() const { return fn_ ? points_ - 1 : poly_.degree_t(); }

BivariatePolynomial OscKernel::local(double cs, double hs, double ct, double ht) const {
  if (!fn_) return poly_.shifted(cs, ct);
  const auto n = static_cast<std::size_t>(points_);
  const auto& x = *nodes_;
  const auto& vinv = *inv_vandermonde_;
  std::vector<cplx> vals(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) vals[i * n + j] = fn_(cs + hs * x[i], ct + ht * x[j]);
  // C = Vinv * vals * Vinv^T, then undo the scaling of each variable.
  std::vector<cplx> tmp(n * n, 0.0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t i = 0; i < n; ++i) {
      const double w = vinv[a * n + i];
      for (std::size_t j = 0; j < n; ++j) tmp[a * n + j] += w * vals[i * n + j];
    }
  std::vector<std::vector<cplx>> c(n, std::vector<cplx>(n, 0.0));
  double sa = 1.0;
  for (std::size_t a = 0; a < n; ++a, sa /= hs) {
    double sb = 1.0;
    for (std::size_t b = 0; b < n; ++b, sb /= ht) {
      cplx acc = 0.0;
      for (std::size_t j = 0; j < n; ++j) acc += tmp[a * n + j] * vinv[b * n + j];
      c[a][b] = acc * sa * sb;
    }
  }
  return BivariatePolynomial(std::move(c));
}

}  // namespace oscfred
