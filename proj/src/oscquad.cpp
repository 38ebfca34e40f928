#include "oscfred/oscquad.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace oscfred {

namespace {

constexpr int kMaxGauss = 64;

GaussRule build_rule(int q) {
  GaussRule rule;
  rule.nodes.resize(static_cast<std::size_t>(q));
  rule.weights.resize(static_cast<std::size_t>(q));
  for (int i = 0; i < q; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (q + 0.5));
    double dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= q; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = q * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Nodes come out descending; store ascending.
    const auto idx = static_cast<std::size_t>(q - 1 - i);
    rule.nodes[idx] = x;
    rule.weights[idx] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

const std::array<GaussRule, kMaxGauss + 1>& gauss_table() {
  static const std::array<GaussRule, kMaxGauss + 1> table = [] {
    std::array<GaussRule, kMaxGauss + 1> t{};
    for (int q = 1; q <= kMaxGauss; ++q) t[static_cast<std::size_t>(q)] = build_rule(q);
    return t;
  }();
  return table;
}

cplx gauss_poly_exp(const Polynomial& p, double lo, double hi, double omega) {
  const double phase = std::abs(omega * (hi - lo));
  const int q = std::min(kMaxGauss, (p.degree() + 2) / 2 + 8 + static_cast<int>(std::ceil(phase)));
  const GaussRule& rule = gauss_rule(q);
  const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
  cplx sum = 0.0;
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    const double t = mid + half * rule.nodes[k];
    sum += rule.weights[k] * p(t) * std::exp(kI * (omega * t));
  }
  return half * sum;
}

// Upward recurrence M_n = (hi^n e^{i w hi} - lo^n e^{i w lo} - n M_{n-1}) / (i w).
cplx recurrence_poly_exp(const Polynomial& p, double lo, double hi, double omega) {
  const cplx iw = kI * omega;
  const cplx ehi = std::exp(kI * (omega * hi));
  const cplx elo = std::exp(kI * (omega * lo));
  cplx m = (ehi - elo) / iw;
  cplx sum = p[0] * m;
  double phi = 1.0, plo = 1.0;
  for (int n = 1; n <= p.degree(); ++n) {
    phi *= hi;
    plo *= lo;
    m = (phi * ehi - plo * elo - static_cast<double>(n) * m) / iw;
    sum += p[n] * m;
  }
  return sum;
}

constexpr int kRecurrenceMaxDegree = 12;

// The boundary series and the recurrence amplify roundoff by about
// deg! / (phase / 2)^deg, so they are only used once the phase reaches the degree.
bool oscillatory_path(double phase, int degree) { return phase >= std::max(kSmallPhase, static_cast<double>(degree)); }

}  // namespace

const GaussRule& gauss_rule(int q) {
  if (q < 1 || q > kMaxGauss)
    throw std::invalid_argument("gauss_rule: unsupported node count " + std::to_string(q));
  return gauss_table()[static_cast<std::size_t>(q)];
}

cplx gauss_legendre(const ComplexFn& u, double a, double b, int q) {
  const GaussRule& rule = gauss_rule(q);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  cplx sum = 0.0;
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) sum += rule.weights[k] * u(mid + half * rule.nodes[k]);
  return half * sum;
}

cplx panelized_gauss(const ComplexFn& u, double a, double b, double omega, int nodes, double max_panel) {
  const double len = b - a;
  if (len == 0.0) return 0.0;
  const double by_wave = std::abs(omega) * std::abs(len) / (2.0 * std::numbers::pi);
  const double by_len = std::abs(len) / max_panel;
  const auto panels = std::max<long>(1, static_cast<long>(std::ceil(std::max(by_wave, by_len))));
  const double width = len / static_cast<double>(panels);
  cplx sum = 0.0;
  for (long k = 0; k < panels; ++k) {
    const double lo = a + width * static_cast<double>(k);
    sum += gauss_legendre(u, lo, k + 1 == panels ? b : lo + width, nodes);
  }
  return sum;
}

SmoothAmplitude::SmoothAmplitude(std::vector<ComplexFn> derivatives) : derivs_(std::move(derivatives)) {}

SmoothAmplitude SmoothAmplitude::from_polynomial(const Polynomial& p, int order) {
  std::vector<ComplexFn> d;
  for (int k = 0; k <= order; ++k) {
    d.emplace_back([q = p.derivative(k)](double t) { return q(t); });
  }
  return SmoothAmplitude(std::move(d));
}

cplx SmoothAmplitude::derivative(int k, double t) const {
  if (k < 0 || k > available_order())
    throw std::out_of_range("SmoothAmplitude: derivative of order " + std::to_string(k) + " not available");
  return derivs_[static_cast<std::size_t>(k)](t);
}

SmoothAmplitude SmoothAmplitude::times(const Polynomial& p) const {
  std::vector<ComplexFn> out;
  const int order = available_order();
  std::vector<Polynomial> pd;
  for (int k = 0; k <= order; ++k) pd.push_back(p.derivative(k));
  for (int k = 0; k <= order; ++k) {
    out.emplace_back([base = *this, pd, k](double t) {
      cplx sum = 0.0;
      double binom = 1.0;
      for (int i = 0; i <= k; ++i) {
        sum += binom * base.derivative(i, t) * pd[static_cast<std::size_t>(k - i)](t);
        binom = binom * (k - i) / (i + 1);
      }
      return sum;
    });
  }
  return SmoothAmplitude(std::move(out));
}

cplx sigma_n(const SmoothAmplitude& u, double t, double omega, int n) {
  if (omega == 0.0) throw std::domain_error("sigma_n: zero wavenumber");
  if (n < 1 || u.available_order() < n - 1)
    throw std::invalid_argument("sigma_n: amplitude lacks derivatives up to order n-1");
  const cplx inv = 1.0 / (kI * omega);
  cplx factor = inv, sum = 0.0;
  for (int j = 0; j < n; ++j) {
    sum += factor * u.derivative(j, t);
    factor *= -inv;
  }
  return sum;
}

Polynomial sigma_polynomial(const Polynomial& p, double omega) {
  if (omega == 0.0) throw std::domain_error("sigma_polynomial: zero wavenumber");
  const cplx inv = 1.0 / (kI * omega);
  cplx factor = inv;
  Polynomial r, d = p;
  while (!d.is_zero()) {
    r += d * factor;
    d = d.derivative();
    factor *= -inv;
  }
  return r;
}

cplx local_poly_exp_moment(const Polynomial& p, double lo, double hi, double omega) {
  if (p.is_zero() || lo == hi) return 0.0;
  if (!oscillatory_path(std::abs(omega * (hi - lo)), p.degree())) return gauss_poly_exp(p, lo, hi, omega);
  if (p.degree() <= kRecurrenceMaxDegree) return recurrence_poly_exp(p, lo, hi, omega);
  const Polynomial r = sigma_polynomial(p, omega);
  return std::exp(kI * (omega * hi)) * r(hi) - std::exp(kI * (omega * lo)) * r(lo);
}

cplx poly_exp_moment(const Polynomial& p, double a, double b, double omega) {
  if (a > b) throw std::invalid_argument("poly_exp_moment: a > b");
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  return std::exp(kI * (omega * mid)) * local_poly_exp_moment(p.shifted(mid), -half, half, omega);
}

cplx filon_asymptotic(const SmoothAmplitude& u, double a, double b, double omega, int n) {
  return std::exp(kI * (omega * b)) * sigma_n(u, b, omega, n) - std::exp(kI * (omega * a)) * sigma_n(u, a, omega, n);
}

cplx filon_integral(const SmoothAmplitude& u, double a, double b, double omega, int n) {
  if (std::abs(omega * (b - a)) < kSmallPhase)
    throw std::invalid_argument("filon_integral: phase |w (b - a)| below the oscillatory threshold");
  if (n < 1 || u.available_order() < n)
    throw std::invalid_argument("filon_integral: amplitude lacks derivative of order n");
  const cplx boundary = filon_asymptotic(u, a, b, omega, n);
  const cplx remainder = panelized_gauss(
      [&](double t) { return u.derivative(n, t) * std::exp(kI * (omega * t)); }, a, b, omega);
  const cplx scale = std::pow(-1.0 / (kI * omega), n);
  return boundary + scale * remainder;
}

cplx evaluate(const ExpPoly& f, double t) {
  cplx sum = 0.0;
  for (const auto& term : f) sum += term.amplitude(t) * std::exp(kI * (term.omega * t));
  return sum;
}

ExpPoly exp_antiderivative(const Polynomial& q, double omega, double lo, double hi) {
  if (q.is_zero()) return {};
  if (omega == 0.0) {
    const Polynomial a = q.antiderivative();
    return {{0.0, a - Polynomial::constant(a(lo))}};
  }
  if (oscillatory_path(std::abs(omega) * (hi - lo), q.degree())) {
    const Polynomial r = sigma_polynomial(q, omega);
    const cplx at_lo = std::exp(kI * (omega * lo)) * r(lo);
    return {{omega, r}, {0.0, Polynomial::constant(-at_lo)}};
  }
  // exp(i w u) = exp(i w c) * sum_k (i w (u - c))^k / k!.
  const double c = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
  const double x = std::abs(omega) * half;
  std::vector<cplx> series{1.0};
  cplx term = 1.0;
  double mag = 1.0;
  for (int k = 1; k < 80; ++k) {
    term *= kI * omega / static_cast<double>(k);
    mag *= x / k;
    series.push_back(term);
    if (mag < 1e-18) break;
  }
  const Polynomial local = (q.shifted(c) * Polynomial(std::move(series))).antiderivative();
  const Polynomial back = local.shifted(-c);
  const cplx phase = std::exp(kI * (omega * c));
  return {{0.0, phase * (back - Polynomial::constant(local(lo - c)))}};
}

}  // namespace oscfred
