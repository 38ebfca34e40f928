#include "oscfred/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "oscfred/oscquad.hpp"

namespace oscfred::oracle {

namespace {

constexpr int kNodesPerPanel = 20;

struct Node {
  double x, w;
};

// Composite rule over consecutive intervals of `breaks`, panels at most half
// a wavelength of omega (and 1/4) long, divided further by `refine`.
std::vector<Node> composite(std::span<const double> breaks, double omega, int refine) {
  const double half_wave = std::numbers::pi / std::max(std::abs(omega), 1.0);
  const double max_len = std::min(half_wave, 0.25) / refine;
  const GaussRule& rule = gauss_rule(kNodesPerPanel);
  std::vector<Node> nodes;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double a = breaks[i], b = breaks[i + 1];
    if (!(b > a)) continue;
    const auto panels = static_cast<int>(std::ceil((b - a) / max_len));
    const double width = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
      const double mid = a + (p + 0.5) * width;
      for (std::size_t k = 0; k < rule.nodes.size(); ++k)
        nodes.push_back({mid + 0.5 * width * rule.nodes[k], 0.5 * width * rule.weights[k]});
    }
  }
  return nodes;
}

std::vector<double> breaks_of(const TrialSpace& space) {
  const auto b = space.spline().knots().breakpoints();
  return {b.begin(), b.end()};
}

std::vector<double> with_point(std::vector<double> breaks, double s) {
  breaks.push_back(s);
  std::sort(breaks.begin(), breaks.end());
  return breaks;
}

int max_multiplier(const TrialSpace& space) {
  int e = 0;
  for (int v : space.multipliers()) e = std::max(e, std::abs(v));
  return e;
}

double max_abs_diff(std::span<const cplx> a, std::span<const cplx> b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

ComplexMatrix mass_at(const TrialSpace& space, int refine) {
  const auto n = static_cast<std::size_t>(space.dimension());
  ComplexMatrix out(n, n, 0.0);
  const double omega = 2.0 * max_multiplier(space) * space.kappa();
  std::vector<cplx> phi(n);
  for (const Node& nd : composite(breaks_of(space), omega, refine)) {
    for (std::size_t i = 0; i < n; ++i) phi[i] = space.eval_basis(static_cast<int>(i), nd.x);
    for (std::size_t r = 0; r < n; ++r) {
      if (phi[r] == cplx(0.0)) continue;
      for (std::size_t c = 0; c < n; ++c) out(r, c) += nd.w * phi[c] * std::conj(phi[r]);
    }
  }
  return out;
}

ComplexMatrix operator_at(const TrialSpace& space, const OscKernel& kernel, int refine) {
  const auto n = static_cast<std::size_t>(space.dimension());
  ComplexMatrix out(n, n, 0.0);
  const double kappa = space.kappa();
  const double omega = (1.0 + max_multiplier(space)) * kappa;
  const std::vector<double> breaks = breaks_of(space);
  std::vector<cplx> inner(n), phi_s(n);
  for (const Node& outer : composite(breaks, omega, refine)) {
    const double s = outer.x;
    std::fill(inner.begin(), inner.end(), cplx(0.0));
    for (const Node& nd : composite(with_point(breaks, s), omega, refine)) {
      const cplx weight = nd.w * kernel(s, nd.x) * std::exp(kI * (kappa * std::abs(s - nd.x)));
      for (std::size_t c = 0; c < n; ++c) inner[c] += weight * space.eval_basis(static_cast<int>(c), nd.x);
    }
    for (std::size_t r = 0; r < n; ++r) phi_s[r] = space.eval_basis(static_cast<int>(r), s);
    for (std::size_t r = 0; r < n; ++r) {
      if (phi_s[r] == cplx(0.0)) continue;
      const cplx ws = outer.w * std::conj(phi_s[r]);
      for (std::size_t c = 0; c < n; ++c) out(r, c) += ws * inner[c];
    }
  }
  return out;
}

ComplexVector load_at(const TrialSpace& space, const std::function<cplx(double)>& f, double omega, int refine) {
  const auto n = static_cast<std::size_t>(space.dimension());
  ComplexVector out(n, 0.0);
  for (const Node& nd : composite(breaks_of(space), omega, refine)) {
    const cplx fv = nd.w * f(nd.x);
    for (std::size_t r = 0; r < n; ++r) out[r] += fv * std::conj(space.eval_basis(static_cast<int>(r), nd.x));
  }
  return out;
}

}  // namespace

Checked<cplx> integrate(const std::function<cplx(double)>& f, double a, double b, double omega_max, double tol) {
  const std::vector<double> ends{a, b};
  auto at = [&](int refine) {
    cplx sum = 0.0;
    for (const Node& nd : composite(ends, omega_max, refine)) sum += nd.w * f(nd.x);
    return sum;
  };
  cplx prev = at(1);
  double diff = 0.0;
  for (int refine = 2; refine <= 256; refine *= 2) {
    const cplx next = at(refine);
    diff = std::abs(next - prev);
    prev = next;
    if (diff <= tol * std::max(1.0, std::abs(next))) break;
  }
  return {prev, diff};
}

Checked<ComplexMatrix> mass_matrix(const TrialSpace& space) {
  ComplexMatrix coarse = mass_at(space, 1);
  ComplexMatrix fine = mass_at(space, 2);
  const double d = max_abs_diff(coarse.data(), fine.data());
  return {std::move(fine), d};
}

Checked<ComplexMatrix> operator_matrix(const TrialSpace& space, const OscKernel& kernel) {
  ComplexMatrix coarse = operator_at(space, kernel, 1);
  ComplexMatrix fine = operator_at(space, kernel, 2);
  const double d = max_abs_diff(coarse.data(), fine.data());
  return {std::move(fine), d};
}

Checked<ComplexVector> load_vector(const TrialSpace& space, const std::function<cplx(double)>& f,
                                   double omega_max) {
  const double omega = omega_max + max_multiplier(space) * space.kappa();
  ComplexVector coarse = load_at(space, f, omega, 1);
  ComplexVector fine = load_at(space, f, omega, 2);
  const double d = max_abs_diff(coarse, fine);
  return {std::move(fine), d};
}

Checked<cplx> apply_operator_at(const OscKernel& kernel, const std::function<cplx(double)>& y, double s,
                                double omega_max) {
  const double kappa = kernel.kappa();
  auto integrand = [&](double t) { return kernel(s, t) * std::exp(kI * (kappa * std::abs(s - t))) * y(t); };
  const double omega = omega_max + kappa;
  const Checked<cplx> left = integrate(integrand, -1.0, s, omega);
  const Checked<cplx> right = integrate(integrand, s, 1.0, omega);
  return {left.value + right.value, left.discrepancy + right.discrepancy};
}

}  // namespace oscfred::oracle
