#include "oscfred/galerkin.hpp"

#include <cmath>
#include <string>

#include "oscfred/oscquad.hpp"
#include "oscfred/parallel.hpp"

namespace oscfred {

std::string_view to_string(Method m) { return m == Method::cgm ? "cgm" : "opgm"; }

Method parse_method(std::string_view s) {
  if (s == "cgm") return Method::cgm;
  if (s == "opgm") return Method::opgm;
  throw std::invalid_argument("unknown method '" + std::string(s) + "'");
}

TrialSpace::TrialSpace(SplineSpace spline, Method method, double kappa)
    : spline_(std::move(spline)), method_(method), kappa_(kappa) {
  if (!(kappa > 0.0)) throw std::invalid_argument("TrialSpace: wavenumber must be positive");
  if (method == Method::cgm) {
    eps_ = {0};
  } else {
    eps_ = {-1, 0, 1};
  }
}

cplx TrialSpace::eval_basis(int index, double s) const {
  if (index < 0 || index >= dimension()) throw std::out_of_range("TrialSpace::eval_basis: index out of range");
  const int blk = index / block_size();
  const int j = index % block_size();
  return spline_.eval_basis(j, s) * std::exp(kI * (multiplier(blk) * kappa_ * s));
}

TrialSpace make_trial_space(Method method, int n_interior, int order, double kappa) {
  return TrialSpace(SplineSpace(make_uniform_knots(n_interior, order)), method, kappa);
}

ComplexMatrix DiscreteSystem::matrix() const {
  ComplexMatrix a = mass;
  auto out = a.data();
  const auto k = op.data();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= k[i];
  return a;
}

namespace {

// table(k, blk, i, a) = int_{cell k} u^a B_{k+i}(c_k + u) exp(i w_blk (c_k + u)) du
class MomentTable {
 public:
  MomentTable(const SplineSpace& sp, std::span<const double> omegas, int max_power)
      : blocks_(static_cast<int>(omegas.size())), m_(sp.order()), powers_(max_power + 1) {
    const KnotVector& kv = sp.knots();
    const int cells = kv.cell_count();
    data_.resize(static_cast<std::size_t>(cells * blocks_ * m_ * powers_));
    for (int k = 0; k < cells; ++k) {
      const double c = kv.cell_center(k), r = kv.cell_half_width(k);
      for (int blk = 0; blk < blocks_; ++blk) {
        const double w = omegas[static_cast<std::size_t>(blk)];
        const cplx phase = std::exp(kI * (w * c));
        for (int i = 0; i < m_; ++i) {
          Polynomial p = sp.piece(k, i);
          for (int a = 0; a < powers_; ++a) {
            data_[index(k, blk, i, a)] = phase * local_poly_exp_moment(p, -r, r, w);
            p = p * Polynomial::monomial(1);
          }
        }
      }
    }
  }

  cplx operator()(int k, int blk, int i, int a) const { return data_[index(k, blk, i, a)]; }

 private:
  std::size_t index(int k, int blk, int i, int a) const {
    return static_cast<std::size_t>(((k * blocks_ + blk) * m_ + i) * powers_ + a);
  }
  int blocks_, m_, powers_;
  std::vector<cplx> data_;
};

struct Frequencies {
  // Inner (t) and outer (s) frequencies on the two sides of the kink s = t.
  std::vector<double> t_below, t_above, s_below, s_above;
};

Frequencies kernel_frequencies(const TrialSpace& space) {
  Frequencies f;
  const double kappa = space.kappa();
  for (int e : space.multipliers()) {
    f.t_below.push_back(kappa * (e - 1));  // t < s: exp(i kappa (s - t)) exp(i e kappa t)
    f.t_above.push_back(kappa * (e + 1));  // t > s
    f.s_below.push_back(kappa * (1 - e));  // t < s, with conj(exp(i e kappa s))
    f.s_above.push_back(-kappa * (1 + e));
  }
  return f;
}

// Integral of K B_{k+is}(s) B_{k+it}(t) exp(i kappa |s-t|) exp(i (eps_p t - eps_q s) kappa)
// over cell k x cell k, for every (q, p, is, it).
std::vector<cplx> diagonal_cell_blocks(const TrialSpace& space, const OscKernel& kernel, const Frequencies& fr,
                                       int k) {
  const SplineSpace& sp = space.spline();
  const int m = sp.order(), nb = space.block_count();
  const double c = sp.knots().cell_center(k), r = sp.knots().cell_half_width(k);
  const BivariatePolynomial kl = kernel.local(c, r, c, r);
  const int ds = kl.degree_s(), dt = kl.degree_t();
  std::vector<cplx> out(static_cast<std::size_t>(nb * nb * m * m), 0.0);

  std::vector<Polynomial> base(static_cast<std::size_t>((ds + 1) * m));  // v^a B_is(v)
  for (int is = 0; is < m; ++is) {
    Polynomial p = sp.piece(k, is);
    for (int a = 0; a <= ds; ++a) {
      base[static_cast<std::size_t>(is * (ds + 1) + a)] = p;
      p = p * Polynomial::monomial(1);
    }
  }

  for (int p = 0; p < nb; ++p) {
    for (int it = 0; it < m; ++it) {
      // Inner amplitudes q_a(u) = sum_b k_ab u^b B_it(u) and their running
      // integrals from the left edge of the cell.
      std::vector<ExpPoly> below(static_cast<std::size_t>(ds + 1)), above(static_cast<std::size_t>(ds + 1));
      std::vector<cplx> above_total(static_cast<std::size_t>(ds + 1));
      for (int a = 0; a <= ds; ++a) {
        std::vector<cplx> coeffs(static_cast<std::size_t>(dt + 1));
        for (int b = 0; b <= dt; ++b) coeffs[static_cast<std::size_t>(b)] = kl.coeff(a, b);
        const Polynomial qa = Polynomial(std::move(coeffs)) * sp.piece(k, it);
        below[static_cast<std::size_t>(a)] = exp_antiderivative(qa, fr.t_below[static_cast<std::size_t>(p)], -r, r);
        above[static_cast<std::size_t>(a)] = exp_antiderivative(qa, fr.t_above[static_cast<std::size_t>(p)], -r, r);
        above_total[static_cast<std::size_t>(a)] = evaluate(above[static_cast<std::size_t>(a)], r);
      }
      for (int q = 0; q < nb; ++q) {
        const double wb = fr.s_below[static_cast<std::size_t>(q)];
        const double wa = fr.s_above[static_cast<std::size_t>(q)];
        const cplx phase =
            std::exp(kI * (space.kappa() * (space.multiplier(p) - space.multiplier(q)) * c));
        for (int is = 0; is < m; ++is) {
          cplx sum = 0.0;
          for (int a = 0; a <= ds; ++a) {
            const Polynomial& bv = base[static_cast<std::size_t>(is * (ds + 1) + a)];
            // t < s: int_{-r}^{v} ...
            for (const auto& term : below[static_cast<std::size_t>(a)])
              sum += local_poly_exp_moment(bv * term.amplitude, -r, r, wb + term.omega);
            // t > s: int_{v}^{r} ... = total - int_{-r}^{v} ...
            sum += above_total[static_cast<std::size_t>(a)] * local_poly_exp_moment(bv, -r, r, wa);
            for (const auto& term : above[static_cast<std::size_t>(a)])
              sum -= local_poly_exp_moment(bv * term.amplitude, -r, r, wa + term.omega);
          }
          out[static_cast<std::size_t>(((q * nb + p) * m + is) * m + it)] = phase * sum;
        }
      }
    }
  }
  return out;
}

void check_same_kappa(const TrialSpace& space, double kappa) {
  if (std::abs(space.kappa() - kappa) > 1e-12 * std::abs(kappa))
    throw std::invalid_argument("wavenumber of the data differs from the trial space");
}

}  // namespace

ComplexMatrix assemble_mass(const TrialSpace& space) {
  const SplineSpace& sp = space.spline();
  const KnotVector& kv = sp.knots();
  const int m = sp.order(), d = sp.dimension(), nb = space.block_count();
  const auto n = static_cast<std::size_t>(space.dimension());
  ComplexMatrix out(n, n, 0.0);
  for (int k = 0; k < kv.cell_count(); ++k) {
    const double c = kv.cell_center(k), r = kv.cell_half_width(k);
    for (int q = 0; q < nb; ++q) {
      for (int p = 0; p < nb; ++p) {
        const double w = space.kappa() * (space.multiplier(p) - space.multiplier(q));
        const cplx phase = std::exp(kI * (w * c));
        for (int is = 0; is < m; ++is) {
          for (int it = 0; it < m; ++it) {
            const cplx v = phase * local_poly_exp_moment(sp.piece(k, it) * sp.piece(k, is), -r, r, w);
            out(static_cast<std::size_t>(q * d + k + is), static_cast<std::size_t>(p * d + k + it)) += v;
          }
        }
      }
    }
  }
  return out;
}

ComplexMatrix assemble_operator(const TrialSpace& space, const OscKernel& kernel, int threads) {
  check_same_kappa(space, kernel.kappa());
  const SplineSpace& sp = space.spline();
  const KnotVector& kv = sp.knots();
  const int cells = kv.cell_count(), m = sp.order(), d = sp.dimension(), nb = space.block_count();
  const auto n = static_cast<std::size_t>(space.dimension());
  ComplexMatrix out(n, n, 0.0);
  if (kernel.is_polynomial() && kernel.poly().is_zero()) return out;

  const int ds = kernel.local_degree_s(), dt = kernel.local_degree_t();
  const Frequencies fr = kernel_frequencies(space);
  const MomentTable t_below(sp, fr.t_below, dt), t_above(sp, fr.t_above, dt);
  const MomentTable s_below(sp, fr.s_below, ds), s_above(sp, fr.s_above, ds);

  std::vector<std::vector<cplx>> diag(static_cast<std::size_t>(cells));
  parallel_for(cells, threads,
               [&](int k) { diag[static_cast<std::size_t>(k)] = diagonal_cell_blocks(space, kernel, fr, k); });

  const bool constant_kernel = kernel.is_polynomial() && ds == 0 && dt == 0;
  const cplx constant_value = constant_kernel ? kernel.poly().coeff(0, 0) : cplx(0.0);

  parallel_for(d, threads, [&](int j) {
    const auto [k0, k1] = sp.support_cells(j);
    std::vector<cplx> w(static_cast<std::size_t>(nb * (dt + 1)));
    for (int ks = k0; ks <= k1; ++ks) {
      const int is = j - ks;
      const double cs = kv.cell_center(ks), rs = kv.cell_half_width(ks);
      for (int kt = 0; kt < cells; ++kt) {
        if (kt == ks) {
          const auto& blk = diag[static_cast<std::size_t>(ks)];
          for (int q = 0; q < nb; ++q)
            for (int p = 0; p < nb; ++p)
              for (int it = 0; it < m; ++it)
                out(static_cast<std::size_t>(q * d + j), static_cast<std::size_t>(p * d + kt + it)) +=
                    blk[static_cast<std::size_t>(((q * nb + p) * m + is) * m + it)];
          continue;
        }
        const bool t_lower = kt < ks;
        const MomentTable& st = t_lower ? s_below : s_above;
        const MomentTable& tt = t_lower ? t_below : t_above;
        // w[q][b] = sum_a K_ab S(q, a)
        if (constant_kernel) {
          for (int q = 0; q < nb; ++q) w[static_cast<std::size_t>(q)] = constant_value * st(ks, q, is, 0);
        } else {
          const BivariatePolynomial kl =
              kernel.local(cs, rs, kv.cell_center(kt), kv.cell_half_width(kt));
          for (int q = 0; q < nb; ++q)
            for (int b = 0; b <= dt; ++b) {
              cplx acc = 0.0;
              for (int a = 0; a <= ds; ++a) acc += kl.coeff(a, b) * st(ks, q, is, a);
              w[static_cast<std::size_t>(q * (dt + 1) + b)] = acc;
            }
        }
        for (int it = 0; it < m; ++it) {
          const auto col = static_cast<std::size_t>(kt + it);
          for (int p = 0; p < nb; ++p) {
            for (int q = 0; q < nb; ++q) {
              cplx acc = 0.0;
              for (int b = 0; b <= dt; ++b) acc += w[static_cast<std::size_t>(q * (dt + 1) + b)] * tt(kt, p, it, b);
              out(static_cast<std::size_t>(q * d + j), static_cast<std::size_t>(p * d) + col) += acc;
            }
          }
        }
      }
    }
  });
  return out;
}

ComplexVector assemble_rhs(const TrialSpace& space, const StructuredFunction& f) {
  check_same_kappa(space, f.kappa());
  const SplineSpace& sp = space.spline();
  const KnotVector& kv = sp.knots();
  const int m = sp.order(), d = sp.dimension(), nb = space.block_count();
  ComplexVector out(static_cast<std::size_t>(space.dimension()), 0.0);
  for (const auto& term : f.terms()) {
    for (int k = 0; k < kv.cell_count(); ++k) {
      const double c = kv.cell_center(k), r = kv.cell_half_width(k);
      const Polynomial local = term.amplitude.shifted(c);
      for (int q = 0; q < nb; ++q) {
        const double w = space.kappa() * (term.tau - space.multiplier(q));
        const cplx phase = std::exp(kI * (w * c));
        for (int i = 0; i < m; ++i)
          out[static_cast<std::size_t>(q * d + k + i)] +=
              phase * local_poly_exp_moment(local * sp.piece(k, i), -r, r, w);
      }
    }
  }
  return out;
}

ComplexVector assemble_rhs(const TrialSpace& space, const SmoothStructuredFunction& f) {
  check_same_kappa(space, f.kappa());
  const SplineSpace& sp = space.spline();
  const KnotVector& kv = sp.knots();
  const int m = sp.order(), d = sp.dimension(), nb = space.block_count();
  ComplexVector out(static_cast<std::size_t>(space.dimension()), 0.0);
  for (const auto& term : f.terms()) {
    const int order = term.amplitude.available_order();
    if (order < 1) throw std::invalid_argument("assemble_rhs: smooth amplitudes need at least one derivative");
    const int n = std::min(m + 1, order);
    for (int k = 0; k < kv.cell_count(); ++k) {
      const double lo = kv.cell_lo(k), hi = kv.cell_hi(k), c = kv.cell_center(k);
      for (int i = 0; i < m; ++i) {
        const SmoothAmplitude amp = term.amplitude.times(sp.piece(k, i).shifted(-c));
        for (int q = 0; q < nb; ++q) {
          const double w = space.kappa() * (term.tau - space.multiplier(q));
          cplx v;
          if (std::abs(w * (hi - lo)) >= kSmallPhase) {
            v = filon_integral(amp, lo, hi, w, n);
          } else {
            v = gauss_legendre([&](double t) { return amp(t) * std::exp(kI * (w * t)); }, lo, hi, 20);
          }
          out[static_cast<std::size_t>(q * d + k + i)] += v;
        }
      }
    }
  }
  return out;
}

DiscreteSystem assemble(const TrialSpace& space, const OscKernel& kernel, const StructuredFunction& f,
                        int threads) {
  DiscreteSystem sys;
  sys.mass = assemble_mass(space);
  sys.op = assemble_operator(space, kernel, threads);
  sys.load = assemble_rhs(space, f);
  sys.block_size = space.block_size();
  sys.block_count = space.block_count();
  return sys;
}

ComplexVector solve(const DiscreteSystem& system) {
  try {
    const LUFactorization f = lu_factor(system.matrix());
    return lu_solve(f, system.load);
  } catch (const SingularMatrixError& e) {
    throw SingularSystemError(std::string("Galerkin system is singular: ") + e.what());
  }
}

cplx eval_solution(const TrialSpace& space, std::span<const cplx> a, double s) {
  if (a.size() != static_cast<std::size_t>(space.dimension()))
    throw std::invalid_argument("eval_solution: coefficient count does not match the trial space");
  const LocalBasis b = space.spline().eval_nonzero(s);
  const int d = space.block_size();
  cplx sum = 0.0;
  for (int p = 0; p < space.block_count(); ++p) {
    cplx blk = 0.0;
    for (std::size_t i = 0; i < b.values.size(); ++i)
      blk += a[static_cast<std::size_t>(p * d + b.first) + i] * b.values[i];
    sum += blk * std::exp(kI * (space.multiplier(p) * space.kappa() * s));
  }
  return sum;
}

double relative_error_eN(const ComplexFn1& y_h, const ComplexFn1& y, double norm_y) {
  if (!(norm_y > 0.0)) throw std::invalid_argument("relative_error_eN: norm must be positive");
  double acc = 0.0;
  for (int j = 1; j <= kErrorSamples; ++j) {
    const double s = -1.0 + j / 1024.0;
    acc += std::norm(y(s) - y_h(s));
  }
  return std::sqrt(acc / kErrorSamples) / norm_y;
}

double sampled_norm(const ComplexFn1& y) {
  double acc = 0.0;
  for (int j = 1; j <= kErrorSamples; ++j) acc += std::norm(y(-1.0 + j / 1024.0));
  return std::sqrt(acc / 1024.0);
}

double convergence_order(double e_n, double e_2n) {
  if (!(e_n > 0.0) || !(e_2n > 0.0)) throw std::invalid_argument("convergence_order: errors must be positive");
  return std::log(e_n / e_2n) / std::log(2.0);
}

}  // namespace oscfred
