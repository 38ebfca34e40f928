#include "oscfred/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace oscfred {

ComplexMatrix to_complex(const RealMatrix& a) {
  ComplexMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
  return out;
}

bool all_finite(const ComplexMatrix& a) {
  return std::all_of(a.data().begin(), a.data().end(),
                     [](const cplx& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

LUFactorization lu_factor(ComplexMatrix a) {
  if (!a.square()) throw std::invalid_argument("lu_factor: matrix is not square");
  if (!all_finite(a)) throw std::invalid_argument("lu_factor: matrix has non-finite entries");
  const std::size_t n = a.rows();
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = std::abs(a(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      const double v = std::abs(a(i, k));
      if (v > best) best = v, piv = i;
    }
    if (best == 0.0) throw SingularMatrixError(k);
    if (piv != k) {
      std::swap_ranges(a.row(k).begin(), a.row(k).end(), a.row(piv).begin());
      std::swap(perm[k], perm[piv]);
    }
    const cplx inv_pivot = 1.0 / a(k, k);
    // Trailing update written on interleaved doubles so the compiler can
    // vectorize it; std::complex multiplication carries NaN-recovery branches.
    const double* pk = reinterpret_cast<const double*>(a.row(k).data());
    for (std::size_t i = k + 1; i < n; ++i) {
      cplx& lik = a(i, k);
      if (lik == cplx(0.0)) continue;
      lik *= inv_pivot;
      const double lr = lik.real(), li = lik.imag();
      double* pi = reinterpret_cast<double*>(a.row(i).data());
      for (std::size_t j = k + 1; j < n; ++j) {
        const double ur = pk[2 * j], ui = pk[2 * j + 1];
        pi[2 * j] -= lr * ur - li * ui;
        pi[2 * j + 1] -= lr * ui + li * ur;
      }
    }
  }
  return {std::move(a), std::move(perm)};
}

ComplexVector lu_solve(const LUFactorization& f, std::span<const cplx> b) {
  const std::size_t n = f.dim();
  if (b.size() != n) throw std::invalid_argument("lu_solve: dimension mismatch");
  ComplexVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[f.perm[i]];
  for (std::size_t i = 0; i < n; ++i) {
    cplx s = x[i];
    const auto r = f.lu.row(i);
    for (std::size_t j = 0; j < i; ++j) s -= r[j] * x[j];
    x[i] = s;
  }
  for (std::size_t i = n; i-- > 0;) {
    cplx s = x[i];
    const auto r = f.lu.row(i);
    for (std::size_t j = i + 1; j < n; ++j) s -= r[j] * x[j];
    x[i] = s / r[i];
  }
  return x;
}

ComplexVector lu_solve_adjoint(const LUFactorization& f, std::span<const cplx> b) {
  // A^H = U^H L^H P, so solve U^H z = b, L^H w = z, x = P^T w.
  const std::size_t n = f.dim();
  if (b.size() != n) throw std::invalid_argument("lu_solve_adjoint: dimension mismatch");
  ComplexVector z(b.begin(), b.end());
  for (std::size_t i = 0; i < n; ++i) {
    z[i] /= std::conj(f.lu(i, i));
    const cplx zi = z[i];
    const auto r = f.lu.row(i);
    for (std::size_t j = i + 1; j < n; ++j) z[j] -= std::conj(r[j]) * zi;
  }
  for (std::size_t i = n; i-- > 0;) {
    const cplx zi = z[i];
    const auto r = f.lu.row(i);
    for (std::size_t j = 0; j < i; ++j) z[j] -= std::conj(r[j]) * zi;
  }
  ComplexVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[f.perm[i]] = z[i];
  return x;
}

ComplexVector multiply(const ComplexMatrix& a, std::span<const cplx> x) {
  if (x.size() != a.cols()) throw std::invalid_argument("multiply: dimension mismatch");
  ComplexVector y(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    cplx s = 0.0;
    const auto r = a.row(i);
    for (std::size_t j = 0; j < a.cols(); ++j) s += r[j] * x[j];
    y[i] = s;
  }
  return y;
}

ComplexVector adjoint_multiply(const ComplexMatrix& a, std::span<const cplx> x) {
  if (x.size() != a.rows()) throw std::invalid_argument("adjoint_multiply: dimension mismatch");
  ComplexVector y(a.cols(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const auto r = a.row(i);
    for (std::size_t j = 0; j < a.cols(); ++j) y[j] += std::conj(r[j]) * x[i];
  }
  return y;
}

double norm2(std::span<const cplx> x) {
  double s = 0.0;
  for (const auto& z : x) s += std::norm(z);
  return std::sqrt(s);
}

MatrixNorms matrix_norms(const ComplexMatrix& a) {
  MatrixNorms n;
  std::vector<double> col(a.cols(), 0.0);
  double fro = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double rs = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const double v = std::abs(a(i, j));
      rs += v;
      col[j] += v;
      fro += v * v;
    }
    n.inf = std::max(n.inf, rs);
  }
  n.one = *std::max_element(col.begin(), col.end());
  n.frobenius = std::sqrt(fro);
  return n;
}

namespace {

// Largest eigenvalue of a Hermitian positive semi-definite operator x -> op(x),
// where op also reports the Rayleigh quotient x^H op x for unit x.
template <class Op>
double power_iteration(std::size_t n, Op&& op, const Cond2Options& opts) {
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  ComplexVector x(n);
  for (auto& v : x) v = {dist(rng), dist(rng)};
  double nx = norm2(x);
  for (auto& v : x) v /= nx;

  double lambda = 0.0;
  // Slow progress means a cluster at the top of the spectrum, and the Rayleigh
  // quotient already lies inside that cluster.
  const double stop = opts.rel_tol;
  for (int it = 0; it < opts.max_iterations; ++it) {
    auto [next, rayleigh] = op(x);
    const double prev = lambda;
    lambda = rayleigh;
    nx = norm2(next);
    if (nx == 0.0) return 0.0;
    for (std::size_t i = 0; i < n; ++i) x[i] = next[i] / nx;
    if (it > 2 && std::abs(lambda - prev) <= stop * lambda) break;
  }
  return lambda;
}

}  // namespace

double cond2(const ComplexMatrix& a, const LUFactorization& f, const Cond2Options& opts) {
  const std::size_t n = a.rows();
  const double big = power_iteration(
      n,
      [&](const ComplexVector& x) {
        ComplexVector ax = multiply(a, x);
        const double r = std::pow(norm2(ax), 2);
        return std::pair{adjoint_multiply(a, ax), r};
      },
      opts);
  const double inv_small = power_iteration(
      n,
      [&](const ComplexVector& x) {
        ComplexVector y = lu_solve_adjoint(f, x);
        const double r = std::pow(norm2(y), 2);
        return std::pair{lu_solve(f, y), r};
      },
      opts);
  return std::sqrt(big * inv_small);
}

double cond2(const ComplexMatrix& a, const Cond2Options& opts) {
  if (!a.square()) throw std::invalid_argument("cond2: matrix is not square");
  try {
    const LUFactorization f = lu_factor(a);
    return cond2(a, f, opts);
  } catch (const SingularMatrixError&) {
    return std::numeric_limits<double>::infinity();
  }
}

}  // namespace oscfred
