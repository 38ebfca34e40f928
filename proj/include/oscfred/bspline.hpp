#pragma once

// Knot sequences and B-spline spaces on an interval, plus the piecewise-linear
// interpolation used by the oscillation-order experiment.

#include <cmath>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "oscfred/linalg.hpp"
#include "oscfred/polynomial.hpp"

namespace oscfred {

/// Breakpoints lo = x_0 < x_1 < ... < x_{N+1} = hi together with a spline
/// order m. The full knot sequence repeats each endpoint m times and every
/// interior breakpoint once (the smoothest space, dimension N + m).
class KnotVector {
 public:
  KnotVector(std::vector<double> interior, int order, double lo = -1.0, double hi = 1.0);

  int order() const { return order_; }
  int interior_count() const { return static_cast<int>(breaks_.size()) - 2; }
  int cell_count() const { return static_cast<int>(breaks_.size()) - 1; }
  double lo() const { return breaks_.front(); }
  double hi() const { return breaks_.back(); }

  /// x_0 ... x_{N+1}, endpoints included.
  std::span<const double> breakpoints() const { return breaks_; }
  /// Full knot sequence t_0 ... t_{d+m-1}.
  std::span<const double> knots() const { return knots_; }

  /// Largest gap between successive breakpoints.
  double mesh_width() const;

  double cell_lo(int k) const { return breaks_[static_cast<std::size_t>(k)]; }
  double cell_hi(int k) const { return breaks_[static_cast<std::size_t>(k) + 1]; }
  double cell_center(int k) const { return 0.5 * (cell_lo(k) + cell_hi(k)); }
  double cell_half_width(int k) const { return 0.5 * (cell_hi(k) - cell_lo(k)); }

  /// Cell k with x_k <= s < x_{k+1}; s == hi maps to the last cell.
  /// Throws std::out_of_range when s lies outside [lo, hi].
  int locate(double s) const;

 private:
  int order_;
  std::vector<double> breaks_;
  std::vector<double> knots_;
};

/// Uniform partition with N interior breakpoints, h = (hi - lo)/(N + 1).
KnotVector make_uniform_knots(int n_interior, int order, double lo = -1.0, double hi = 1.0);

/// Nonzero basis values at a point: values[i] belongs to B_{first + i}.
struct LocalBasis {
  int first = 0;
  std::vector<double> values;
};

/// B-spline basis {B_j : 0 <= j < d} of order m over a KnotVector.
class SplineSpace {
 public:
  explicit SplineSpace(KnotVector knots);

  const KnotVector& knots() const { return knots_; }
  int order() const { return knots_.order(); }
  int dimension() const { return knots_.interior_count() + knots_.order(); }

  /// B_j(s) by the Cox-de Boor recurrence; zero outside the support.
  /// Throws std::out_of_range for j outside [0, d).
  double eval_basis(int j, double s) const;

  /// The m basis functions that may be nonzero at s.
  LocalBasis eval_nonzero(double s) const;

  /// Cells [first, last] on which B_j is not identically zero.
  std::pair<int, int> support_cells(int j) const;

  /// Basis functions B_{k}, ..., B_{k+m-1} living on cell k.
  int first_on_cell(int k) const { return k; }

  /// B_{k+i} restricted to cell k as a polynomial in the local coordinate
  /// u = s - cell_center(k). Computed once at construction.
  const Polynomial& piece(int k, int i) const {
    return pieces_[static_cast<std::size_t>(k) * static_cast<std::size_t>(order()) + static_cast<std::size_t>(i)];
  }

 private:
  KnotVector knots_;
  std::vector<Polynomial> pieces_;
};

/// G_{lj} = int B_l B_j, per-cell Gauss-Legendre with m points.
RealMatrix gram_matrix(const SplineSpace& space);

/// Uniform closed grid of n points on [lo, hi].
std::vector<double> uniform_grid(int n, double lo = -1.0, double hi = 1.0);

/// Continuous piecewise-linear function through samples on a uniform grid.
template <class T>
class PiecewiseLinearInterpolant {
 public:
  PiecewiseLinearInterpolant(std::vector<T> values, double lo, double hi)
      : values_(std::move(values)), lo_(lo), hi_(hi) {
    if (values_.size() < 2) throw std::invalid_argument("interp_linear: need at least two samples");
    step_ = (hi_ - lo_) / static_cast<double>(values_.size() - 1);
  }

  T operator()(double s) const {
    const auto last = values_.size() - 2;
    const double x = (s - lo_) / step_;
    std::size_t k = x <= 0.0 ? 0 : static_cast<std::size_t>(x);
    if (k > last) k = last;
    const double w = x - static_cast<double>(k);
    return (1.0 - w) * values_[k] + w * values_[k + 1];
  }

  std::span<const T> values() const { return values_; }
  double lo() const { return lo_; }
  double hi() const { return hi_; }

 private:
  std::vector<T> values_;
  double lo_, hi_, step_ = 0.0;
};

template <class T>
PiecewiseLinearInterpolant<T> interp_linear(std::vector<T> values, double lo = -1.0, double hi = 1.0) {
  return PiecewiseLinearInterpolant<T>(std::move(values), lo, hi);
}

/// Samples f on the uniform n-point grid of [lo, hi] and interpolates.
template <class F>
auto interpolate_on_grid(F&& f, int n, double lo = -1.0, double hi = 1.0) {
  using T = std::decay_t<decltype(f(0.0))>;
  std::vector<T> v;
  for (double s : uniform_grid(n, lo, hi)) v.push_back(f(s));
  return interp_linear(std::move(v), lo, hi);
}

/// max_j |f(s_j) - approx(s_j)| over the uniform closed n-point grid.
template <class F, class G>
double max_error_on_grid(F&& f, G&& approx, int n, double lo = -1.0, double hi = 1.0) {
  double err = 0.0;
  for (double s : uniform_grid(n, lo, hi)) err = std::max(err, static_cast<double>(std::abs(f(s) - approx(s))));
  return err;
}

}  // namespace oscfred
