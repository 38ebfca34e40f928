#include "oscfred/bspline.hpp"

#include <algorithm>
#include <string>

#include "oscfred/oscquad.hpp"

namespace oscfred {

KnotVector::KnotVector(std::vector<double> interior, int order, double lo, double hi) : order_(order) {
  if (order < 1) throw std::invalid_argument("KnotVector: order must be >= 1");
  if (!(lo < hi)) throw std::invalid_argument("KnotVector: empty interval");
  breaks_.reserve(interior.size() + 2);
  breaks_.push_back(lo);
  for (double x : interior) {
    if (!(x > breaks_.back()) || !(x < hi))
      throw std::invalid_argument("KnotVector: interior breakpoints must be strictly increasing inside (lo, hi)");
    breaks_.push_back(x);
  }
  breaks_.push_back(hi);

  knots_.assign(static_cast<std::size_t>(order), lo);
  knots_.insert(knots_.end(), interior.begin(), interior.end());
  knots_.insert(knots_.end(), static_cast<std::size_t>(order), hi);
}

double KnotVector::mesh_width() const {
  double h = 0.0;
  for (std::size_t k = 1; k < breaks_.size(); ++k) h = std::max(h, breaks_[k] - breaks_[k - 1]);
  return h;
}

int KnotVector::locate(double s) const {
  if (!(s >= lo() && s <= hi())) throw std::out_of_range("KnotVector::locate: point outside the interval");
  const auto it = std::upper_bound(breaks_.begin(), breaks_.end(), s);
  const int k = static_cast<int>(it - breaks_.begin()) - 1;
  return std::min(k, cell_count() - 1);
}

KnotVector make_uniform_knots(int n_interior, int order, double lo, double hi) {
  if (n_interior < 0) throw std::invalid_argument("make_uniform_knots: negative breakpoint count");
  const double h = (hi - lo) / (n_interior + 1);
  std::vector<double> interior;
  interior.reserve(static_cast<std::size_t>(n_interior));
  for (int j = 1; j <= n_interior; ++j) interior.push_back(lo + j * h);
  return KnotVector(std::move(interior), order, lo, hi);
}

namespace {

// de Boor's triangular scheme on cell k, generic over the value type so the
// same recurrence produces point values and polynomial pieces.
template <class V, class Left, class Right>
std::vector<V> cox_de_boor(const KnotVector& kv, int k, Left&& left_of, Right&& right_of) {
  const int m = kv.order();
  const auto t = kv.knots();
  const int mu = m - 1 + k;
  std::vector<V> n(static_cast<std::size_t>(m));
  n[0] = V(1.0);
  std::vector<V> left(static_cast<std::size_t>(m)), right(static_cast<std::size_t>(m));
  for (int r = 1; r < m; ++r) {
    left[static_cast<std::size_t>(r)] = left_of(t[static_cast<std::size_t>(mu + 1 - r)]);
    right[static_cast<std::size_t>(r)] = right_of(t[static_cast<std::size_t>(mu + r)]);
    V saved = V(0.0);
    for (int i = 0; i < r; ++i) {
      const double denom = t[static_cast<std::size_t>(mu + i + 1)] - t[static_cast<std::size_t>(mu + 1 - r + i)];
      const V temp = n[static_cast<std::size_t>(i)] * (1.0 / denom);
      n[static_cast<std::size_t>(i)] = saved + right[static_cast<std::size_t>(i + 1)] * temp;
      saved = left[static_cast<std::size_t>(r - i)] * temp;
    }
    n[static_cast<std::size_t>(r)] = saved;
  }
  return n;
}

}  // namespace

SplineSpace::SplineSpace(KnotVector knots) : knots_(std::move(knots)) {
  const int m = order();
  pieces_.reserve(static_cast<std::size_t>(knots_.cell_count() * m));
  for (int k = 0; k < knots_.cell_count(); ++k) {
    const double c = knots_.cell_center(k);
    auto p = cox_de_boor<Polynomial>(
        knots_, k, [c](double tk) { return Polynomial::linear(c - tk, 1.0); },
        [c](double tk) { return Polynomial::linear(tk - c, -1.0); });
    for (auto& q : p) pieces_.push_back(std::move(q));
  }
}

LocalBasis SplineSpace::eval_nonzero(double s) const {
  const int k = knots_.locate(s);
  LocalBasis out;
  out.first = k;
  out.values = cox_de_boor<double>(
      knots_, k, [s](double tk) { return s - tk; }, [s](double tk) { return tk - s; });
  return out;
}

double SplineSpace::eval_basis(int j, double s) const {
  if (j < 0 || j >= dimension()) throw std::out_of_range("eval_basis: index " + std::to_string(j) + " out of range");
  if (s < knots_.lo() || s > knots_.hi()) return 0.0;
  const LocalBasis b = eval_nonzero(s);
  const int i = j - b.first;
  if (i < 0 || i >= order()) return 0.0;
  return b.values[static_cast<std::size_t>(i)];
}

std::pair<int, int> SplineSpace::support_cells(int j) const {
  if (j < 0 || j >= dimension()) throw std::out_of_range("support_cells: index out of range");
  return {std::max(0, j - order() + 1), std::min(j, knots_.cell_count() - 1)};
}

RealMatrix gram_matrix(const SplineSpace& space) {
  const int d = space.dimension(), m = space.order();
  const KnotVector& kv = space.knots();
  const GaussRule& rule = gauss_rule(m);
  RealMatrix g(static_cast<std::size_t>(d), static_cast<std::size_t>(d), 0.0);
  std::vector<double> vals(static_cast<std::size_t>(m));
  for (int k = 0; k < kv.cell_count(); ++k) {
    const double half = kv.cell_half_width(k);
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      const double u = half * rule.nodes[q];
      const double w = half * rule.weights[q];
      for (int i = 0; i < m; ++i) vals[static_cast<std::size_t>(i)] = space.piece(k, i)(u).real();
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
          g(static_cast<std::size_t>(k + a), static_cast<std::size_t>(k + b)) +=
              w * vals[static_cast<std::size_t>(a)] * vals[static_cast<std::size_t>(b)];
    }
  }
  return g;
}

std::vector<double> uniform_grid(int n, double lo, double hi) {
  if (n < 2) throw std::invalid_argument("uniform_grid: need at least two points");
  std::vector<double> g(static_cast<std::size_t>(n));
  const double step = (hi - lo) / (n - 1);
  for (int j = 0; j < n; ++j) g[static_cast<std::size_t>(j)] = lo + j * step;
  g.back() = hi;
  return g;
}

}  // namespace oscfred
