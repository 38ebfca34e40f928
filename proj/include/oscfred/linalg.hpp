#pragma once

// Dense complex linear algebra for the discrete Galerkin systems.

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <stdexcept>
#include <vector>

namespace oscfred {

using cplx = std::complex<double>;

/// Row-major dense matrix.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, T fill = T{}) : rows_(rows), cols_(cols), data_(rows * cols, fill) {
    if (rows == 0 || cols == 0) throw std::invalid_argument("Matrix: dimensions must be positive");
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  std::span<T> data() { return data_; }
  std::span<const T> data() const { return data_; }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

using ComplexMatrix = Matrix<cplx>;
using RealMatrix = Matrix<double>;
using ComplexVector = std::vector<cplx>;

ComplexMatrix to_complex(const RealMatrix& a);

/// True when every entry is finite.
bool all_finite(const ComplexMatrix& a);

/// Raised when a factorization meets an exactly zero pivot.
class SingularMatrixError : public std::runtime_error {
 public:
  explicit SingularMatrixError(std::size_t column)
      : std::runtime_error("matrix is singular (zero pivot in column " + std::to_string(column) + ")"),
        column_(column) {}
  std::size_t column() const { return column_; }

 private:
  std::size_t column_;
};

/// P A = L U with unit lower L. Row i of P A is row perm[i] of A.
struct LUFactorization {
  ComplexMatrix lu;
  std::vector<std::size_t> perm;
  std::size_t dim() const { return lu.rows(); }
};

/// Partial-pivoted factorization. Throws std::invalid_argument for non-square
/// or non-finite input and SingularMatrixError on a zero pivot.
LUFactorization lu_factor(ComplexMatrix a);

/// Solves A x = b. Throws std::invalid_argument on dimension mismatch.
ComplexVector lu_solve(const LUFactorization& f, std::span<const cplx> b);

/// Solves A^H x = b.
ComplexVector lu_solve_adjoint(const LUFactorization& f, std::span<const cplx> b);

ComplexVector multiply(const ComplexMatrix& a, std::span<const cplx> x);
ComplexVector adjoint_multiply(const ComplexMatrix& a, std::span<const cplx> x);

double norm2(std::span<const cplx> x);

struct MatrixNorms {
  double one = 0.0;
  double inf = 0.0;
  double frobenius = 0.0;
};

MatrixNorms matrix_norms(const ComplexMatrix& a);

struct Cond2Options {
  double rel_tol = 1e-6;
  int max_iterations = 10000;
  unsigned long long seed = 0x5eed0fca11ULL;
};

/// 2-norm condition number sigma_max / sigma_min. Both extreme singular values
/// come from power iteration, the smallest through LU solves with A and A^H.
/// Returns +infinity when A is singular.
double cond2(const ComplexMatrix& a, const Cond2Options& opts = {});

/// Same, reusing an existing factorization of a.
double cond2(const ComplexMatrix& a, const LUFactorization& f, const Cond2Options& opts = {});

}  // namespace oscfred
