#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace fpedss {

using Complex = std::complex<double>;

/// Dense row-major matrix. Small sizes only (≤ a few hundred rows).
template <class T> class DenseMatrix {
public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  DenseMatrix(std::initializer_list<std::initializer_list<T>> init);

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      m(i, i) = T{1};
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  T &operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T &operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<T> data() noexcept { return data_; }
  std::span<const T> data() const noexcept { return data_; }

  DenseMatrix transpose() const;
  DenseMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;

  DenseMatrix &operator+=(const DenseMatrix &rhs);
  DenseMatrix &operator-=(const DenseMatrix &rhs);
  DenseMatrix &operator*=(T s);

  friend bool operator==(const DenseMatrix &, const DenseMatrix &) = default;

private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

using RealMatrix = DenseMatrix<double>;
using ComplexMatrix = DenseMatrix<Complex>;

template <class T> DenseMatrix<T> operator*(const DenseMatrix<T> &a, const DenseMatrix<T> &b);
template <class T> DenseMatrix<T> operator+(DenseMatrix<T> a, const DenseMatrix<T> &b) { return a += b; }
template <class T> DenseMatrix<T> operator-(DenseMatrix<T> a, const DenseMatrix<T> &b) { return a -= b; }
template <class T> DenseMatrix<T> operator*(T s, DenseMatrix<T> a) { return a *= s; }

std::vector<double> multiply(const RealMatrix &m, std::span<const double> v);
ComplexMatrix to_complex(const RealMatrix &m);
ComplexMatrix adjoint(const ComplexMatrix &m);

double max_abs(const RealMatrix &m);
double max_abs(const ComplexMatrix &m);
double max_abs_difference(const RealMatrix &a, const RealMatrix &b);
double max_abs_difference(const ComplexMatrix &a, const ComplexMatrix &b);
/// Frobenius norm.
double frobenius_norm(const RealMatrix &m);
double symmetry_defect(const RealMatrix &m);

/// Eigenpairs of a real symmetric matrix, values ascending, eigenvectors
/// stored as the columns of `vectors`.
struct EigenDecomposition {
  std::vector<double> values;
  RealMatrix vectors;

  std::vector<double> vector(std::size_t i) const;
};

/// Cyclic Jacobi rotations on a private copy of `m`. Throws
/// std::invalid_argument when `m` is not square or not symmetric to
/// 1e-12 relative.
EigenDecomposition symmetric_eigen(const RealMatrix &m);

} // namespace fpedss
