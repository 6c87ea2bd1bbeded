#include "linalg.hpp"

#include "errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace fpedss {

template <class T>
DenseMatrix<T>::DenseMatrix(std::initializer_list<std::initializer_list<T>> init)
    : rows_(init.size()), cols_(init.size() ? init.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto &row : init) {
    if (row.size() != cols_)
      throw std::invalid_argument("DenseMatrix: ragged initializer");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

template <class T> DenseMatrix<T> DenseMatrix<T>::transpose() const {
  DenseMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      t(j, i) = (*this)(i, j);
  return t;
}

template <class T>
DenseMatrix<T> DenseMatrix<T>::block(std::size_t r0, std::size_t c0, std::size_t nr,
                                     std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_)
    throw std::out_of_range("DenseMatrix::block out of range");
  DenseMatrix b(nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j)
      b(i, j) = (*this)(r0 + i, c0 + j);
  return b;
}

template <class T> DenseMatrix<T> &DenseMatrix<T>::operator+=(const DenseMatrix &rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
    throw std::invalid_argument("DenseMatrix: shape mismatch in +=");
  for (std::size_t k = 0; k < data_.size(); ++k)
    data_[k] += rhs.data_[k];
  return *this;
}

template <class T> DenseMatrix<T> &DenseMatrix<T>::operator-=(const DenseMatrix &rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
    throw std::invalid_argument("DenseMatrix: shape mismatch in -=");
  for (std::size_t k = 0; k < data_.size(); ++k)
    data_[k] -= rhs.data_[k];
  return *this;
}

template <class T> DenseMatrix<T> &DenseMatrix<T>::operator*=(T s) {
  for (auto &v : data_)
    v *= s;
  return *this;
}

template <class T> DenseMatrix<T> operator*(const DenseMatrix<T> &a, const DenseMatrix<T> &b) {
  if (a.cols() != b.rows())
    throw std::invalid_argument("DenseMatrix: shape mismatch in product");
  DenseMatrix<T> c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const T aik = a(i, k);
      if (aik == T{})
        continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        c(i, j) += aik * b(k, j);
    }
  return c;
}

template class DenseMatrix<double>;
template class DenseMatrix<Complex>;
template RealMatrix operator*(const RealMatrix &, const RealMatrix &);
template ComplexMatrix operator*(const ComplexMatrix &, const ComplexMatrix &);

std::vector<double> multiply(const RealMatrix &m, std::span<const double> v) {
  if (m.cols() != v.size())
    throw std::invalid_argument("multiply: shape mismatch");
  std::vector<double> out(m.rows(), 0.0);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      out[i] += m(i, j) * v[j];
  return out;
}

ComplexMatrix to_complex(const RealMatrix &m) {
  ComplexMatrix c(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      c(i, j) = m(i, j);
  return c;
}

ComplexMatrix adjoint(const ComplexMatrix &m) {
  ComplexMatrix a(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      a(j, i) = std::conj(m(i, j));
  return a;
}

double max_abs(const RealMatrix &m) {
  double r = 0.0;
  for (double v : m.data())
    r = std::max(r, std::abs(v));
  return r;
}

double max_abs(const ComplexMatrix &m) {
  double r = 0.0;
  for (const Complex &v : m.data())
    r = std::max(r, std::abs(v));
  return r;
}

double max_abs_difference(const RealMatrix &a, const RealMatrix &b) { return max_abs(a - b); }
double max_abs_difference(const ComplexMatrix &a, const ComplexMatrix &b) { return max_abs(a - b); }

double frobenius_norm(const RealMatrix &m) {
  double s = 0.0;
  for (double v : m.data())
    s += v * v;
  return std::sqrt(s);
}

double symmetry_defect(const RealMatrix &m) {
  if (!m.square())
    throw std::invalid_argument("symmetry_defect: matrix not square");
  double d = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i + 1; j < m.cols(); ++j)
      d = std::max(d, std::abs(m(i, j) - m(j, i)));
  return d;
}

std::vector<double> EigenDecomposition::vector(std::size_t i) const {
  std::vector<double> v(vectors.rows());
  for (std::size_t r = 0; r < vectors.rows(); ++r)
    v[r] = vectors(r, i);
  return v;
}

EigenDecomposition symmetric_eigen(const RealMatrix &m) {
  if (!m.square())
    throw std::invalid_argument("symmetric_eigen: matrix not square");
  const std::size_t n = m.rows();
  const double scale = std::max(max_abs(m), 1e-300);
  if (symmetry_defect(m) > 1e-12 * scale)
    throw std::invalid_argument("symmetric_eigen: matrix not symmetric");

  RealMatrix a = m;
  // Symmetrize exactly so rotations act on a truly symmetric array.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      a(i, j) = a(j, i) = 0.5 * (a(i, j) + a(j, i));
  RealMatrix v = RealMatrix::identity(n);

  constexpr int max_sweeps = 100;
  bool converged = n < 2;
  for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q)
        off += std::abs(a(p, q));
    if (off == 0.0) {
      converged = true;
      break;
    }
    // Small threshold in early sweeps, as in the classical cyclic scheme.
    const double thresh = sweep < 3 ? 0.2 * off / static_cast<double>(n * n) : 0.0;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        const double g = 100.0 * std::abs(apq);
        const double app = a(p, p), aqq = a(q, q);
        if (sweep > 3 && std::abs(app) + g == std::abs(app) && std::abs(aqq) + g == std::abs(aqq)) {
          a(p, q) = a(q, p) = 0.0;
          continue;
        }
        if (std::abs(apq) <= thresh || apq == 0.0)
          continue;
        const double theta = (aqq - app) / (2.0 * apq);
        double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0.0)
          t = -t;
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t r = 0; r < n; ++r) {
          if (r == p || r == q)
            continue;
          const double arp = a(r, p), arq = a(r, q);
          a(r, p) = a(p, r) = c * arp - s * arq;
          a(r, q) = a(q, r) = s * arp + c * arq;
        }
        a(p, p) = app - t * apq;
        a(q, q) = aqq + t * apq;
        a(p, q) = a(q, p) = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
          const double vrp = v(r, p), vrq = v(r, q);
          v(r, p) = c * vrp - s * vrq;
          v(r, q) = s * vrp + c * vrq;
        }
      }
    }
  }
  if (!converged)
    throw NumericalError("symmetric_eigen: Jacobi sweeps did not converge");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });
  EigenDecomposition out{std::vector<double>(n), RealMatrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]);
    for (std::size_t r = 0; r < n; ++r)
      out.vectors(r, k) = v(r, order[k]);
  }
  return out;
}

} // namespace fpedss
