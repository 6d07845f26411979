// Copyright 2026 The qgh Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

/// @file
/// Dense real/complex matrices, the symmetric and Hermitian carriers, and the
/// cyclic Jacobi eigensolver every PSD check in the library goes through.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <span>
#include <utility>
#include <vector>

#include "qgh/error.hpp"

namespace qgh {

using Complex = std::complex<double>;

/// Row-major dense matrix.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw InputError("ragged matrix initializer");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
    return m;
  }

  /// The matrix unit with a single 1 at (i, j).
  static Matrix unit(std::size_t rows, std::size_t cols, std::size_t i,
                     std::size_t j) {
    Matrix m(rows, cols);
    m(i, j) = T{1};
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  std::span<T> data() { return data_; }
  std::span<const T> data() const { return data_; }

  Matrix& operator+=(const Matrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  Matrix& operator*=(T s) {
    for (auto& x : data_) x *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, T s) { return a *= s; }
  friend Matrix operator*(T s, Matrix a) { return a *= s; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw InputError("matrix product shape mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T aik = a(i, k);
        if (aik == T{}) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  bool operator==(const Matrix&) const = default;

 private:
  void check_same(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw InputError("matrix shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using RealMatrix = Matrix<double>;
using ComplexMatrix = Matrix<Complex>;

template <typename T>
Matrix<T> transpose(const Matrix<T>& a) {
  Matrix<T> t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

inline ComplexMatrix adjoint(const ComplexMatrix& a) {
  ComplexMatrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = std::conj(a(i, j));
  return t;
}

/// Kronecker product a ⊗ b.
template <typename T>
Matrix<T> kron(const Matrix<T>& a, const Matrix<T>& b) {
  Matrix<T> k(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const T aij = a(i, j);
      if (aij == T{}) continue;
      for (std::size_t p = 0; p < b.rows(); ++p)
        for (std::size_t q = 0; q < b.cols(); ++q)
          k(i * b.rows() + p, j * b.cols() + q) = aij * b(p, q);
    }
  return k;
}

template <typename T>
T trace(const Matrix<T>& a) {
  T t{};
  for (std::size_t i = 0; i < std::min(a.rows(), a.cols()); ++i) t += a(i, i);
  return t;
}

template <typename T>
double frobenius_norm(const Matrix<T>& a) {
  double s = 0.0;
  for (const auto& x : a.data()) s += std::norm(x);
  return std::sqrt(s);
}

/// Largest absolute entry.
template <typename T>
double max_abs(const Matrix<T>& a) {
  double m = 0.0;
  for (const auto& x : a.data()) m = std::max(m, static_cast<double>(std::abs(x)));
  return m;
}

template <typename T>
bool all_finite(const Matrix<T>& a) {
  return std::all_of(a.data().begin(), a.data().end(), [](const T& x) {
    if constexpr (std::is_same_v<T, Complex>)
      return std::isfinite(x.real()) && std::isfinite(x.imag());
    else
      return std::isfinite(x);
  });
}

/// Real symmetric matrix; symmetry is exact, enforced on construction by
/// averaging with the transpose.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(std::size_t dim) : m_(dim, dim) {}
  explicit SymMatrix(const RealMatrix& m) : m_(m) {
    if (!m.square()) throw InputError("symmetric matrix must be square");
    for (std::size_t i = 0; i < dim(); ++i)
      for (std::size_t j = i + 1; j < dim(); ++j) {
        const double avg = 0.5 * (m_(i, j) + m_(j, i));
        m_(i, j) = m_(j, i) = avg;
      }
  }
  SymMatrix(std::initializer_list<std::initializer_list<double>> init)
      : SymMatrix(RealMatrix(init)) {}

  static SymMatrix identity(std::size_t n) {
    return SymMatrix(RealMatrix::identity(n));
  }

  std::size_t dim() const { return m_.rows(); }
  double operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

  /// Sets both (i,j) and (j,i).
  void set(std::size_t i, std::size_t j, double v) {
    m_(i, j) = v;
    m_(j, i) = v;
  }

  const RealMatrix& matrix() const { return m_; }
  bool operator==(const SymMatrix&) const = default;

 private:
  RealMatrix m_;
};

/// Complex Hermitian matrix; conjugate symmetry enforced on construction.
class HermMatrix {
 public:
  HermMatrix() = default;
  explicit HermMatrix(std::size_t dim) : m_(dim, dim) {}
  explicit HermMatrix(const ComplexMatrix& m) : m_(m) {
    if (!m.square()) throw InputError("Hermitian matrix must be square");
    for (std::size_t i = 0; i < dim(); ++i) {
      m_(i, i) = Complex(m_(i, i).real(), 0.0);
      for (std::size_t j = i + 1; j < dim(); ++j) {
        const Complex avg = 0.5 * (m_(i, j) + std::conj(m_(j, i)));
        m_(i, j) = avg;
        m_(j, i) = std::conj(avg);
      }
    }
  }

  std::size_t dim() const { return m_.rows(); }
  Complex operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  const ComplexMatrix& matrix() const { return m_; }

  /// Real symmetric embedding [[Re, -Im], [Im, Re]] of size 2d; its spectrum
  /// is the Hermitian spectrum with every eigenvalue doubled.
  SymMatrix real_embedding() const {
    const std::size_t d = dim();
    RealMatrix r(2 * d, 2 * d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        const Complex z = m_(i, j);
        r(i, j) = z.real();
        r(i + d, j + d) = z.real();
        r(i, j + d) = -z.imag();
        r(i + d, j) = z.imag();
      }
    return SymMatrix(r);
  }

 private:
  ComplexMatrix m_;
};

struct EigenDecomposition {
  std::vector<double> values;  ///< ascending
  RealMatrix vectors;          ///< column k pairs with values[k]
};

namespace detail {

inline double off_diagonal_norm(const RealMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

}  // namespace detail

/// Cyclic Jacobi eigendecomposition of a real symmetric matrix.
///
/// Sweeps until the off-diagonal Frobenius mass drops below
/// 1e-13 * max(1, ||M||_F), capped at 100 sweeps.
inline EigenDecomposition eig_sym(const SymMatrix& m) {
  if (!all_finite(m.matrix())) throw InputError("eig_sym: non-finite entry");
  const std::size_t n = m.dim();
  RealMatrix a = m.matrix();
  RealMatrix v = RealMatrix::identity(n);
  const double threshold = 1e-13 * std::max(1.0, frobenius_norm(a));

  for (int sweep = 0; sweep < 100; ++sweep) {
    if (detail::off_diagonal_norm(a) <= threshold) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (std::abs(apq) < 1e-300) continue;
        const double app = a(p, p);
        const double aqq = a(q, q);
        // Skip rotations that cannot change the diagonal in double precision.
        if (std::abs(apq) < 1e-18 * (std::abs(app) + std::abs(aqq))) {
          a(p, q) = a(q, p) = 0.0;
          continue;
        }
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = a(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });
  EigenDecomposition out;
  out.values.resize(n);
  out.vectors = RealMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]);
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

/// V diag(f(λ)) Vᵀ for a spectral map f.
template <typename F>
SymMatrix spectral_apply(const EigenDecomposition& e, F&& f) {
  const std::size_t n = e.values.size();
  RealMatrix r(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double lk = f(e.values[k]);
    if (lk == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const double vik = lk * e.vectors(i, k);
      if (vik == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) r(i, j) += vik * e.vectors(j, k);
    }
  }
  return SymMatrix(r);
}

/// Nearest PSD matrix in Frobenius norm: Σ max(λ_i, 0) v_i v_iᵀ.
inline SymMatrix psd_project(const SymMatrix& m) {
  return spectral_apply(eig_sym(m), [](double l) { return std::max(l, 0.0); });
}

inline double min_eigenvalue(const SymMatrix& m) {
  if (m.dim() == 0) return 0.0;
  return eig_sym(m).values.front();
}

inline double min_eigenvalue(const HermMatrix& m) {
  if (m.dim() == 0) return 0.0;
  return eig_sym(m.real_embedding()).values.front();
}

inline double max_eigenvalue(const SymMatrix& m) {
  if (m.dim() == 0) return 0.0;
  return eig_sym(m).values.back();
}

inline double max_eigenvalue(const HermMatrix& m) {
  if (m.dim() == 0) return 0.0;
  return eig_sym(m.real_embedding()).values.back();
}

}  // namespace qgh
