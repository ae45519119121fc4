#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "bjo/errors.hpp"

namespace bjo {

using Scalar = std::complex<double>;

enum class Field { Real, Complex };

/// Dense row-major matrix over R or C.  The field tag records which scalar
/// field the surrounding problem lives in; Real matrices keep imaginary
/// parts exactly zero.
class Mat {
 public:
  Mat() = default;

  Mat(std::size_t rows, std::size_t cols, Field field = Field::Complex)
      : rows_(rows), cols_(cols), field_(field), a_(rows * cols, Scalar{0.0, 0.0}) {}

  static Mat identity(std::size_t n, Field field = Field::Complex) {
    Mat m(n, n, field);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static Mat from_rows(std::initializer_list<std::initializer_list<Scalar>> rows,
                       Field field = Field::Complex) {
    Mat m(rows.size(), rows.begin()->size(), field);
    std::size_t i = 0;
    for (const auto& r : rows) {
      std::size_t j = 0;
      for (const auto& v : r) m(i, j++) = v;
      ++i;
    }
    return m;
  }

  static Mat diag(std::initializer_list<Scalar> d, Field field = Field::Complex) {
    Mat m(d.size(), d.size(), field);
    std::size_t i = 0;
    for (const auto& v : d) {
      m(i, i) = v;
      ++i;
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Field field() const { return field_; }
  void set_field(Field f) { field_ = f; }
  bool square() const { return rows_ == cols_; }

  Scalar& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  const std::vector<Scalar>& data() const { return a_; }
  std::vector<Scalar>& data() { return a_; }

  bool same_shape(const Mat& o) const { return rows_ == o.rows_ && cols_ == o.cols_; }

  Mat adjoint() const {
    Mat m(cols_, rows_, field_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
    return m;
  }

  Mat operator*(const Mat& o) const {
    if (cols_ != o.rows_) throw Error(ErrorCode::ShapeMismatch, "matrix product");
    Mat m(rows_, o.cols_, field_ == Field::Real && o.field_ == Field::Real ? Field::Real
                                                                           : Field::Complex);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const Scalar v = (*this)(i, k);
        if (v == Scalar{0.0, 0.0}) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) m(i, j) += v * o(k, j);
      }
    return m;
  }

  Mat operator+(const Mat& o) const {
    require_same_shape(o);
    Mat m = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] += o.a_[i];
    m.field_ = joint_field(o);
    return m;
  }

  Mat operator-(const Mat& o) const {
    require_same_shape(o);
    Mat m = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] -= o.a_[i];
    m.field_ = joint_field(o);
    return m;
  }

  Mat operator*(Scalar s) const {
    Mat m = *this;
    for (auto& v : m.a_) v *= s;
    if (s.imag() != 0.0) m.field_ = Field::Complex;
    return m;
  }

  std::vector<Scalar> apply(const std::vector<Scalar>& x) const {
    if (x.size() != cols_) throw Error(ErrorCode::ShapeMismatch, "matrix-vector product");
    std::vector<Scalar> y(rows_, Scalar{0.0, 0.0});
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) y[i] += (*this)(i, j) * x[j];
    return y;
  }

  void require_same_shape(const Mat& o) const {
    if (!same_shape(o)) throw Error(ErrorCode::ShapeMismatch, "shapes differ");
  }

 private:
  Field joint_field(const Mat& o) const {
    return field_ == Field::Real && o.field_ == Field::Real ? Field::Real : Field::Complex;
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Field field_ = Field::Complex;
  std::vector<Scalar> a_;
};

inline Mat operator*(Scalar s, const Mat& m) { return m * s; }

using Vec = std::vector<Scalar>;

inline Scalar dot(const Vec& x, const Vec& y) {
  // <y, x> convention: conjugate on the first argument's entries.
  Scalar s{0.0, 0.0};
  for (std::size_t i = 0; i < x.size(); ++i) s += std::conj(x[i]) * y[i];
  return s;
}

inline double vec_norm(const Vec& x) {
  double s = 0.0;
  for (const auto& v : x) s += std::norm(v);
  return std::sqrt(s);
}

inline void scale(Vec& x, Scalar s) {
  for (auto& v : x) v *= s;
}

inline Vec unit_basis(std::size_t n, std::size_t i) {
  Vec e(n, Scalar{0.0, 0.0});
  e[i] = 1.0;
  return e;
}

/// tr(M* N) — the Frobenius inner product, conjugate-linear in M.
inline Scalar fro_inner(const Mat& m, const Mat& n) {
  m.require_same_shape(n);
  Scalar s{0.0, 0.0};
  for (std::size_t i = 0; i < m.data().size(); ++i) s += std::conj(m.data()[i]) * n.data()[i];
  return s;
}

inline double fro_norm(const Mat& m) {
  double s = 0.0;
  for (const auto& v : m.data()) s += std::norm(v);
  return std::sqrt(s);
}

inline Scalar trace(const Mat& m) {
  if (!m.square()) throw Error(ErrorCode::NonSquare, "trace");
  Scalar s{0.0, 0.0};
  for (std::size_t i = 0; i < m.rows(); ++i) s += m(i, i);
  return s;
}

inline Mat outer(const Vec& x, const Vec& y, Field field = Field::Complex) {
  // x y*
  Mat m(x.size(), y.size(), field);
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) m(i, j) = x[i] * std::conj(y[j]);
  return m;
}

inline Mat col_matrix(const std::vector<Vec>& cols, Field field = Field::Complex) {
  Mat m(cols.empty() ? 0 : cols[0].size(), cols.size(), field);
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < m.rows(); ++i) m(i, j) = cols[j][i];
  return m;
}

inline Vec column(const Mat& m, std::size_t j) {
  Vec c(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) c[i] = m(i, j);
  return c;
}

}  // namespace bjo
