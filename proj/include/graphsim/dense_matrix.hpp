#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "error.hpp"

namespace graphsim {

// Row-major dense matrix of finite reals. Column vectors are n x 1 matrices.
class DenseMatrix {
public:
  DenseMatrix() = default;

  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_)
      throw input_error("matrix data length does not match its shape");
  }

  static DenseMatrix ones(std::size_t rows, std::size_t cols) { return {rows, cols, 1.0}; }

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static DenseMatrix diagonal(std::span<const double> d) {
    DenseMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  static DenseMatrix column(std::vector<double> v) {
    const std::size_t n = v.size();
    return {n, 1, std::move(v)};
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  double& operator()(std::size_t i, std::size_t j) {
    assert(i < rows_ && j < cols_);
    return data_[i * cols_ + j];
  }
  double operator()(std::size_t i, std::size_t j) const {
    assert(i < rows_ && j < cols_);
    return data_[i * cols_ + j];
  }

  std::span<double> data() noexcept { return data_; }
  std::span<const double> data() const noexcept { return data_; }

  std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  std::vector<double> column_values(std::size_t j) const {
    std::vector<double> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
    return out;
  }

  DenseMatrix transposed() const {
    DenseMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  DenseMatrix& operator*=(double s) {
    for (double& x : data_) x *= s;
    return *this;
  }

  DenseMatrix& operator+=(const DenseMatrix& o) {
    require_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }

  DenseMatrix& operator-=(const DenseMatrix& o) {
    require_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }

  friend DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b) { return a += b; }
  friend DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b) { return a -= b; }
  friend DenseMatrix operator*(double s, DenseMatrix a) { return a *= s; }

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

private:
  void require_same_shape(const DenseMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw input_error("matrix shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

inline double frobenius_norm(const DenseMatrix& m) {
  double amax = 0.0;
  for (double x : m.data()) amax = std::max(amax, std::fabs(x));
  if (amax == 0.0) return 0.0;
  // Rescale only when squaring could overflow or flush everything to zero.
  const double scale = (amax > 1e150 || amax < 1e-150) ? amax : 1.0;
  double ssq = 0.0;
  for (double x : m.data()) {
    const double y = x / scale;
    ssq += y * y;
  }
  return scale * std::sqrt(ssq);
}

inline double one_norm(const DenseMatrix& m) {
  double s = 0.0;
  for (double x : m.data()) s += std::fabs(x);
  return s;
}

inline double max_abs_difference(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw input_error("matrix shape mismatch");
  double d = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) d = std::max(d, std::fabs(a.data()[k] - b.data()[k]));
  return d;
}

inline DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) throw input_error("matrix product dimension mismatch");
  DenseMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

// Column-major vectorization: stacks the columns of m into one column.
inline DenseMatrix vec(const DenseMatrix& m) {
  DenseMatrix v(m.size(), 1);
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (std::size_t i = 0; i < m.rows(); ++i) v(j * m.rows() + i, 0) = m(i, j);
  return v;
}

// Inverse of vec for a rows x cols target shape.
inline DenseMatrix unvec(const DenseMatrix& v, std::size_t rows, std::size_t cols) {
  if (v.size() != rows * cols) throw input_error("cannot reshape vector to requested shape");
  DenseMatrix m(rows, cols);
  for (std::size_t j = 0; j < cols; ++j)
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = v.data()[j * rows + i];
  return m;
}

inline std::string format_real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// One row per line, comma separated, full round-trip precision.
inline void write_csv(std::ostream& os, const DenseMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) os << ',';
      os << format_real(m(i, j));
    }
    os << '\n';
  }
}

// {"rows":R,"cols":C,"data":[row-major values]}
inline void write_json(std::ostream& os, const DenseMatrix& m) {
  os << "{\"rows\":" << m.rows() << ",\"cols\":" << m.cols() << ",\"data\":[";
  for (std::size_t k = 0; k < m.size(); ++k) {
    if (k) os << ',';
    os << format_real(m.data()[k]);
  }
  os << "]}\n";
}

}  // namespace graphsim
