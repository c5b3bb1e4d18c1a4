#pragma once

// Exact linear algebra over the rationals. Matrices here are tiny (a few
// dozen rows at most) so everything is dense and eagerly reduced.

#include <boost/rational.hpp>

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <vector>

#include "mcluster/errors.hpp"

namespace mcluster {

using Rational = boost::rational<std::int64_t>;
using Vector = std::vector<Rational>;

// Comparing a rational with a plain int literal recurses forever under C++20
// rewritten comparison rules with older Boost releases, so zero tests go here.
inline bool is_zero(const Rational& x) noexcept { return x.numerator() == 0; }

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Vector row(std::size_t r) const {
    return Vector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                  data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
  }

  Vector column(std::size_t c) const {
    Vector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
  }

  Vector operator*(const Vector& v) const {
    if (v.size() != cols_) throw PreconditionError("matrix-vector size mismatch");
    Vector out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
      Rational acc = 0;
      for (std::size_t c = 0; c < cols_; ++c) {
        if (!mcluster::is_zero((*this)(r, c)) && !mcluster::is_zero(v[c])) acc += (*this)(r, c) * v[c];
      }
      out[r] = acc;
    }
    return out;
  }

  Matrix operator*(const Matrix& o) const {
    if (o.rows_ != cols_) throw PreconditionError("matrix-matrix size mismatch");
    Matrix out(rows_, o.cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t k = 0; k < cols_; ++k) {
        const Rational a = (*this)(r, k);
        if (mcluster::is_zero(a)) continue;
        for (std::size_t c = 0; c < o.cols_; ++c) {
          if (!mcluster::is_zero(o(k, c))) out(r, c) += a * o(k, c);
        }
      }
    }
    return out;
  }

  Matrix& operator+=(const Matrix& o) {
    if (o.rows_ != rows_ || o.cols_ != cols_) throw PreconditionError("matrix sum size mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }

  Matrix scaled(const Rational& s) const {
    Matrix out = *this;
    for (auto& x : out.data_) x *= s;
    return out;
  }

  bool is_zero() const {
    for (const auto& x : data_) {
      if (!mcluster::is_zero(x)) return false;
    }
    return true;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

// Reduced row echelon form. `pivots[i]` is the pivot column of row i of `reduced`;
// rows past pivots.size() are zero and dropped.
struct RowEchelon {
  Matrix reduced;
  std::vector<std::size_t> pivots;

  std::size_t rank() const noexcept { return pivots.size(); }
};

inline RowEchelon row_echelon(Matrix m) {
  std::vector<std::size_t> pivots;
  std::size_t lead_row = 0;
  for (std::size_t c = 0; c < m.cols() && lead_row < m.rows(); ++c) {
    std::size_t pivot = lead_row;
    while (pivot < m.rows() && is_zero(m(pivot, c))) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != lead_row) {
      for (std::size_t k = 0; k < m.cols(); ++k) std::swap(m(pivot, k), m(lead_row, k));
    }
    const Rational inv = Rational(1) / m(lead_row, c);
    for (std::size_t k = c; k < m.cols(); ++k) m(lead_row, k) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == lead_row || is_zero(m(r, c))) continue;
      const Rational factor = m(r, c);
      for (std::size_t k = c; k < m.cols(); ++k) {
        if (!is_zero(m(lead_row, k))) m(r, k) -= factor * m(lead_row, k);
      }
    }
    pivots.push_back(c);
    ++lead_row;
  }
  Matrix reduced(pivots.size(), m.cols());
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    for (std::size_t k = 0; k < m.cols(); ++k) reduced(r, k) = m(r, k);
  }
  return {std::move(reduced), std::move(pivots)};
}

inline Matrix from_rows(const std::vector<Vector>& rows, std::size_t dim) {
  Matrix m(rows.size(), dim);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != dim) throw PreconditionError("row has wrong length");
    for (std::size_t c = 0; c < dim; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

inline std::size_t rank(const Matrix& m) { return row_echelon(m).rank(); }

inline std::size_t span_rank(const std::vector<Vector>& vectors, std::size_t dim) {
  if (vectors.empty() || dim == 0) return 0;
  return rank(from_rows(vectors, dim));
}

// Dimension of the kernel of `m` acting on column vectors.
inline std::size_t nullity(const Matrix& m) { return m.cols() - rank(m); }

inline std::ostream& operator<<(std::ostream& os, const Matrix& m) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    os << '[';
    for (std::size_t c = 0; c < m.cols(); ++c) os << (c ? " " : "") << m(r, c);
    os << "]\n";
  }
  return os;
}

}  // namespace mcluster
