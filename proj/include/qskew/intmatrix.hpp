#pragma once

#include <string>
#include <vector>

#include "qskew/common.hpp"

namespace qskew {

/// Dense matrix of arbitrary-precision integers.
class IntMatrix {
 public:
  IntMatrix() : rows_(0), cols_(0) {}
  IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, 0) {
    if (rows < 0 || cols < 0) throw DomainError("IntMatrix: negative dimensions");
  }

  static IntMatrix identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Int& at(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  const Int& at(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

  friend bool operator==(const IntMatrix& x, const IntMatrix& y) {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
  }
  friend bool operator!=(const IntMatrix& x, const IntMatrix& y) { return !(x == y); }

  friend IntMatrix operator*(const IntMatrix& x, const IntMatrix& y) {
    if (x.cols_ != y.rows_) throw DomainError("IntMatrix: dimension mismatch in product");
    IntMatrix r(x.rows_, y.cols_);
    for (int i = 0; i < x.rows_; ++i)
      for (int k = 0; k < x.cols_; ++k) {
        const Int& v = x.at(i, k);
        if (v == 0) continue;
        for (int j = 0; j < y.cols_; ++j) r.at(i, j) += v * y.at(k, j);
      }
    return r;
  }

  IntMatrix transpose() const {
    IntMatrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
  }

  bool is_skew_symmetric() const {
    if (rows_ != cols_) return false;
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j <= i; ++j)
        if (at(i, j) != -at(j, i)) return false;
    return true;
  }

  /// Exact determinant (Bareiss fraction-free elimination).
  Int determinant() const {
    if (rows_ != cols_) throw DomainError("IntMatrix: determinant of non-square matrix");
    int n = rows_;
    if (n == 0) return 1;
    IntMatrix m = *this;
    Int prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
      if (m.at(k, k) == 0) {
        int piv = -1;
        for (int i = k + 1; i < n && piv < 0; ++i)
          if (m.at(i, k) != 0) piv = i;
        if (piv < 0) return 0;
        for (int j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(piv, j));
        sign = -sign;
      }
      for (int i = k + 1; i < n; ++i)
        for (int j = k + 1; j < n; ++j) {
          Int v = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
          m.at(i, j) = v / prev;
        }
      prev = m.at(k, k);
    }
    return sign > 0 ? m.at(n - 1, n - 1) : -m.at(n - 1, n - 1);
  }

  std::string to_string() const {
    std::string s;
    for (int i = 0; i < rows_; ++i) {
      s += i == 0 ? "[" : " ";
      s += "[";
      for (int j = 0; j < cols_; ++j) {
        if (j) s += ", ";
        s += at(i, j).get_str();
      }
      s += "]";
      s += i + 1 == rows_ ? "]" : "\n";
    }
    return s;
  }

 private:
  int rows_, cols_;
  std::vector<Int> a_;
};

}  // namespace qskew
