#pragma once

#include <cstddef>
#include <vector>

#include "qenrich/error.hpp"
#include "qenrich/quantale.hpp"

namespace qenrich {

/// Dense row-major matrix of quantale values.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, QVal fill) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<QVal> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) throw InvalidInput("matrix data does not match its shape");
  }

  static Matrix from_rows(const std::vector<Vec>& rows, std::size_t cols_if_empty = 0) {
    std::size_t cols = rows.empty() ? cols_if_empty : rows.front().size();
    Matrix m(rows.size(), cols, QVal{});
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw InvalidInput("ragged matrix rows");
      for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
  }

  static Matrix column(const Vec& v) { return Matrix(v.size(), 1, v); }
  static Matrix row_of(const Vec& v) { return Matrix(1, v.size(), v); }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  QVal operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  QVal& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

  Vec row(std::size_t i) const { return Vec(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                                            data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)); }
  Vec col(std::size_t j) const {
    Vec v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  Matrix transposed() const {
    Matrix t(cols_, rows_, QVal{});
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = (*this)(i, j);
    return t;
  }

  const std::vector<QVal>& data() const { return data_; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<QVal> data_;
};

}  // namespace qenrich
