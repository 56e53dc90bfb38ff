#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "cascade/field.hpp"

namespace cascade {

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class SingularMatrix : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Dense row-major matrix of field elements. The field travels separately.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, 0) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<Elem> entries);

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Elem& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  Elem operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }
  const std::vector<Elem>& data() const { return a_; }
  std::vector<Elem> row(std::size_t r) const;

  Matrix select_rows(const std::vector<std::size_t>& idx) const;
  Matrix select_cols(const std::vector<std::size_t>& idx) const;
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const Matrix& m);
  Matrix transpose() const;
  bool is_zero() const;

  bool operator==(const Matrix& o) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Elem> a_;
};

Matrix mat_add(const Field& F, const Matrix& A, const Matrix& B);
Matrix mat_sub(const Field& F, const Matrix& A, const Matrix& B);
Matrix mat_mul(const Field& F, const Matrix& A, const Matrix& B);
std::vector<Elem> vec_mat(const Field& F, const std::vector<Elem>& v, const Matrix& A);
Matrix hstack(const std::vector<Matrix>& parts);
Matrix vstack(const std::vector<Matrix>& parts);

Matrix mat_inverse(const Field& F, const Matrix& A);

struct ColumnBasis {
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;  // ascending
};

// Leftmost-pivot elimination, columns scanned left to right.
ColumnBasis column_basis(const Field& F, const Matrix& A);
std::size_t rank(const Field& F, const Matrix& A);
// Reduced row echelon form; pivots reported alongside.
Matrix rref(const Field& F, const Matrix& A, ColumnBasis* basis = nullptr);

}  // namespace cascade
