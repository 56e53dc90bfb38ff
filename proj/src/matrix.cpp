#include "cascade/matrix.hpp"

#include <string>
#include <utility>

namespace cascade {

namespace {

std::string shape(const Matrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<Elem> entries)
    : rows_(rows), cols_(cols), a_(std::move(entries)) {
  if (a_.size() != rows * cols) throw DimensionError("entry count does not match shape");
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

std::vector<Elem> Matrix::row(std::size_t r) const {
  return {a_.begin() + r * cols_, a_.begin() + (r + 1) * cols_};
}

Matrix Matrix::select_rows(const std::vector<std::size_t>& idx) const {
  Matrix m(idx.size(), cols_);
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t c = 0; c < cols_; ++c) m(i, c) = (*this)(idx[i], c);
  return m;
}

Matrix Matrix::select_cols(const std::vector<std::size_t>& idx) const {
  Matrix m(rows_, idx.size());
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t j = 0; j < idx.size(); ++j) m(r, j) = (*this)(r, idx[j]);
  return m;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw DimensionError("block out of range");
  Matrix m(nr, nc);
  for (std::size_t r = 0; r < nr; ++r)
    for (std::size_t c = 0; c < nc; ++c) m(r, c) = (*this)(r0 + r, c0 + c);
  return m;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& m) {
  if (r0 + m.rows() > rows_ || c0 + m.cols() > cols_) throw DimensionError("block out of range");
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) (*this)(r0 + r, c0 + c) = m(r, c);
}

Matrix Matrix::transpose() const {
  Matrix m(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) m(c, r) = (*this)(r, c);
  return m;
}

bool Matrix::is_zero() const {
  for (Elem e : a_)
    if (e) return false;
  return true;
}

Matrix mat_add(const Field& F, const Matrix& A, const Matrix& B) {
  if (A.rows() != B.rows() || A.cols() != B.cols())
    throw DimensionError("mat_add: " + shape(A) + " vs " + shape(B));
  Matrix C(A.rows(), A.cols());
  for (std::size_t r = 0; r < A.rows(); ++r)
    for (std::size_t c = 0; c < A.cols(); ++c) C(r, c) = F.add(A(r, c), B(r, c));
  return C;
}

Matrix mat_sub(const Field& F, const Matrix& A, const Matrix& B) {
  if (A.rows() != B.rows() || A.cols() != B.cols())
    throw DimensionError("mat_sub: " + shape(A) + " vs " + shape(B));
  Matrix C(A.rows(), A.cols());
  for (std::size_t r = 0; r < A.rows(); ++r)
    for (std::size_t c = 0; c < A.cols(); ++c) C(r, c) = F.sub(A(r, c), B(r, c));
  return C;
}

Matrix mat_mul(const Field& F, const Matrix& A, const Matrix& B) {
  if (A.cols() != B.rows()) throw DimensionError("mat_mul: " + shape(A) + " * " + shape(B));
  Matrix C(A.rows(), B.cols());
  for (std::size_t r = 0; r < A.rows(); ++r)
    for (std::size_t t = 0; t < A.cols(); ++t) {
      Elem a = A(r, t);
      if (!a) continue;
      for (std::size_t c = 0; c < B.cols(); ++c)
        if (B(t, c)) C(r, c) = F.add(C(r, c), F.mul(a, B(t, c)));
    }
  return C;
}

std::vector<Elem> vec_mat(const Field& F, const std::vector<Elem>& v, const Matrix& A) {
  if (v.size() != A.rows()) throw DimensionError("vec_mat: length mismatch");
  std::vector<Elem> out(A.cols(), 0);
  for (std::size_t t = 0; t < v.size(); ++t) {
    if (!v[t]) continue;
    for (std::size_t c = 0; c < A.cols(); ++c)
      if (A(t, c)) out[c] = F.add(out[c], F.mul(v[t], A(t, c)));
  }
  return out;
}

Matrix hstack(const std::vector<Matrix>& parts) {
  if (parts.empty()) return {};
  std::size_t rows = parts.front().rows(), cols = 0;
  for (const auto& p : parts) {
    if (p.rows() != rows) throw DimensionError("hstack: row mismatch");
    cols += p.cols();
  }
  Matrix m(rows, cols);
  std::size_t c0 = 0;
  for (const auto& p : parts) {
    m.set_block(0, c0, p);
    c0 += p.cols();
  }
  return m;
}

Matrix vstack(const std::vector<Matrix>& parts) {
  if (parts.empty()) return {};
  std::size_t cols = parts.front().cols(), rows = 0;
  for (const auto& p : parts) {
    if (p.cols() != cols) throw DimensionError("vstack: column mismatch");
    rows += p.rows();
  }
  Matrix m(rows, cols);
  std::size_t r0 = 0;
  for (const auto& p : parts) {
    m.set_block(r0, 0, p);
    r0 += p.rows();
  }
  return m;
}

Matrix rref(const Field& F, const Matrix& A, ColumnBasis* basis) {
  Matrix R = A;
  std::size_t lead = 0;
  ColumnBasis cb;
  for (std::size_t c = 0; c < R.cols() && lead < R.rows(); ++c) {
    std::size_t p = lead;
    while (p < R.rows() && R(p, c) == 0) ++p;
    if (p == R.rows()) continue;
    if (p != lead)
      for (std::size_t j = 0; j < R.cols(); ++j) std::swap(R(p, j), R(lead, j));
    Elem s = F.inv(R(lead, c));
    for (std::size_t j = c; j < R.cols(); ++j) R(lead, j) = F.mul(R(lead, j), s);
    for (std::size_t r = 0; r < R.rows(); ++r) {
      if (r == lead || R(r, c) == 0) continue;
      Elem f = R(r, c);
      for (std::size_t j = c; j < R.cols(); ++j)
        if (R(lead, j)) R(r, j) = F.sub(R(r, j), F.mul(f, R(lead, j)));
    }
    cb.pivots.push_back(c);
    ++lead;
  }
  cb.rank = cb.pivots.size();
  if (basis) *basis = std::move(cb);
  return R;
}

ColumnBasis column_basis(const Field& F, const Matrix& A) {
  ColumnBasis cb;
  rref(F, A, &cb);
  return cb;
}

std::size_t rank(const Field& F, const Matrix& A) { return column_basis(F, A).rank; }

Matrix mat_inverse(const Field& F, const Matrix& A) {
  if (A.rows() != A.cols()) throw DimensionError("mat_inverse: matrix is " + shape(A));
  const std::size_t n = A.rows();
  if (n == 0) return {};
  Matrix aug = hstack({A, Matrix::identity(n)});
  ColumnBasis cb;
  Matrix R = rref(F, aug, &cb);
  if (cb.rank < n || cb.pivots[n - 1] != n - 1) throw SingularMatrix("matrix is singular");
  return R.block(0, n, n, n);
}

}  // namespace cascade
