#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "reflectum/scalar.hpp"

namespace reflectum {

// Sparse vector: strictly increasing indices, no explicit zeros.
using SparseVec = std::vector<std::pair<std::uint32_t, Scalar>>;

void sparse_sort_combine(SparseVec& v);
void sparse_axpy(SparseVec& dst, const Scalar& c, const SparseVec& src);
SparseVec sparse_scale(const SparseVec& v, const Scalar& c);
bool sparse_equal(const SparseVec& a, const SparseVec& b);
SparseVec to_sparse(const std::vector<Scalar>& dense);
std::vector<Scalar> to_dense(const SparseVec& v, std::size_t dim);

// Dense row-major matrix of exact rationals.
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}
  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Scalar& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Matrix transpose() const;
  Matrix operator*(const Matrix& o) const;
  std::vector<Scalar> apply(const std::vector<Scalar>& v) const;
  bool operator==(const Matrix& o) const;
  bool operator!=(const Matrix& o) const { return !(*this == o); }
  bool is_identity() const;

  const std::vector<Scalar>& data() const { return data_; }
  std::vector<Scalar>& data() { return data_; }

 private:
  std::size_t rows_, cols_;
  std::vector<Scalar> data_;
};

// Solves A*X = b exactly; returns any solution when underdetermined, chosen by
// reduced row echelon pivoting with the lowest-index free coordinates set to
// zero. Returns nullopt when the system is inconsistent.
std::optional<Matrix> solve_linear(const Matrix& A, const Matrix& b);

// Sparse flavour of the same solver; rows[i] is row i of A, rhs[i] row i of b.
std::optional<Matrix> solve_linear_sparse(std::size_t n_cols,
                                          std::vector<SparseVec> rows,
                                          std::vector<std::vector<Scalar>> rhs);

std::optional<Matrix> invert(const Matrix& A);
std::size_t rank(const Matrix& A);

// Kernel of A as a matrix whose columns span {x : A x = 0}.
Matrix kernel_basis(const Matrix& A);

}  // namespace reflectum
