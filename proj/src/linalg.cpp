#include "reflectum/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace reflectum {

void sparse_sort_combine(SparseVec& v) {
  std::sort(v.begin(), v.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  SparseVec out;
  out.reserve(v.size());
  for (auto& e : v) {
    if (!out.empty() && out.back().first == e.first) {
      out.back().second += e.second;
    } else {
      out.push_back(std::move(e));
    }
  }
  out.erase(std::remove_if(out.begin(), out.end(),
                           [](const auto& e) { return e.second.is_zero(); }),
            out.end());
  v = std::move(out);
}

void sparse_axpy(SparseVec& dst, const Scalar& c, const SparseVec& src) {
  if (c.is_zero() || src.empty()) return;
  SparseVec out;
  out.reserve(dst.size() + src.size());
  std::size_t i = 0, j = 0;
  while (i < dst.size() || j < src.size()) {
    if (j == src.size() || (i < dst.size() && dst[i].first < src[j].first)) {
      out.push_back(std::move(dst[i++]));
    } else if (i == dst.size() || src[j].first < dst[i].first) {
      Scalar s = src[j].second;
      s *= c;
      if (!s.is_zero()) out.emplace_back(src[j].first, std::move(s));
      ++j;
    } else {
      Scalar s = std::move(dst[i].second);
      s.add_mul(c, src[j].second);
      if (!s.is_zero()) out.emplace_back(dst[i].first, std::move(s));
      ++i;
      ++j;
    }
  }
  dst = std::move(out);
}

SparseVec sparse_scale(const SparseVec& v, const Scalar& c) {
  SparseVec out;
  if (c.is_zero()) return out;
  out.reserve(v.size());
  for (const auto& e : v) {
    Scalar s = e.second;
    s *= c;
    if (!s.is_zero()) out.emplace_back(e.first, std::move(s));
  }
  return out;
}

bool sparse_equal(const SparseVec& a, const SparseVec& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].first != b[i].first || a[i].second != b[i].second) return false;
  return true;
}

SparseVec to_sparse(const std::vector<Scalar>& dense) {
  SparseVec out;
  for (std::size_t i = 0; i < dense.size(); ++i)
    if (!dense[i].is_zero()) out.emplace_back(std::uint32_t(i), dense[i]);
  return out;
}

std::vector<Scalar> to_dense(const SparseVec& v, std::size_t dim) {
  std::vector<Scalar> out(dim);
  for (const auto& e : v) out[e.first] = e.second;
  return out;
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Scalar(1);
  return m;
}

Matrix Matrix::transpose() const {
  Matrix m(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) m.at(c, r) = at(r, c);
  return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("Matrix: dimension mismatch in product");
  Matrix m(rows_, o.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Scalar& a = at(r, k);
      if (a.is_zero()) continue;
      for (std::size_t c = 0; c < o.cols_; ++c) {
        m.at(r, c).add_mul(a, o.at(k, c));
      }
    }
  }
  return m;
}

std::vector<Scalar> Matrix::apply(const std::vector<Scalar>& v) const {
  if (v.size() != cols_) throw std::invalid_argument("Matrix: dimension mismatch in apply");
  std::vector<Scalar> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out[r].add_mul(at(r, c), v[c]);
  return out;
}

bool Matrix::operator==(const Matrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

bool Matrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) {
      const Scalar& s = at(r, c);
      if (r == c ? !s.is_one() : !s.is_zero()) return false;
    }
  return true;
}

namespace {

struct Rref {
  std::vector<SparseVec> rows;               // echelon rows of A
  std::vector<std::vector<Scalar>> rhs;      // matching right-hand sides
  std::vector<std::uint32_t> pivot_col;      // per echelon row
  bool consistent = true;
};

// Reduced row echelon form with deterministic pivoting: columns are processed
// left to right and the pivot is the first remaining row with a nonzero entry
// in the column. Pivot rows keep participating in later eliminations so the
// result is fully reduced.
Rref rref_solve(std::size_t n_cols, std::vector<SparseVec>& rows,
                std::vector<std::vector<Scalar>>& rhs) {
  Rref out;
  std::size_t n_rows = rows.size();
  std::vector<bool> used(n_rows, false);
  std::vector<std::size_t> pivot_row_of;
  for (std::uint32_t col = 0; col < n_cols; ++col) {
    std::size_t pivot = n_rows;
    for (std::size_t r = 0; r < n_rows; ++r) {
      if (used[r] || rows[r].empty()) continue;
      if (rows[r].front().first == col) {
        pivot = r;
        break;
      }
    }
    if (pivot == n_rows) continue;
    used[pivot] = true;
    Scalar inv = rows[pivot].front().second.inverse();
    rows[pivot] = sparse_scale(rows[pivot], inv);
    for (auto& s : rhs[pivot]) s *= inv;
    for (std::size_t r = 0; r < n_rows; ++r) {
      if (r == pivot || rows[r].empty()) continue;
      auto it = std::lower_bound(rows[r].begin(), rows[r].end(), col,
                                 [](const auto& e, std::uint32_t c) { return e.first < c; });
      if (it == rows[r].end() || it->first != col) continue;
      Scalar f = -it->second;
      sparse_axpy(rows[r], f, rows[pivot]);
      for (std::size_t k = 0; k < rhs[r].size(); ++k) rhs[r][k].add_mul(f, rhs[pivot][k]);
    }
    out.pivot_col.push_back(col);
    pivot_row_of.push_back(pivot);
  }
  for (std::size_t i = 0; i < pivot_row_of.size(); ++i) {
    out.rows.push_back(std::move(rows[pivot_row_of[i]]));
    out.rhs.push_back(std::move(rhs[pivot_row_of[i]]));
    rows[pivot_row_of[i]].clear();
  }
  for (std::size_t r = 0; r < n_rows; ++r) {
    if (used[r]) continue;
    bool zero_row = rows[r].empty();
    bool zero_rhs = true;
    for (const auto& s : rhs[r])
      if (!s.is_zero()) zero_rhs = false;
    if (zero_row && !zero_rhs) out.consistent = false;
  }
  return out;
}

}  // namespace

std::optional<Matrix> solve_linear_sparse(std::size_t n_cols,
                                          std::vector<SparseVec> rows,
                                          std::vector<std::vector<Scalar>> rhs) {
  std::size_t n_rhs = rhs.empty() ? 0 : rhs[0].size();
  Rref rr = rref_solve(n_cols, rows, rhs);
  if (!rr.consistent) return std::nullopt;
  Matrix x(n_cols, n_rhs);
  // Free coordinates stay zero, so each pivot coordinate is just the reduced
  // right-hand side minus contributions of free columns (all zero).
  for (std::size_t r = 0; r < rr.rows.size(); ++r) {
    for (std::size_t k = 0; k < n_rhs; ++k) x.at(rr.pivot_col[r], k) = rr.rhs[r][k];
  }
  return x;
}

std::optional<Matrix> solve_linear(const Matrix& A, const Matrix& b) {
  if (A.rows() != b.rows()) throw std::invalid_argument("solve_linear: row mismatch");
  std::vector<SparseVec> rows(A.rows());
  std::vector<std::vector<Scalar>> rhs(A.rows());
  for (std::size_t r = 0; r < A.rows(); ++r) {
    for (std::size_t c = 0; c < A.cols(); ++c)
      if (!A.at(r, c).is_zero()) rows[r].emplace_back(std::uint32_t(c), A.at(r, c));
    rhs[r].resize(b.cols());
    for (std::size_t c = 0; c < b.cols(); ++c) rhs[r][c] = b.at(r, c);
  }
  return solve_linear_sparse(A.cols(), std::move(rows), std::move(rhs));
}

std::optional<Matrix> invert(const Matrix& A) {
  if (A.rows() != A.cols()) return std::nullopt;
  auto x = solve_linear(A, Matrix::identity(A.rows()));
  if (!x) return std::nullopt;
  // A singular square system can still be consistent for some right-hand
  // sides; confirm we actually produced an inverse.
  if (!((*x) * A).is_identity() || !(A * (*x)).is_identity()) return std::nullopt;
  return x;
}

std::size_t rank(const Matrix& A) {
  std::vector<SparseVec> rows(A.rows());
  std::vector<std::vector<Scalar>> rhs(A.rows());
  for (std::size_t r = 0; r < A.rows(); ++r)
    for (std::size_t c = 0; c < A.cols(); ++c)
      if (!A.at(r, c).is_zero()) rows[r].emplace_back(std::uint32_t(c), A.at(r, c));
  Rref rr = rref_solve(A.cols(), rows, rhs);
  return rr.rows.size();
}

Matrix kernel_basis(const Matrix& A) {
  std::vector<SparseVec> rows(A.rows());
  std::vector<std::vector<Scalar>> rhs(A.rows());
  for (std::size_t r = 0; r < A.rows(); ++r)
    for (std::size_t c = 0; c < A.cols(); ++c)
      if (!A.at(r, c).is_zero()) rows[r].emplace_back(std::uint32_t(c), A.at(r, c));
  Rref rr = rref_solve(A.cols(), rows, rhs);
  std::vector<bool> is_pivot(A.cols(), false);
  for (auto c : rr.pivot_col) is_pivot[c] = true;
  std::vector<std::uint32_t> free_cols;
  for (std::uint32_t c = 0; c < A.cols(); ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  Matrix K(A.cols(), free_cols.size());
  for (std::size_t j = 0; j < free_cols.size(); ++j) {
    std::uint32_t fc = free_cols[j];
    K.at(fc, j) = Scalar(1);
    for (std::size_t r = 0; r < rr.rows.size(); ++r) {
      auto it = std::lower_bound(rr.rows[r].begin(), rr.rows[r].end(), fc,
                                 [](const auto& e, std::uint32_t c) { return e.first < c; });
      if (it != rr.rows[r].end() && it->first == fc) K.at(rr.pivot_col[r], j) = -it->second;
    }
  }
  return K;
}

}  // namespace reflectum
