#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "reflectum/linalg.hpp"

namespace reflectum {

struct Algebra;

// Product structure constants: row(i,j) is the sparse expansion of e_i * e_j.
// Also reused for module-style actions indexed by two bases.
class MulTable {
 public:
  MulTable() : dim_i_(0), dim_j_(0) {}
  MulTable(std::uint32_t dim_i, std::uint32_t dim_j)
      : dim_i_(dim_i), dim_j_(dim_j), rows_(std::size_t(dim_i) * dim_j) {}

  std::uint32_t dim_i() const { return dim_i_; }
  std::uint32_t dim_j() const { return dim_j_; }
  const SparseVec& row(std::uint32_t i, std::uint32_t j) const {
    return rows_[std::size_t(i) * dim_j_ + j];
  }
  SparseVec& row(std::uint32_t i, std::uint32_t j) {
    return rows_[std::size_t(i) * dim_j_ + j];
  }
  bool operator==(const MulTable& o) const {
    return dim_i_ == o.dim_i_ && dim_j_ == o.dim_j_ && rows_size_equal(o);
  }

  // e_i * v for a sparse vector v in the j-index space.
  SparseVec left_apply(std::uint32_t i, const SparseVec& v) const;
  // Product of two sparse vectors through the table.
  SparseVec multiply(const SparseVec& a, const SparseVec& b) const;

 private:
  bool rows_size_equal(const MulTable& o) const {
    for (std::size_t k = 0; k < rows_.size(); ++k)
      if (!sparse_equal(rows_[k], o.rows_[k])) return false;
    return true;
  }
  std::uint32_t dim_i_, dim_j_;
  std::vector<SparseVec> rows_;
};

// Coproduct-style structure constants: row(k) expands basis element k into the
// tensor square (or into H (x) A for coactions), with flat key i*out2 + j.
class CoTable {
 public:
  CoTable() : dim_(0), out1_(0), out2_(0) {}
  CoTable(std::uint32_t dim, std::uint32_t out1, std::uint32_t out2)
      : dim_(dim), out1_(out1), out2_(out2), rows_(dim) {}

  std::uint32_t dim() const { return dim_; }
  std::uint32_t out1() const { return out1_; }
  std::uint32_t out2() const { return out2_; }
  const SparseVec& row(std::uint32_t k) const { return rows_[k]; }
  SparseVec& row(std::uint32_t k) { return rows_[k]; }
  SparseVec apply(const SparseVec& v) const;

  bool operator==(const CoTable& o) const {
    if (dim_ != o.dim_ || out1_ != o.out1_ || out2_ != o.out2_) return false;
    for (std::uint32_t k = 0; k < dim_; ++k)
      if (!sparse_equal(rows_[k], o.rows_[k])) return false;
    return true;
  }

 private:
  std::uint32_t dim_, out1_, out2_;
  std::vector<SparseVec> rows_;
};

using AlgebraPtr = std::shared_ptr<const Algebra>;

// One tensor factor, tagged by the algebra that owns it.
struct Leg {
  AlgebraPtr alg;
  std::uint32_t dim() const;
  bool same_tag(const Leg& o) const { return alg.get() == o.alg.get(); }
};

// Dense element of a tensor product of algebra underlying spaces, stored
// row-major with leg 0 slowest.
class MultiLegElement {
 public:
  MultiLegElement() = default;
  explicit MultiLegElement(std::vector<Leg> legs);

  const std::vector<Leg>& legs() const { return legs_; }
  std::size_t size() const { return coeff_.size(); }
  Scalar& coeff(std::size_t flat) { return coeff_[flat]; }
  const Scalar& coeff(std::size_t flat) const { return coeff_[flat]; }
  const std::vector<Scalar>& coeffs() const { return coeff_; }

  std::size_t flat_index(const std::vector<std::uint32_t>& idx) const;
  std::vector<std::uint32_t> unflatten(std::size_t flat) const;

  SparseVec nonzeros() const;
  void set_from_sparse(const SparseVec& v);

  bool operator==(const MultiLegElement& o) const;
  bool operator!=(const MultiLegElement& o) const { return !(*this == o); }
  bool is_zero() const;

  MultiLegElement& operator+=(const MultiLegElement& o);
  MultiLegElement& operator-=(const MultiLegElement& o);
  MultiLegElement scaled(const Scalar& c) const;

 private:
  std::vector<Leg> legs_;
  std::vector<std::size_t> strides_;
  std::vector<Scalar> coeff_;
};

// Unit element 1 (x) ... (x) 1 of the given legs.
MultiLegElement unit_element(const std::vector<Leg>& legs);

// Componentwise product using each leg's algebra multiplication. Throws
// LegMismatch (std::invalid_argument) when the leg lists differ.
MultiLegElement leg_multiply(const MultiLegElement& x, const MultiLegElement& y);

// Places x at the stated positions of target_legs, units elsewhere.
MultiLegElement embed_legs(const MultiLegElement& x,
                           const std::vector<std::uint32_t>& positions,
                           const std::vector<Leg>& target_legs);

// Linear map applied to one tensor factor: plain matrix, an expansion of one
// leg into two (comultiplication / coaction), or a covector deleting the leg.
MultiLegElement apply_matrix_to_leg(const MultiLegElement& x, std::uint32_t leg,
                                    const Matrix& f, Leg out_leg);
MultiLegElement apply_cotable_to_leg(const MultiLegElement& x, std::uint32_t leg,
                                     const CoTable& f, Leg out1, Leg out2);
MultiLegElement apply_covector_to_leg(const MultiLegElement& x, std::uint32_t leg,
                                      const std::vector<Scalar>& f);

// Product of sparse vectors in a two-factor tensor of algebras, keys
// i*dim2 + j with i multiplied through m1 and j through m2.
SparseVec two_leg_sparse_multiply(const MulTable& m1, const MulTable& m2,
                                  std::uint32_t dim2, const SparseVec& x,
                                  const SparseVec& y);

struct LinMapOnLeg {
  enum class Kind { MatrixMap, Expand, Delete } kind;
  Matrix matrix;        // MatrixMap
  Leg matrix_out;       // MatrixMap
  CoTable cotable;      // Expand
  Leg out1, out2;       // Expand
  std::vector<Scalar> covector;  // Delete
};

MultiLegElement apply_map_to_leg(const MultiLegElement& x, std::uint32_t leg,
                                 const LinMapOnLeg& f);

}  // namespace reflectum
