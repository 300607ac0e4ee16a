#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "reflectum/report.hpp"
#include "reflectum/tensor.hpp"

namespace reflectum {

// Unital associative algebra in a fixed basis: e_i * e_j = sum_k mult(i,j)[k] e_k.
struct Algebra {
  std::uint32_t dim = 0;
  std::string name;
  std::vector<std::string> basis;
  MulTable mult;
  std::vector<Scalar> unit;  // coordinates of 1

  SparseVec unit_sparse() const { return to_sparse(unit); }
  SparseVec multiply(const SparseVec& a, const SparseVec& b) const {
    return mult.multiply(a, b);
  }
};

// Coalgebra data in the same carrier basis.
struct Coalgebra {
  std::uint32_t dim = 0;
  CoTable comult;              // row(k): Delta(e_k), keys i*dim + j
  std::vector<Scalar> counit;  // counit(e_k)
};

struct HopfAlgebra {
  Algebra alg;
  Coalgebra coalg;
  Matrix antipode;      // S(e_j) = sum_i antipode(i,j) e_i
  Matrix antipode_inv;

  std::uint32_t dim() const { return alg.dim; }
  const std::string& name() const { return alg.name; }
};

using HopfPtr = std::shared_ptr<const HopfAlgebra>;

// Aliased views of the algebra living inside a shared Hopf algebra.
AlgebraPtr algebra_of(const HopfPtr& h);
Leg leg_of(const HopfPtr& h);

// Verifies associativity and the unit laws, exhaustively over basis indices.
VerificationReport check_algebra(const Algebra& a);
// Coassociativity and the counit laws.
VerificationReport check_coalgebra(const Coalgebra& c);
// All Hopf axioms: algebra, coalgebra, bialgebra compatibility, antipode
// axiom on both sides, and S S^{-1} = id.
VerificationReport check_hopf(const HopfAlgebra& h);

// Convolution inverse of the identity, solved jointly from the two antipode
// axioms. Returns nullopt when no antipode exists.
std::optional<Matrix> antipode_solve(const Algebra& a, const Coalgebra& c);

// Dual Hopf algebra on the index-matched dual basis.
HopfAlgebra dual_hopf(const HopfAlgebra& h);
HopfAlgebra opposite(const HopfAlgebra& h);
HopfAlgebra coopposite(const HopfAlgebra& h);

// Two-sided inverse in the algebra, via the linear systems x*y = y*x = 1.
std::optional<std::vector<Scalar>> element_inverse(const Algebra& a,
                                                   const std::vector<Scalar>& x);

// Trace-form criterion, valid in characteristic zero: semisimple iff
// G_ij = trace(L_i L_j) is nondegenerate.
bool check_semisimple(const Algebra& a);

// Tensor product algebra (used e.g. to invert elements of H (x) H).
Algebra tensor_algebra(const Algebra& a, const Algebra& b, std::string name);

// Left multiplication operator L_x on the algebra.
Matrix left_mult_operator(const Algebra& a, const std::vector<Scalar>& x);
Matrix right_mult_operator(const Algebra& a, const std::vector<Scalar>& x);

// Applies the full coproduct to a sparse element.
SparseVec comult_apply(const Coalgebra& c, const SparseVec& v);

}  // namespace reflectum
