#pragma once

#include <memory>

#include "reflectum/doubles.hpp"
#include "reflectum/module.hpp"

namespace reflectum {

// Left H-comodule algebra: delta(a_j) = sum delta(j)[h*dimA + k] e_h (x) a_k.
struct ComoduleAlgebra {
  HopfPtr host;
  AlgebraPtr algebra;
  CoTable coaction;

  // Present when the algebra is a crossed product whose basis factors as
  // left_embed(col j) * right_embed(col d); lets the multiplicativity check
  // run over generators instead of all basis pairs at large dimension.
  struct Factorization {
    Matrix left_embed;   // dim x n_left
    Matrix right_embed;  // dim x n_right
    std::vector<std::pair<std::uint32_t, std::uint32_t>> basis_factors;
  };
  std::shared_ptr<const Factorization> factorization;

  SparseVec coact(const SparseVec& v) const { return coaction.apply(v); }
};

using ComodPtr = std::shared_ptr<const ComoduleAlgebra>;

// A = k with delta(1) = 1_H (x) 1.
ComodPtr trivial_comodule(const HopfPtr& h);
// A = H with delta = Delta.
ComodPtr regular_comodule(const HopfPtr& h);

// Coassociativity, counit law, multiplicativity, unit preservation. The
// multiplicativity pass runs over all basis pairs up to pairwise_limit and
// switches to the (equivalent) generator route above that size when a
// factorization is available.
VerificationReport check_comodule_algebra(const ComoduleAlgebra& ca,
                                          std::uint32_t pairwise_limit = 400);

// Universal K-matrix data: K = sum coeffs(i,j) e_i (x) a_j in H (x) A.
struct KMatrix {
  ComodPtr comod;
  Matrix coeffs;
  Matrix inverse_coeffs;  // may be empty; computed on demand by checks
};

Leg leg_of(const ComodPtr& c);

// Invertibility in H (x) A plus the three K-matrix axioms against the host R.
VerificationReport check_kmatrix(const KMatrix& k, const RMatrix& r);

// K~ = K (v^{-1} (x) 1_A) for a verified ribbon element v.
KMatrix ktilde(const KMatrix& k, const RMatrix& r, const std::vector<Scalar>& v);

// K~23 R21 K~13 R21 = R21 K~13 R21 K~23 in H (x) H (x) A.
VerificationReport check_reflection_equation(const RMatrix& r, const KMatrix& ktil);

// The ribbon-normalized equivalents of the K-matrix axioms, each checked as a
// separate row, including both readings of the coaction identity.
VerificationReport check_k_equivalents(const KMatrix& k, const RMatrix& r,
                                       const std::vector<Scalar>& v);

// X (x) M with a * (x (x) m) = (a_[-1] . x) (x) (a_[0] * m).
Module induced_action(const ComoduleAlgebra& ca, const Module& x, const Module& m);

}  // namespace reflectum
