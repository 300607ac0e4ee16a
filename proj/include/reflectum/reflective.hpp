#pragma once

#include "reflectum/comodule.hpp"

namespace reflectum {

// Thrown when an eagerly verified construction fails its own axioms.
struct VerificationFailure : std::runtime_error {
  explicit VerificationFailure(const std::string& what, VerificationReport rep)
      : std::runtime_error(what), report(std::move(rep)) {}
  VerificationReport report;
};

// H as a vector space with the twisted coproduct and the adjoint-style
// H-action; a left H-module coalgebra.
struct TransmutedCoalgebra {
  HopfPtr host;
  Matrix r_coeffs, r_inv_coeffs;
  CoTable comult_hat;              // keys i*n + j
  std::vector<Scalar> counit_hat;
  MulTable haction;                // row(l, h) = e_l -> e_h
};

using TransmutedPtr = std::shared_ptr<const TransmutedCoalgebra>;

VerificationReport check_transmuted(const TransmutedCoalgebra& t);
// Builds and eagerly verifies the transmuted coalgebra; throws
// VerificationFailure when an axiom fails.
TransmutedPtr transmute(const HopfPtr& h, const RMatrix& r);

// The linear maps with twisted_comult = omega o comult, as dim^2 x dim^2 matrices.
Matrix omega(const HopfAlgebra& h, const RMatrix& r);
Matrix omega_inverse(const HopfAlgebra& h, const RMatrix& r);

// Dual of the transmuted coalgebra: an algebra on the dual basis carrying a
// right H-module algebra structure.
struct CovariantizedAlgebra {
  HopfPtr host;
  AlgebraPtr algebra;       // multiplication from the braided harpoon formula
  MulTable right_action;    // row(d, l) = xi_d <- e_l
};

VerificationReport check_covariantized(const CovariantizedAlgebra& c,
                                       const TransmutedCoalgebra& t);
CovariantizedAlgebra covariantized_dual(const TransmutedCoalgebra& t);

// B x| (C*)^op on the basis b_j (x) xi_d with the structure transport
// (b xi)(b' xi') = b b'_[0] (x) mult_op(xi <- b'_[-1], xi').
struct CrossedProduct {
  AlgebraPtr algebra;
  Matrix embed_base;   // B -> product
  Matrix embed_dual;   // C* -> product
  std::vector<std::pair<std::uint32_t, std::uint32_t>> basis_factors;
};

CrossedProduct crossed_product(const HopfPtr& l, const ComoduleAlgebra& b,
                               const CovariantizedAlgebra& cstar, bool check_assoc);

struct ReflectiveAlgebra {
  HopfPtr host;
  RMatrix r;
  ComodPtr base;             // A
  TransmutedPtr hat;
  CovariantizedAlgebra dual;
  AlgebraPtr algebra;        // the crossed product A x| (H-hat^*)^op
  Matrix embed_base;
  Matrix embed_dual;
  KMatrix k_ref;
  ComodPtr delta_ref;        // H-coaction making the product a comodule algebra
  // Coaction restricted to the two generator families, keys h*dim + u.
  std::vector<SparseVec> delta_base_rows;
  std::vector<SparseVec> delta_dual_rows;
  VerificationReport report;
};

// Builds R_H(A) with its canonical K-matrix and coaction, eagerly verifying
// the comodule-algebra and K-matrix axioms; throws VerificationFailure when a
// check fails.
ReflectiveAlgebra reflective_algebra(const HopfPtr& h, const RMatrix& r, const ComodPtr& a);

struct KappaResult {
  Matrix map;  // dim(Q) x dim(H)
  VerificationReport report;
};

// The universal morphism out of R_H(k): xi -> sum <xi, g_i> p_i, verified to
// be an algebra map, a comodule map, and a K-matrix intertwiner.
KappaResult kappa(const HopfPtr& h, const RMatrix& r, const ComodPtr& q, const KMatrix& k);

// Coaction of Drin(H) on R_H(A); eagerly verified comodule algebra.
ComodPtr drin_coaction_ref(const ReflectiveAlgebra& ra, const DrinfeldDouble& dd);

// Closed forms for H = Drin(kG), A = k: the product, coaction, and K-matrix of
// R_H(k) written directly in group terms. Used only as an independent oracle.
struct DrinGroupClosedForm {
  MulTable mult;      // on the basis x delta_y at flat index x*|G| + y
  CoTable coaction;   // over Drin(kG), keys drin_index * dim + basis
  Matrix kmatrix;     // dim(Drin) x dim
};

DrinGroupClosedForm drin_group_closed_form(const FiniteGroup& g);

}  // namespace reflectum
