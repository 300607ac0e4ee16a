#pragma once

#include <optional>

#include "reflectum/algebra.hpp"
#include "reflectum/group.hpp"

namespace reflectum {

// Universal R-matrix data: R = sum_{i,j} coeffs(i,j) e_i (x) e_j in H (x) H.
struct RMatrix {
  HopfPtr host;
  Matrix coeffs;
  Matrix inverse_coeffs;
};

// Two-leg element helpers.
MultiLegElement element2(Leg l1, Leg l2, const Matrix& coeffs);
Matrix matrix2(const MultiLegElement& x);

// Inverse of a two-leg element, solved from both one-sided systems without
// materializing the product algebra.
std::optional<Matrix> two_leg_inverse(const Algebra& a1, const Algebra& a2,
                                      const Matrix& coeffs);

struct DrinfeldDouble {
  HopfPtr base;       // the input H
  HopfPtr hopf;       // H^* (x) H with the double cross relations
  RMatrix r;
  Matrix embed_dual;  // H^* -> Drin(H), xi_d -> xi_d (x) 1
  Matrix embed_h;     // H   -> Drin(H), h_e  -> eps (x) h_e
};

// Drinfeld double of a finite-dimensional Hopf algebra, with the canonical
// quantum R-matrix sum_d (1 (x) h_d) (x) (xi_d (x) 1).
DrinfeldDouble drinfeld_double(const HopfPtr& h);

// Standard actions of H on H^*: <h -> xi, h'> = <xi, h'h>, <xi <- h, h'> = <xi, hh'>.
std::vector<Scalar> harpoon_left(const HopfAlgebra& h, const std::vector<Scalar>& hv,
                                 const std::vector<Scalar>& xi);
std::vector<Scalar> harpoon_right(const HopfAlgebra& h, const std::vector<Scalar>& xi,
                                  const std::vector<Scalar>& hv);

// Quasitriangularity: invertibility, the three defining axioms, and the
// derived counit/antipode identities as consistency rows.
VerificationReport check_quasitriangular(const HopfAlgebra& h, const RMatrix& r);

// Quantum Yang-Baxter equation R12 R13 R23 = R23 R13 R12 in H (x) H (x) H.
VerificationReport check_qybe(const HopfAlgebra& h, const RMatrix& r);

// u = sum_i S(t_i) s_i.
std::vector<Scalar> drinfeld_element(const HopfAlgebra& h, const RMatrix& r);

// v must be central, invertible, S-fixed, with Delta(v) = (v (x) v)(R21 R12)^{-1}.
VerificationReport verify_ribbon(const HopfAlgebra& h, const RMatrix& r,
                                 const std::vector<Scalar>& v);

// Columns span the center {x : xy = yx for all y}.
Matrix center_basis(const Algebra& a);

// Best-effort ribbon search: the Drinfeld element and its variants first, then
// a center search solving the quadratic coproduct condition through rational
// eigenvalues of anchored slices. Returns nullopt when nothing verifies.
// skip_candidates forces the center search (used to exercise that path).
std::optional<std::vector<Scalar>> find_ribbon(const HopfAlgebra& h, const RMatrix& r,
                                               bool skip_candidates = false);

}  // namespace reflectum
