#pragma once

#include "reflectum/algebra.hpp"

namespace reflectum {

// Finite-dimensional left module: action(i) is the matrix of e_i acting on the
// underlying space, columns indexed by the module basis.
struct Module {
  AlgebraPtr algebra;
  std::uint32_t dim = 0;
  std::vector<Matrix> action;

  Matrix act(const std::vector<Scalar>& x) const;
  Matrix act_sparse(const SparseVec& x) const;
};

// act(1) = id and act(e_i e_j) = act(e_i) act(e_j), exhaustively.
VerificationReport check_module(const Module& m);

Module regular_module(const AlgebraPtr& a);

// X (x) Y with the diagonal action through the coproduct.
Module tensor_module(const HopfPtr& h, const Module& x, const Module& y);

Module trivial_module(const HopfPtr& h);

}  // namespace reflectum
