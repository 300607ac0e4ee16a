#include "reflectum/module.hpp"

#include <stdexcept>

namespace reflectum {

Matrix Module::act(const std::vector<Scalar>& x) const {
  Matrix m(dim, dim);
  for (std::uint32_t i = 0; i < algebra->dim; ++i) {
    if (x[i].is_zero()) continue;
    for (std::uint32_t r = 0; r < dim; ++r)
      for (std::uint32_t c = 0; c < dim; ++c) m.at(r, c).add_mul(x[i], action[i].at(r, c));
  }
  return m;
}

Matrix Module::act_sparse(const SparseVec& x) const {
  Matrix m(dim, dim);
  for (const auto& [i, ci] : x)
    for (std::uint32_t r = 0; r < dim; ++r)
      for (std::uint32_t c = 0; c < dim; ++c) m.at(r, c).add_mul(ci, action[i].at(r, c));
  return m;
}

VerificationReport check_module(const Module& m) {
  VerificationReport rep;
  const std::uint32_t n = m.algebra->dim;
  if (m.act_sparse(m.algebra->unit_sparse()).is_identity()) {
    rep.pass("module: unit acts as identity");
  } else {
    rep.fail("module: unit acts as identity", Witness{});
  }
  bool ok = true;
  for (std::uint32_t i = 0; i < n && ok; ++i)
    for (std::uint32_t j = 0; j < n; ++j) {
      Matrix lhs = m.act_sparse(m.algebra->mult.row(i, j));
      Matrix rhs = m.action[i] * m.action[j];
      if (lhs != rhs) {
        Witness w;
        w.index = {i, j};
        rep.fail("module: action is multiplicative", std::move(w));
        ok = false;
        break;
      }
    }
  if (ok) rep.pass("module: action is multiplicative");
  return rep;
}

Module regular_module(const AlgebraPtr& a) {
  Module m;
  m.algebra = a;
  m.dim = a->dim;
  m.action.reserve(a->dim);
  for (std::uint32_t i = 0; i < a->dim; ++i) {
    Matrix mi(a->dim, a->dim);
    for (std::uint32_t j = 0; j < a->dim; ++j)
      for (const auto& [k, c] : a->mult.row(i, j)) mi.at(k, j) = c;
    m.action.push_back(std::move(mi));
  }
  return m;
}

Module tensor_module(const HopfPtr& h, const Module& x, const Module& y) {
  if (x.algebra.get() != &h->alg || y.algebra.get() != &h->alg)
    throw std::invalid_argument("ModuleMismatch: tensor_module requires modules over the same Hopf algebra");
  Module m;
  m.algebra = x.algebra;
  m.dim = x.dim * y.dim;
  const std::uint32_t n = h->dim();
  m.action.reserve(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    Matrix mi(m.dim, m.dim);
    for (const auto& [key, c] : h->coalg.comult.row(i)) {
      std::uint32_t p = key / n, q = key % n;
      const Matrix& ap = x.action[p];
      const Matrix& aq = y.action[q];
      for (std::uint32_t r1 = 0; r1 < x.dim; ++r1)
        for (std::uint32_t c1 = 0; c1 < x.dim; ++c1) {
          if (ap.at(r1, c1).is_zero()) continue;
          Scalar f = c;
          f *= ap.at(r1, c1);
          for (std::uint32_t r2 = 0; r2 < y.dim; ++r2)
            for (std::uint32_t c2 = 0; c2 < y.dim; ++c2) {
              if (aq.at(r2, c2).is_zero()) continue;
              mi.at(std::size_t(r1) * y.dim + r2, std::size_t(c1) * y.dim + c2)
                  .add_mul(f, aq.at(r2, c2));
            }
        }
    }
    m.action.push_back(std::move(mi));
  }
  return m;
}

Module trivial_module(const HopfPtr& h) {
  Module m;
  m.algebra = algebra_of(h);
  m.dim = 1;
  m.action.reserve(h->dim());
  for (std::uint32_t i = 0; i < h->dim(); ++i) {
    Matrix mi(1, 1);
    mi.at(0, 0) = h->coalg.counit[i];
    m.action.push_back(std::move(mi));
  }
  return m;
}

}  // namespace reflectum
