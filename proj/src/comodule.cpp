#include "reflectum/comodule.hpp"

#include <algorithm>
#include <stdexcept>

namespace reflectum {

namespace {

Witness sparse_witness(std::vector<std::size_t> idx, const SparseVec& lhs,
                       const SparseVec& rhs) {
  SparseVec diff = lhs;
  SparseVec neg;
  for (const auto& [k, v] : rhs) neg.emplace_back(k, -v);
  sparse_axpy(diff, Scalar(1), neg);
  Witness w;
  w.index = std::move(idx);
  for (std::size_t i = 0; i < diff.size() && i < 8; ++i)
    w.discrepancy.emplace_back(diff[i].first, diff[i].second);
  return w;
}

Witness element_witness(std::vector<std::size_t> idx, const MultiLegElement& lhs,
                        const MultiLegElement& rhs) {
  Witness w;
  w.index = std::move(idx);
  std::size_t shown = 0;
  for (std::size_t f = 0; f < lhs.size() && shown < 8; ++f) {
    Scalar d = lhs.coeff(f);
    d -= rhs.coeff(f);
    if (!d.is_zero()) {
      w.discrepancy.emplace_back(f, std::move(d));
      ++shown;
    }
  }
  return w;
}

// delta(x) delta(y) in H (x) A for sparse two-leg vectors keyed h*dimA + k.
SparseVec coaction_product(const HopfAlgebra& h, const Algebra& a, const SparseVec& x,
                           const SparseVec& y) {
  const std::uint32_t da = a.dim;
  SparseVec out;
  for (const auto& [kx, cx] : x) {
    std::uint32_t h1 = kx / da, a1 = kx % da;
    for (const auto& [ky, cy] : y) {
      std::uint32_t h2 = ky / da, a2 = ky % da;
      const SparseVec& rh = h.alg.mult.row(h1, h2);
      if (rh.empty()) continue;
      const SparseVec& ra = a.mult.row(a1, a2);
      if (ra.empty()) continue;
      Scalar c = cx;
      c *= cy;
      for (const auto& [hk, hc] : rh)
        for (const auto& [ak, ac] : ra) {
          Scalar v = c;
          v *= hc;
          v *= ac;
          out.emplace_back(hk * da + ak, std::move(v));
        }
    }
  }
  sparse_sort_combine(out);
  return out;
}

}  // namespace

ComodPtr trivial_comodule(const HopfPtr& h) {
  auto ca = std::make_shared<ComoduleAlgebra>();
  ca->host = h;
  auto a = std::make_shared<Algebra>();
  a->dim = 1;
  a->name = "k";
  a->basis = {"1"};
  a->mult = MulTable(1, 1);
  a->mult.row(0, 0).emplace_back(0, Scalar(1));
  a->unit = {Scalar(1)};
  ca->algebra = a;
  ca->coaction = CoTable(1, h->dim(), 1);
  for (const auto& [i, c] : h->alg.unit_sparse()) ca->coaction.row(0).emplace_back(i, c);
  return ca;
}

ComodPtr regular_comodule(const HopfPtr& h) {
  auto ca = std::make_shared<ComoduleAlgebra>();
  ca->host = h;
  ca->algebra = algebra_of(h);
  ca->coaction = h->coalg.comult;  // same index layout: keys h*dim + k
  return ca;
}

VerificationReport check_comodule_algebra(const ComoduleAlgebra& ca,
                                          std::uint32_t pairwise_limit) {
  VerificationReport rep;
  const HopfAlgebra& h = *ca.host;
  const Algebra& a = *ca.algebra;
  const std::uint32_t nh = h.dim(), da = a.dim;

  // Coassociativity (Delta (x) Id) delta = (Id (x) delta) delta, keys
  // h1*(nh*da) + h2*da + k.
  bool ok = true;
  for (std::uint32_t j = 0; j < da && ok; ++j) {
    SparseVec lhs, rhs;
    for (const auto& [key, c] : ca.coaction.row(j)) {
      std::uint32_t hh = key / da, k = key % da;
      for (const auto& [key2, c2] : h.coalg.comult.row(hh)) {
        Scalar v = c;
        v *= c2;
        lhs.emplace_back(key2 * da + k, std::move(v));
      }
      for (const auto& [key2, c2] : ca.coaction.row(k)) {
        Scalar v = c;
        v *= c2;
        rhs.emplace_back(std::uint32_t(hh) * nh * da + key2, std::move(v));
      }
    }
    sparse_sort_combine(lhs);
    sparse_sort_combine(rhs);
    if (!sparse_equal(lhs, rhs)) {
      rep.fail("coaction coassociativity", sparse_witness({j}, lhs, rhs));
      ok = false;
    }
  }
  if (ok) rep.pass("coaction coassociativity");

  ok = true;
  for (std::uint32_t j = 0; j < da && ok; ++j) {
    SparseVec got, want{{j, Scalar(1)}};
    for (const auto& [key, c] : ca.coaction.row(j)) {
      Scalar v = c;
      v *= h.coalg.counit[key / da];
      if (!v.is_zero()) got.emplace_back(key % da, std::move(v));
    }
    sparse_sort_combine(got);
    if (!sparse_equal(got, want)) {
      rep.fail("coaction counit law", sparse_witness({j}, got, want));
      ok = false;
    }
  }
  if (ok) rep.pass("coaction counit law");

  // Unit: delta(1_A) = 1_H (x) 1_A.
  {
    SparseVec got = ca.coact(a.unit_sparse());
    SparseVec want;
    for (const auto& [i, ci] : h.alg.unit_sparse())
      for (const auto& [j, cj] : a.unit_sparse()) {
        Scalar v = ci;
        v *= cj;
        want.emplace_back(i * da + j, std::move(v));
      }
    sparse_sort_combine(want);
    if (sparse_equal(got, want)) rep.pass("coaction preserves unit");
    else rep.fail("coaction preserves unit", sparse_witness({}, got, want));
  }

  // Multiplicativity delta(xy) = delta(x) delta(y). Over all basis pairs for
  // moderate dimensions; through the crossed-product generators otherwise
  // (exactly equivalent given the associativity checks, not a sampling).
  const bool use_factorization = ca.factorization && da > pairwise_limit;
  if (!use_factorization) {
    ok = true;
    for (std::uint32_t x = 0; x < da && ok; ++x) {
      const SparseVec& dx = ca.coaction.row(x);
      for (std::uint32_t y = 0; y < da; ++y) {
        SparseVec lhs = ca.coact(a.mult.row(x, y));
        SparseVec rhs = coaction_product(h, a, dx, ca.coaction.row(y));
        if (!sparse_equal(lhs, rhs)) {
          rep.fail("coaction multiplicative", sparse_witness({x, y}, lhs, rhs));
          ok = false;
          break;
        }
      }
    }
    if (ok) rep.pass("coaction multiplicative");
  } else {
    const auto& f = *ca.factorization;
    ok = true;
    // Every basis element factors as left(j) * right(d).
    for (std::uint32_t u = 0; u < da && ok; ++u) {
      auto [j, d] = f.basis_factors[u];
      SparseVec l, r;
      for (std::uint32_t i = 0; i < da; ++i) {
        if (!f.left_embed.at(i, j).is_zero()) l.emplace_back(i, f.left_embed.at(i, j));
        if (!f.right_embed.at(i, d).is_zero()) r.emplace_back(i, f.right_embed.at(i, d));
      }
      SparseVec prod = a.mult.multiply(l, r);
      SparseVec want{{u, Scalar(1)}};
      if (!sparse_equal(prod, want)) {
        rep.fail("coaction multiplicative", sparse_witness({u}, prod, want),
                 "generator factorization failed");
        ok = false;
      }
    }
    // delta(g * y) = delta(g) delta(y) for every generator g and basis y.
    auto gen_check = [&](const Matrix& embed, const char* which) {
      for (std::uint32_t g = 0; g < embed.cols() && ok; ++g) {
        SparseVec gv;
        for (std::uint32_t i = 0; i < da; ++i)
          if (!embed.at(i, g).is_zero()) gv.emplace_back(i, embed.at(i, g));
        SparseVec dg = ca.coact(gv);
        for (std::uint32_t y = 0; y < da; ++y) {
          SparseVec ey{{y, Scalar(1)}};
          SparseVec prod = a.mult.multiply(gv, ey);
          SparseVec lhs = ca.coact(prod);
          SparseVec rhs = coaction_product(h, a, dg, ca.coaction.row(y));
          if (!sparse_equal(lhs, rhs)) {
            rep.fail("coaction multiplicative", sparse_witness({g, y}, lhs, rhs), which);
            ok = false;
            break;
          }
        }
      }
    };
    gen_check(f.left_embed, "left generators");
    gen_check(f.right_embed, "right generators");
    if (ok) rep.pass("coaction multiplicative");
  }
  return rep;
}

Leg leg_of(const ComodPtr& c) { return Leg{c->algebra}; }

namespace {

struct KLegs {
  Leg H, A;
  std::vector<Leg> HA;    // (H, A)
  std::vector<Leg> HHA;   // (H, H, A)
};

KLegs legs_for(const KMatrix& k) {
  KLegs l{leg_of(k.comod->host), leg_of(k.comod), {}, {}};
  l.HA = {l.H, l.A};
  l.HHA = {l.H, l.H, l.A};
  return l;
}

}  // namespace

VerificationReport check_kmatrix(const KMatrix& k, const RMatrix& r) {
  VerificationReport rep;
  const ComoduleAlgebra& ca = *k.comod;
  const HopfAlgebra& h = *ca.host;
  const std::uint32_t nh = h.dim(), da = ca.algebra->dim;
  KLegs L = legs_for(k);

  MultiLegElement K = element2(L.H, L.A, k.coeffs);
  MultiLegElement one2 = unit_element(L.HA);

  // Invertibility: use the stored inverse when present, else solve.
  Matrix kinv = k.inverse_coeffs;
  bool have_inv = kinv.rows() == nh && kinv.cols() == da;
  if (!have_inv) {
    auto solved = two_leg_inverse(h.alg, *ca.algebra, k.coeffs);
    if (solved) {
      kinv = *solved;
      have_inv = true;
    }
  }
  if (have_inv) {
    MultiLegElement Ki = element2(L.H, L.A, kinv);
    if (leg_multiply(K, Ki) == one2 && leg_multiply(Ki, K) == one2) {
      rep.pass("K invertible");
    } else {
      rep.fail("K invertible", Witness{}, "stored inverse fails K K^-1 = 1");
      have_inv = false;
    }
  } else {
    rep.fail("K invertible", Witness{}, "no inverse exists");
  }

  MultiLegElement R21 = embed_legs(element2(L.H, L.H, r.coeffs), {1, 0}, L.HHA);
  MultiLegElement R12 = embed_legs(element2(L.H, L.H, r.coeffs), {0, 1}, L.HHA);
  MultiLegElement R21inv = embed_legs(element2(L.H, L.H, r.inverse_coeffs), {1, 0}, L.HHA);
  MultiLegElement K13 = embed_legs(K, {0, 2}, L.HHA);
  MultiLegElement K23 = embed_legs(K, {1, 2}, L.HHA);

  // (Delta (x) Id_A) K = K23 R21 K13 R21^{-1}.
  {
    MultiLegElement lhs = apply_cotable_to_leg(K, 0, h.coalg.comult, L.H, L.H);
    MultiLegElement rhs =
        leg_multiply(leg_multiply(leg_multiply(K23, R21), K13), R21inv);
    if (lhs == rhs) rep.pass("K2");
    else rep.fail("K2", element_witness({}, lhs, rhs));
  }
  // (Id_H (x) delta) K = R21 K13 R12.
  {
    MultiLegElement lhs = apply_cotable_to_leg(K, 1, ca.coaction, L.H, L.A);
    MultiLegElement rhs = leg_multiply(leg_multiply(R21, K13), R12);
    if (lhs == rhs) rep.pass("K3");
    else rep.fail("K3", element_witness({}, lhs, rhs));
  }
  // K delta(a) = delta(a) K for every basis a.
  {
    bool ok = true;
    for (std::uint32_t j = 0; j < da && ok; ++j) {
      MultiLegElement d(L.HA);
      d.set_from_sparse(ca.coaction.row(j));
      MultiLegElement lhs = leg_multiply(K, d);
      MultiLegElement rhs = leg_multiply(d, K);
      if (lhs != rhs) {
        rep.fail("K1", element_witness({j}, lhs, rhs));
        ok = false;
      }
    }
    if (ok) rep.pass("K1");
  }
  return rep;
}

KMatrix ktilde(const KMatrix& k, const RMatrix& r, const std::vector<Scalar>& v) {
  if (!verify_ribbon(*k.comod->host, r, v).all_passed())
    throw std::invalid_argument("RibbonMissing: ktilde requires a verified ribbon element");
  const HopfAlgebra& h = *k.comod->host;
  auto vinv = element_inverse(h.alg, v);
  if (!vinv) throw std::invalid_argument("RibbonMissing: ribbon element not invertible");
  KLegs L = legs_for(k);
  MultiLegElement K = element2(L.H, L.A, k.coeffs);
  MultiLegElement vterm(L.HA);
  {
    SparseVec vs;
    for (const auto& [i, c] : to_sparse(*vinv))
      for (const auto& [j, cj] : k.comod->algebra->unit_sparse()) {
        Scalar s = c;
        s *= cj;
        vs.emplace_back(i * k.comod->algebra->dim + j, std::move(s));
      }
    sparse_sort_combine(vs);
    vterm.set_from_sparse(vs);
  }
  KMatrix out;
  out.comod = k.comod;
  out.coeffs = matrix2(leg_multiply(K, vterm));
  if (k.inverse_coeffs.rows() == k.coeffs.rows()) {
    // (K (v^-1 (x) 1))^-1 = (v (x) 1) K^-1.
    MultiLegElement vt(L.HA);
    SparseVec vs;
    for (const auto& [i, c] : to_sparse(v))
      for (const auto& [j, cj] : k.comod->algebra->unit_sparse()) {
        Scalar s = c;
        s *= cj;
        vs.emplace_back(i * k.comod->algebra->dim + j, std::move(s));
      }
    sparse_sort_combine(vs);
    vt.set_from_sparse(vs);
    out.inverse_coeffs = matrix2(leg_multiply(vt, element2(L.H, L.A, k.inverse_coeffs)));
  }
  return out;
}

VerificationReport check_reflection_equation(const RMatrix& r, const KMatrix& ktil) {
  VerificationReport rep;
  KLegs L = legs_for(ktil);
  MultiLegElement R21 = embed_legs(element2(L.H, L.H, r.coeffs), {1, 0}, L.HHA);
  MultiLegElement R12 = embed_legs(element2(L.H, L.H, r.coeffs), {0, 1}, L.HHA);
  MultiLegElement K13 = embed_legs(element2(L.H, L.A, ktil.coeffs), {0, 2}, L.HHA);
  MultiLegElement K23 = embed_legs(element2(L.H, L.A, ktil.coeffs), {1, 2}, L.HHA);
  // Both placements of the trailing R factor are recorded: the all-R21 form
  // as displayed, and the R12 form that follows from K2/K3/K1 directly (they
  // agree whenever R21 = R12).
  {
    MultiLegElement lhs = leg_multiply(leg_multiply(leg_multiply(K23, R21), K13), R21);
    MultiLegElement rhs = leg_multiply(leg_multiply(leg_multiply(R21, K13), R21), K23);
    if (lhs == rhs) rep.pass("reflection-eq");
    else rep.fail("reflection-eq", element_witness({}, lhs, rhs), "all-R21 form");
  }
  {
    MultiLegElement lhs = leg_multiply(leg_multiply(leg_multiply(K23, R21), K13), R12);
    MultiLegElement rhs = leg_multiply(leg_multiply(leg_multiply(R21, K13), R12), K23);
    if (lhs == rhs) rep.pass("reflection-eq-R12");
    else rep.fail("reflection-eq-R12", element_witness({}, lhs, rhs), "trailing R12 form");
  }
  return rep;
}

VerificationReport check_k_equivalents(const KMatrix& k, const RMatrix& r,
                                       const std::vector<Scalar>& v) {
  VerificationReport rep;
  KMatrix kt = ktilde(k, r, v);
  const ComoduleAlgebra& ca = *k.comod;
  const HopfAlgebra& h = *ca.host;
  KLegs L = legs_for(k);

  MultiLegElement Kt = element2(L.H, L.A, kt.coeffs);
  MultiLegElement R21 = embed_legs(element2(L.H, L.H, r.coeffs), {1, 0}, L.HHA);
  MultiLegElement R12 = embed_legs(element2(L.H, L.H, r.coeffs), {0, 1}, L.HHA);
  MultiLegElement Kt13 = embed_legs(Kt, {0, 2}, L.HHA);
  MultiLegElement Kt23 = embed_legs(Kt, {1, 2}, L.HHA);

  {
    MultiLegElement lhs = apply_cotable_to_leg(Kt, 0, h.coalg.comult, L.H, L.H);
    MultiLegElement rhs = leg_multiply(leg_multiply(leg_multiply(Kt23, R21), Kt13), R21);
    if (lhs == rhs) rep.pass("K2a");
    else rep.fail("K2a", element_witness({}, lhs, rhs));
  }
  {
    MultiLegElement lhs = apply_cotable_to_leg(Kt, 1, ca.coaction, L.H, L.A);
    MultiLegElement rhs = leg_multiply(leg_multiply(R21, Kt13), R21);
    if (lhs == rhs) rep.pass("K3a");
    else rep.fail("K3a", element_witness({}, lhs, rhs), "as stated, trailing R21");
    MultiLegElement rhs_alt = leg_multiply(leg_multiply(R21, Kt13), R12);
    if (lhs == rhs_alt) rep.pass("K3a-R12-variant");
    else rep.fail("K3a-R12-variant", element_witness({}, lhs, rhs_alt), "trailing R12 reading");
  }
  {
    bool ok = true;
    for (std::uint32_t j = 0; j < ca.algebra->dim && ok; ++j) {
      MultiLegElement d(L.HA);
      d.set_from_sparse(ca.coaction.row(j));
      if (leg_multiply(Kt, d) != leg_multiply(d, Kt)) {
        Witness w;
        w.index = {j};
        rep.fail("K1a", std::move(w));
        ok = false;
      }
    }
    if (ok) rep.pass("K1a");
  }
  {
    MultiLegElement lhs = apply_cotable_to_leg(Kt, 0, h.coalg.comult, L.H, L.H);
    MultiLegElement rhs = leg_multiply(leg_multiply(leg_multiply(R21, Kt13), R21), Kt23);
    if (lhs == rhs) rep.pass("K2aa");
    else rep.fail("K2aa", element_witness({}, lhs, rhs));
  }
  return rep;
}

Module induced_action(const ComoduleAlgebra& ca, const Module& x, const Module& m) {
  if (x.algebra.get() != &ca.host->alg)
    throw std::invalid_argument("ModuleMismatch: X must be a module over the host Hopf algebra");
  if (m.algebra.get() != ca.algebra.get())
    throw std::invalid_argument("ModuleMismatch: M must be a module over the comodule algebra");
  Module out;
  out.algebra = ca.algebra;
  out.dim = x.dim * m.dim;
  const std::uint32_t da = ca.algebra->dim;
  out.action.reserve(da);
  for (std::uint32_t j = 0; j < da; ++j) {
    Matrix mj(out.dim, out.dim);
    for (const auto& [key, c] : ca.coaction.row(j)) {
      std::uint32_t hh = key / da, k = key % da;
      const Matrix& ax = x.action[hh];
      const Matrix& am = m.action[k];
      for (std::uint32_t r1 = 0; r1 < x.dim; ++r1)
        for (std::uint32_t c1 = 0; c1 < x.dim; ++c1) {
          if (ax.at(r1, c1).is_zero()) continue;
          Scalar f = c;
          f *= ax.at(r1, c1);
          for (std::uint32_t r2 = 0; r2 < m.dim; ++r2)
            for (std::uint32_t c2 = 0; c2 < m.dim; ++c2) {
              if (am.at(r2, c2).is_zero()) continue;
              mj.at(std::size_t(r1) * m.dim + r2, std::size_t(c1) * m.dim + c2)
                  .add_mul(f, am.at(r2, c2));
            }
        }
    }
    out.action.push_back(std::move(mj));
  }
  return out;
}

}  // namespace reflectum
