#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "reflectum/representations.hpp"

using namespace reflectum;

namespace {

HopfPtr kg(const FiniteGroup& g) { return std::make_shared<HopfAlgebra>(group_algebra(g)); }

RMatrix trivial_r(const HopfPtr& h) {
  RMatrix r;
  r.host = h;
  const std::uint32_t n = h->dim();
  r.coeffs = Matrix(n, n);
  MultiLegElement one = unit_element({leg_of(h), leg_of(h)});
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j) r.coeffs.at(i, j) = one.coeff(std::size_t(i) * n + j);
  r.inverse_coeffs = r.coeffs;
  return r;
}

std::mt19937_64 rng(424242);

Matrix random_invertible(std::uint32_t n) {
  std::uniform_int_distribution<long long> d(-3, 3);
  while (true) {
    Matrix p(n, n);
    for (std::uint32_t i = 0; i < n; ++i)
      for (std::uint32_t j = 0; j < n; ++j) p.at(i, j) = Scalar(d(rng));
    if (invert(p)) return p;
  }
}

Module twist(const Module& m, const Matrix& p) {
  Matrix pinv = *invert(p);
  Module out = m;
  for (auto& a : out.action) a = p * a * pinv;
  return out;
}

}  // namespace

TEST_CASE("regular and tensor modules satisfy the module axioms") {
  auto h = kg(cyclic_group(2));
  Module reg = regular_module(algebra_of(h));
  CHECK(check_module(reg).all_passed());
  CHECK(reg.action[1].at(0, 1) == Scalar(1));  // g permutes the basis
  Module t = trivial_module(h);
  Module tt = tensor_module(h, t, t);
  CHECK(check_module(tt).all_passed());
  CHECK(tt.action[0].is_identity());
  auto dd = drinfeld_double(h);
  Module r2 = regular_module(algebra_of(dd.hopf));
  CHECK(check_module(tensor_module(dd.hopf, r2, r2)).all_passed());
}

TEST_CASE("the braiding from R = 1 (x) 1 is the flip") {
  auto h = kg(cyclic_group(2));
  RMatrix r = trivial_r(h);
  Module reg = regular_module(algebra_of(h));
  Matrix c = braiding_map(r, reg, reg);
  for (std::uint32_t a = 0; a < 2; ++a)
    for (std::uint32_t b = 0; b < 2; ++b)
      for (std::uint32_t ap = 0; ap < 2; ++ap)
        for (std::uint32_t bp = 0; bp < 2; ++bp) {
          Scalar want = (ap == b && bp == a) ? Scalar(1) : Scalar(0);
          CHECK(c.at(std::size_t(ap) * 2 + bp, std::size_t(a) * 2 + b) == want);
        }
}

TEST_CASE("hexagon identity for the double of C2 on regular modules") {
  auto dd = drinfeld_double(kg(cyclic_group(2)));
  Module reg = regular_module(algebra_of(dd.hopf));
  Module xy = tensor_module(dd.hopf, reg, reg);
  // c_{X (x) Y, Z} = (c_{X,Z} (x) Id) o (Id (x) c_{Y,Z}).
  SparseOp lhs = SparseOp::from_matrix(braiding_map(dd.r, xy, reg));
  std::vector<std::uint32_t> dims{reg.dim, reg.dim, reg.dim};
  SparseOp step1 = lift(braid_op(dd.r, reg, reg, false), dims, 1, 2);
  SparseOp step2 = lift(braid_op(dd.r, reg, reg, false), dims, 0, 2);
  SparseOp rhs = compose(step2, step1);
  CHECK(lhs == rhs);
  // Invertibility against the inverse braiding.
  SparseOp c = braid_op(dd.r, reg, reg, false);
  SparseOp cinv = braid_op(dd.r, reg, reg, true);
  CHECK(compose(cinv, c) == SparseOp::identity(reg.dim * reg.dim));
}

TEST_CASE("naturality of the braiding against right multiplication, Drin(C3)") {
  auto dd = drinfeld_double(kg(cyclic_group(3)));
  Module reg = regular_module(algebra_of(dd.hopf));
  std::vector<Scalar> z(dd.hopf->dim());
  z[2] = Scalar(1);
  z[5] = Scalar(-2);
  Matrix f = right_mult_operator(dd.hopf->alg, z);
  Matrix c = braiding_map(dd.r, reg, reg);
  const std::uint32_t n = reg.dim;
  Matrix f_id(std::size_t(n) * n, std::size_t(n) * n), id_f(std::size_t(n) * n, std::size_t(n) * n);
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b)
      for (std::uint32_t ap = 0; ap < n; ++ap) {
        if (!f.at(ap, a).is_zero()) {
          f_id.at(std::size_t(ap) * n + b, std::size_t(a) * n + b) = f.at(ap, a);
          id_f.at(std::size_t(b) * n + ap, std::size_t(b) * n + a) = f.at(ap, a);
        }
      }
  CHECK(c * f_id == id_f * c);
}

TEST_CASE("braiding_e from the identity K is the identity") {
  auto h = kg(cyclic_group(2));
  auto ca = trivial_comodule(h);
  KMatrix k;
  k.comod = ca;
  k.coeffs = Matrix(2, 1);
  k.coeffs.at(0, 0) = Scalar(1);
  k.inverse_coeffs = k.coeffs;
  Module x = regular_module(algebra_of(h));
  Module m = regular_module(ca->algebra);
  CHECK(braiding_e(k, x, m).is_identity());
}

TEST_CASE("braided-module axioms hold for K_ref and fail under a fault injection") {
  auto dd = drinfeld_double(kg(cyclic_group(2)));
  ReflectiveAlgebra ra = reflective_algebra(dd.hopf, dd.r, trivial_comodule(dd.hopf));
  Module x = regular_module(algebra_of(dd.hopf));
  Module m = regular_module(ra.algebra);
  CHECK(check_kmatrix(ra.k_ref, dd.r).all_passed());
  CHECK(check_braided_module(dd.r, ra.k_ref, x, x, m).all_passed());

  KMatrix bad = ra.k_ref;
  bad.coeffs.at(0, 1) += Scalar(1);
  CHECK(!check_kmatrix(bad, dd.r).all_passed());
  CHECK(!check_braided_module(dd.r, bad, x, x, m).all_passed());
}

TEST_CASE("the K_ref braiding commutes with the induced action") {
  auto dd = drinfeld_double(kg(cyclic_group(2)));
  ReflectiveAlgebra ra = reflective_algebra(dd.hopf, dd.r, trivial_comodule(dd.hopf));
  Module x = regular_module(algebra_of(dd.hopf));
  Module m = regular_module(ra.algebra);
  Module xm = induced_action(*ra.delta_ref, x, m);
  Matrix e = braiding_e(ra.k_ref, x, m);
  for (std::uint32_t u = 0; u < ra.algebra->dim; ++u)
    CHECK(e * xm.action[u] == xm.action[u] * e);
}

TEST_CASE("type B operators for the trivial pair are permutations") {
  auto h = kg(cyclic_group(2));
  auto ca = trivial_comodule(h);
  RMatrix r = trivial_r(h);
  KMatrix k;
  k.comod = ca;
  k.coeffs = Matrix(2, 1);
  k.coeffs.at(0, 0) = Scalar(1);
  k.inverse_coeffs = k.coeffs;
  Module x = regular_module(algebra_of(h));
  Module m = regular_module(ca->algebra);
  std::vector<Scalar> one{Scalar(1), Scalar(0)};
  KMatrix kt = ktilde(k, r, one);
  TypeBOperators ops = typeB_operators(r, kt, x, m, 3);
  CHECK(ops.report.all_passed());
  CHECK(ops.sigma.size() == 2);
  CHECK(ops.cylinder == SparseOp::identity(8));
}

TEST_CASE("type B operators for Drin(C2) with the reflective K-matrix") {
  auto dd = drinfeld_double(kg(cyclic_group(2)));
  ReflectiveAlgebra ra = reflective_algebra(dd.hopf, dd.r, trivial_comodule(dd.hopf));
  auto v = find_ribbon(*dd.hopf, dd.r);
  REQUIRE(v.has_value());
  KMatrix kt = ktilde(ra.k_ref, dd.r, *v);
  CHECK(check_reflection_equation(dd.r, kt).all_passed());
  Module x = regular_module(algebra_of(dd.hopf));
  Module m = regular_module(ra.algebra);
  TypeBOperators ops = typeB_operators(dd.r, kt, x, m, 2);
  CHECK(ops.report.count(CheckStatus::Fail) == 0);
  CHECK(ops.sigma.size() == 1);
}

TEST_CASE("Doi-Hopf data from the regular reflective module verifies and round-trips") {
  auto dd = drinfeld_double(kg(cyclic_group(2)));
  ReflectiveAlgebra ra = reflective_algebra(dd.hopf, dd.r, trivial_comodule(dd.hopf));
  Module reg = regular_module(ra.algebra);
  DoiHopfModule d = omega_inverse_functor(reg, ra);
  CHECK(doi_hopf_check(d).all_passed());
  Module back = omega_functor(d, ra);
  for (std::uint32_t i = 0; i < ra.algebra->dim; ++i) CHECK(back.action[i] == reg.action[i]);
  // The recovered coaction satisfies phi(m) = sum_d h_d (x) (xi_d * m) on the nose.
  for (std::uint32_t mm = 0; mm < reg.dim; ++mm) {
    SparseVec want;
    for (std::uint32_t dcol = 0; dcol < dd.hopf->dim(); ++dcol) {
      std::vector<Scalar> xi(ra.algebra->dim);
      for (std::uint32_t u = 0; u < ra.algebra->dim; ++u) xi[u] = ra.embed_dual.at(u, dcol);
      Matrix act = reg.act(xi);
      for (std::uint32_t rr = 0; rr < reg.dim; ++rr)
        if (!act.at(rr, mm).is_zero()) want.emplace_back(dcol * reg.dim + rr, act.at(rr, mm));
    }
    sparse_sort_combine(want);
    CHECK(sparse_equal(d.coaction.row(mm), want));
  }
}

TEST_CASE("functor round trips on 25 randomized modules") {
  auto dd = drinfeld_double(kg(cyclic_group(2)));
  ReflectiveAlgebra ra = reflective_algebra(dd.hopf, dd.r, trivial_comodule(dd.hopf));
  Module reg = regular_module(ra.algebra);
  for (int trial = 0; trial < 25; ++trial) {
    Module m = twist(reg, random_invertible(reg.dim));
    CHECK(check_module(m).all_passed());
    DoiHopfModule d = omega_inverse_functor(m, ra);
    CHECK(doi_hopf_check(d).all_passed());
    Module back = omega_functor(d, ra);
    for (std::uint32_t i = 0; i < ra.algebra->dim; ++i) CHECK(back.action[i] == m.action[i]);
    // Braiding <-> coaction round trip through the regular H-leg.
    Module hreg = regular_module(algebra_of(dd.hopf));
    Matrix e = braiding_from_coaction(d, hreg);
    CoTable phi = coaction_from_braiding(dd.hopf, d.b_module, e);
    CHECK(phi == d.coaction);
  }
}

TEST_CASE("the coaction-derived braiding coincides with braiding_e from K_ref") {
  auto dd = drinfeld_double(kg(cyclic_group(2)));
  ReflectiveAlgebra ra = reflective_algebra(dd.hopf, dd.r, trivial_comodule(dd.hopf));
  Module reg = regular_module(ra.algebra);
  DoiHopfModule d = omega_inverse_functor(reg, ra);
  Module hreg = regular_module(algebra_of(dd.hopf));
  CHECK(braiding_from_coaction(d, hreg) == braiding_e(ra.k_ref, hreg, reg));
}

TEST_CASE("induced reflective-algebra action on Y (x) M") {
  auto dd = drinfeld_double(kg(cyclic_group(2)));
  ReflectiveAlgebra ra = reflective_algebra(dd.hopf, dd.r, trivial_comodule(dd.hopf));
  Module y = regular_module(algebra_of(dd.hopf));
  Module m = regular_module(ra.algebra);
  RhaInducedResult got = rha_induced_action(ra, y, m);
  CHECK(got.report.all_passed());
}

TEST_CASE("cocommutative host: the dual factor acts only on the module leg") {
  auto h = kg(cyclic_group(2));
  ReflectiveAlgebra ra = reflective_algebra(h, trivial_r(h), trivial_comodule(h));
  Module y = regular_module(algebra_of(h));
  Module m = regular_module(ra.algebra);
  RhaInducedResult got = rha_induced_action(ra, y, m);
  CHECK(got.report.all_passed());
  for (std::uint32_t dd = 0; dd < 2; ++dd) {
    const Matrix& a = got.module.action[0 * 2 + dd];
    Matrix want(std::size_t(y.dim) * m.dim, std::size_t(y.dim) * m.dim);
    for (std::uint32_t yy = 0; yy < y.dim; ++yy)
      for (std::uint32_t mc = 0; mc < m.dim; ++mc)
        for (std::uint32_t mr = 0; mr < m.dim; ++mr)
          want.at(std::size_t(yy) * m.dim + mr, std::size_t(yy) * m.dim + mc) =
              m.action[dd].at(mr, mc);
    CHECK(a == want);
  }
}

TEST_CASE("Yetter-Drinfeld translation and back") {
  auto dd = drinfeld_double(kg(cyclic_group(3)));
  Module reg = regular_module(algebra_of(dd.hopf));
  YetterDrinfeldData yd = yd_translate(dd, reg);
  CHECK(yd.report.all_passed());
  Module back = yd_translate_back(dd, yd.h_module, yd.coaction);
  for (std::uint32_t i = 0; i < dd.hopf->dim(); ++i) CHECK(back.action[i] == reg.action[i]);

  for (int trial = 0; trial < 5; ++trial) {
    Module m = twist(reg, random_invertible(reg.dim));
    YetterDrinfeldData yd2 = yd_translate(dd, m);
    CHECK(yd2.report.all_passed());
    Module b2 = yd_translate_back(dd, yd2.h_module, yd2.coaction);
    for (std::uint32_t i = 0; i < dd.hopf->dim(); ++i) CHECK(b2.action[i] == m.action[i]);
  }
  Module t = trivial_module(dd.hopf);
  YetterDrinfeldData ydt = yd_translate(dd, t);
  CHECK(ydt.report.all_passed());
  REQUIRE(ydt.coaction.row(0).size() == 1);
  CHECK(ydt.coaction.row(0)[0].first == 0);
}

TEST_CASE("conjugation module of Drin(S3) and type B operators on six dimensions") {
  auto g = symmetric_group_s3();
  auto dd = drinfeld_double(kg(g));
  Module x = conjugation_module(g, dd);
  CHECK(x.dim == 6);
  CHECK(check_module(x).all_passed());
  YetterDrinfeldData yd = yd_translate(dd, x);
  CHECK(yd.report.all_passed());

  ReflectiveAlgebra ra = reflective_algebra(dd.hopf, dd.r, trivial_comodule(dd.hopf));
  auto v = find_ribbon(*dd.hopf, dd.r);
  REQUIRE(v.has_value());
  KMatrix kt = ktilde(ra.k_ref, dd.r, *v);
  Module m = regular_module(ra.algebra);
  TypeBOperators ops = typeB_operators(dd.r, kt, x, m, 2);
  // The R12 form of the operator identity holds; the all-R21 display needs
  // R21 = R12 and is recorded as its own row.
  bool r12_ok = false;
  for (const auto& c : ops.report.checks())
    if (c.name == "reflection-eq-R12 (operators)") r12_ok = c.status == CheckStatus::Pass;
  CHECK(r12_ok);
  CHECK(ops.sigma.size() == 1);
  // sigma is invertible: both braidings compose to the identity.
  SparseOp cinv = lift(braid_op(dd.r, x, x, true), {x.dim, x.dim, m.dim}, 0, 2);
  CHECK(compose(cinv, ops.sigma[0]) == SparseOp::identity(x.dim * x.dim * m.dim));
}

TEST_CASE("catalog invariants: K_ref braiding commutes with the induced action, Drin(C3)") {
  auto dd = drinfeld_double(kg(cyclic_group(3)));
  ReflectiveAlgebra ra = reflective_algebra(dd.hopf, dd.r, trivial_comodule(dd.hopf));
  Module x = regular_module(algebra_of(dd.hopf));
  Module m = regular_module(ra.algebra);
  Module xm = induced_action(*ra.delta_ref, x, m);
  Matrix e = braiding_e(ra.k_ref, x, m);
  for (std::uint32_t u = 0; u < ra.algebra->dim; ++u)
    CHECK(e * xm.action[u] == xm.action[u] * e);
}

TEST_CASE("a corrupted normalized K-matrix breaks a type B relation") {
  // Needs a noncommutative instance: over an abelian double every anchored
  // product commutes, so no corruption can separate the two sides.
  auto g = symmetric_group_s3();
  auto dd = drinfeld_double(kg(g));
  ReflectiveAlgebra ra = reflective_algebra(dd.hopf, dd.r, trivial_comodule(dd.hopf));
  auto v = find_ribbon(*dd.hopf, dd.r);
  REQUIRE(v.has_value());
  KMatrix kt = ktilde(ra.k_ref, dd.r, *v);
  kt.coeffs.at(1, 2) += Scalar(1);
  Module x = conjugation_module(g, dd);
  Module m = regular_module(ra.algebra);
  TypeBOperators ops = typeB_operators(dd.r, kt, x, m, 2);
  CHECK(ops.report.count(CheckStatus::Fail) > 0);
}

TEST_CASE("everything degenerates gracefully over the trivial group") {
  auto dd = drinfeld_double(kg(trivial_group()));
  ReflectiveAlgebra ra = reflective_algebra(dd.hopf, dd.r, trivial_comodule(dd.hopf));
  CHECK(ra.algebra->dim == 1);
  Module reg = regular_module(ra.algebra);
  DoiHopfModule d = omega_inverse_functor(reg, ra);
  CHECK(doi_hopf_check(d).all_passed());
  auto v = find_ribbon(*dd.hopf, dd.r);
  REQUIRE(v.has_value());
  KMatrix kt = ktilde(ra.k_ref, dd.r, *v);
  CHECK(check_reflection_equation(dd.r, kt).all_passed());
}
