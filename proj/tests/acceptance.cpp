// Acceptance suite: one line per criterion, exact arithmetic throughout.

#include <chrono>
#include <iostream>
#include <random>

#include "reflectum/io.hpp"

using namespace reflectum;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(int n, const std::string& label, bool pass, double seconds,
            const std::string& note = {}) {
  std::cout << (pass ? "[PASS]" : "[FAIL]") << " criterion " << n << ": " << label << "  ("
            << seconds << " s)";
  if (!note.empty()) std::cout << "  " << note;
  std::cout << std::endl;
  if (!pass) ++g_failures;
}

double elapsed(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

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

std::vector<FiniteGroup> catalog_groups() {
  return {cyclic_group(2), cyclic_group(3), symmetric_group_s3()};
}

bool group_product_formula(const FiniteGroup& g, const HopfAlgebra& d) {
  const std::uint32_t m = g.order;
  for (std::uint32_t x = 0; x < m; ++x)
    for (std::uint32_t y = 0; y < m; ++y)
      for (std::uint32_t xp = 0; xp < m; ++xp)
        for (std::uint32_t yp = 0; yp < m; ++yp) {
          SparseVec want;
          if (x == g.mul(g.mul(y, xp), g.inv(y)))
            want.emplace_back(x * m + g.mul(y, yp), Scalar(1));
          if (!sparse_equal(d.alg.mult.row(x * m + y, xp * m + yp), want)) return false;
        }
  return true;
}

std::mt19937_64 rng(987654321);

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

void criterion1() {
  auto t0 = Clock::now();
  bool ok = true;
  std::string note;
  for (const auto& g : catalog_groups()) {
    auto dd = drinfeld_double(kg(g));
    if (!check_hopf(*dd.hopf).all_passed()) {
      ok = false;
      note = g.name + ": Hopf axioms failed";
      break;
    }
    if (!check_quasitriangular(*dd.hopf, dd.r).all_passed()) {
      ok = false;
      note = g.name + ": quasitriangularity failed";
      break;
    }
    if (!check_qybe(*dd.hopf, dd.r).all_passed()) {
      ok = false;
      note = g.name + ": Yang-Baxter failed";
      break;
    }
    if (!group_product_formula(g, *dd.hopf)) {
      ok = false;
      note = g.name + ": closed-form product mismatch";
      break;
    }
  }
  double secs = elapsed(t0);
  if (secs >= 60.0) {
    ok = false;
    note += " (over the 60 s budget)";
  }
  report(1, "Drinfeld double suite: Hopf + QT1-QT5 + QYBE + product formula, C2/C3/S3", ok,
         secs, note);
}

void criterion2() {
  auto t0 = Clock::now();
  auto g = symmetric_group_s3();
  auto dd = drinfeld_double(kg(g));
  ReflectiveAlgebra ra = reflective_algebra(dd.hopf, dd.r, trivial_comodule(dd.hopf));
  auto cf = drin_group_closed_form(g);
  bool ok = ra.algebra->mult == cf.mult && ra.delta_ref->coaction == cf.coaction &&
            ra.k_ref.coeffs == cf.kmatrix;
  double secs = elapsed(t0);
  if (secs >= 120.0) ok = false;
  report(2, "closed-form oracle for S3: product, coaction, K-matrix entrywise", ok, secs);
}

void criterion3() {
  auto t0 = Clock::now();
  bool ok = true;
  std::string note;
  for (const auto& g : catalog_groups()) {
    auto dd = drinfeld_double(kg(g));
    for (bool regular : {false, true}) {
      ComodPtr a = regular ? regular_comodule(dd.hopf) : trivial_comodule(dd.hopf);
      try {
        ReflectiveAlgebra ra = reflective_algebra(dd.hopf, dd.r, a);
        VerificationReport k = check_kmatrix(ra.k_ref, dd.r);
        if (!k.all_passed()) {
          ok = false;
          note = g.name + (regular ? " A=H" : " A=k") + ": K-matrix axioms failed";
        }
      } catch (const VerificationFailure& e) {
        ok = false;
        note = g.name + std::string(regular ? " A=H" : " A=k") + ": " + e.what();
      }
      if (!ok) break;
    }
    if (!ok) break;
  }
  double secs = elapsed(t0);
  if (secs >= 1800.0) {
    ok = false;
    note += " (over the 30 min budget)";
  }
  report(3, "K2/K3/K1 for K_ref(k) and K_ref(H), doubles of C2/C3/S3 (dim up to 1296)", ok,
         secs, note);
}

void criterion4() {
  auto t0 = Clock::now();
  auto dd = drinfeld_double(kg(cyclic_group(2)));
  bool ok = true;
  std::string note;
  for (bool regular : {false, true}) {
    ComodPtr a = regular ? regular_comodule(dd.hopf) : trivial_comodule(dd.hopf);
    ReflectiveAlgebra ra = reflective_algebra(dd.hopf, dd.r, a);
    try {
      KappaResult k = kappa(dd.hopf, dd.r, ra.delta_ref, ra.k_ref);
      if (!(k.map == ra.embed_dual)) {
        ok = false;
        note = "kappa differs from the canonical embedding";
      }
      if (!k.report.all_passed()) {
        ok = false;
        note = "kappa properties failed";
      }
    } catch (const VerificationFailure&) {
      ok = false;
      note = "kappa verification threw";
    }
  }
  report(4, "initial object: kappa equals the embedding with all three properties, Drin(C2)",
         ok, elapsed(t0), note);
}

void criterion5() {
  auto t0 = Clock::now();
  bool ok = true;
  std::string note;
  for (const auto& g : catalog_groups()) {
    auto dd = drinfeld_double(kg(g));
    ReflectiveAlgebra ra = reflective_algebra(dd.hopf, dd.r, trivial_comodule(dd.hopf));
    Module x = regular_module(algebra_of(dd.hopf));
    Module m = regular_module(ra.algebra);
    bool elem_ok = check_kmatrix(ra.k_ref, dd.r).all_passed();
    bool mod_ok = check_braided_module(dd.r, ra.k_ref, x, x, m).all_passed();
    if (!(elem_ok && mod_ok)) {
      ok = false;
      note = g.name + ": valid K failed a side";
      break;
    }
    KMatrix bad = ra.k_ref;
    bad.coeffs.at(0, ra.algebra->dim > 1 ? 1 : 0) += Scalar(1);
    bad.inverse_coeffs = Matrix();  // force a fresh look at invertibility
    bool bad_elem = check_kmatrix(bad, dd.r).all_passed();
    bool bad_mod = check_braided_module(dd.r, bad, x, x, m).all_passed();
    if (bad_elem || bad_mod) {
      ok = false;
      note = g.name + ": fault injection not caught on both sides";
      break;
    }
  }
  report(5, "element-level K axioms match operator-level braided-module axioms, both ways",
         ok, elapsed(t0), note);
}

CheckStatus row_status(const VerificationReport& rep, const std::string& name) {
  for (const auto& c : rep.checks())
    if (c.name == name) return c.status;
  return CheckStatus::Skipped;
}

void criterion6() {
  auto t0 = Clock::now();
  bool ok = true;
  std::string note;
  {
    auto dd = drinfeld_double(kg(cyclic_group(2)));
    auto v = find_ribbon(*dd.hopf, dd.r);
    if (!v || !verify_ribbon(*dd.hopf, dd.r, *v).all_passed()) {
      ok = false;
      note = "no ribbon element found for Drin(C2)";
    } else {
      ReflectiveAlgebra ra = reflective_algebra(dd.hopf, dd.r, trivial_comodule(dd.hopf));
      KMatrix kt = ktilde(ra.k_ref, dd.r, *v);
      VerificationReport refl = check_reflection_equation(dd.r, kt);
      if (row_status(refl, "reflection-eq") != CheckStatus::Pass) {
        ok = false;
        note = "element-level reflection equation failed";
      } else {
        Module x = regular_module(algebra_of(dd.hopf));
        Module m = regular_module(ra.algebra);
        TypeBOperators ops = typeB_operators(dd.r, kt, x, m, 2);
        if (row_status(ops.report, "reflection-eq (operators)") != CheckStatus::Pass ||
            ops.report.count(CheckStatus::Fail) != 0) {
          ok = false;
          note = "operator-level reflection identity failed";
        }
      }
    }
  }
  // Larger instance: the trailing-R12 form (the one the verified axioms
  // imply); skipped, never silently passed, when the ribbon search fails.
  {
    auto dd = drinfeld_double(kg(symmetric_group_s3()));
    auto v = find_ribbon(*dd.hopf, dd.r);
    if (v) {
      ReflectiveAlgebra ra = reflective_algebra(dd.hopf, dd.r, trivial_comodule(dd.hopf));
      KMatrix kt = ktilde(ra.k_ref, dd.r, *v);
      VerificationReport refl = check_reflection_equation(dd.r, kt);
      if (row_status(refl, "reflection-eq-R12") != CheckStatus::Pass) {
        ok = false;
        note = "reflection equation (R12 form) failed for Drin(S3)";
      }
    } else {
      std::cout << "  (ribbon search failed for Drin(S3); rows reported SKIPPED)\n";
    }
  }
  report(6, "reflection equation with a searched ribbon element, elements and operators", ok,
         elapsed(t0), note);
}

void criterion7() {
  auto t0 = Clock::now();
  bool ok = true;
  std::string note;
  struct Instance {
    DrinfeldDouble dd;
    ReflectiveAlgebra ra;
  };
  std::vector<Instance> instances;
  {
    auto d2 = drinfeld_double(kg(cyclic_group(2)));
    instances.push_back({d2, reflective_algebra(d2.hopf, d2.r, trivial_comodule(d2.hopf))});
    auto d3 = drinfeld_double(kg(cyclic_group(3)));
    instances.push_back({d3, reflective_algebra(d3.hopf, d3.r, trivial_comodule(d3.hopf))});
    auto d2b = drinfeld_double(kg(cyclic_group(2)));
    instances.push_back({d2b, reflective_algebra(d2b.hopf, d2b.r, regular_comodule(d2b.hopf))});
  }
  for (const auto& inst : instances) {
    Module reg = regular_module(inst.ra.algebra);
    Module hreg = regular_module(algebra_of(inst.dd.hopf));
    Module drin_reg = regular_module(algebra_of(inst.dd.hopf));
    for (int trial = 0; trial < 25 && ok; ++trial) {
      Module m = twist(reg, random_invertible(reg.dim));
      DoiHopfModule d = omega_inverse_functor(m, inst.ra);
      if (!doi_hopf_check(d).all_passed()) {
        ok = false;
        note = "Doi-Hopf axioms failed on a twisted module";
        break;
      }
      Module back = omega_functor(d, inst.ra);
      for (std::uint32_t i = 0; i < inst.ra.algebra->dim; ++i)
        if (!(back.action[i] == m.action[i])) {
          ok = false;
          note = "Omega round trip differs";
          break;
        }
      Matrix e = braiding_from_coaction(d, hreg);
      CoTable phi = coaction_from_braiding(inst.dd.hopf, d.b_module, e);
      if (!(phi == d.coaction)) {
        ok = false;
        note = "braiding/coaction round trip differs";
        break;
      }
      // Yetter-Drinfeld translation on a twisted regular Drin(H)-module.
      Module dm = twist(drin_reg, random_invertible(drin_reg.dim));
      YetterDrinfeldData yd = yd_translate(inst.dd, dm);
      if (!yd.report.all_passed()) {
        ok = false;
        note = "YD axioms failed";
        break;
      }
      Module yb = yd_translate_back(inst.dd, yd.h_module, yd.coaction);
      for (std::uint32_t i = 0; i < inst.dd.hopf->dim(); ++i)
        if (!(yb.action[i] == dm.action[i])) {
          ok = false;
          note = "YD round trip differs";
          break;
        }
    }
    if (!ok) break;
  }
  report(7, "functor round trips (Omega, braiding/coaction, Yetter-Drinfeld), 25 random modules",
         ok, elapsed(t0), note);
}

void criterion8() {
  auto t0 = Clock::now();
  bool ok = true;
  for (const auto& g : catalog_groups()) {
    auto dd = drinfeld_double(kg(g));
    ReflectiveAlgebra ra = reflective_algebra(dd.hopf, dd.r, trivial_comodule(dd.hopf));
    if (!check_semisimple(*ra.algebra)) ok = false;
  }
  // Non-semisimple control: k[x]/(x^2).
  Algebra nil;
  nil.dim = 2;
  nil.name = "k[x]/(x^2)";
  nil.basis = {"1", "x"};
  nil.mult = MulTable(2, 2);
  nil.mult.row(0, 0).emplace_back(0, Scalar(1));
  nil.mult.row(0, 1).emplace_back(1, Scalar(1));
  nil.mult.row(1, 0).emplace_back(1, Scalar(1));
  nil.unit = {Scalar(1), Scalar(0)};
  if (check_semisimple(nil)) ok = false;
  report(8, "reflective algebras of doubles are semisimple over Q; nilpotent control is not",
         ok, elapsed(t0));
}

void criterion9() {
  auto t0 = Clock::now();
  bool ok = true;
  std::string note;
  // Cocommutative hosts with R = 1 (x) 1: axioms plus the closed formula.
  for (std::uint32_t nn : {2u, 3u}) {
    auto h = kg(cyclic_group(nn));
    auto ddh = drinfeld_double(h);
    ReflectiveAlgebra ra = reflective_algebra(h, trivial_r(h), trivial_comodule(h));
    ComodPtr dc;
    try {
      dc = drin_coaction_ref(ra, ddh);
    } catch (const VerificationFailure&) {
      ok = false;
      note = "comodule axioms failed over Drin(kC" + std::to_string(nn) + ")";
      break;
    }
    const std::uint32_t n = h->dim();
    const FiniteGroup g = cyclic_group(nn);
    for (std::uint32_t d = 0; d < n && ok; ++d) {
      SparseVec want;
      for (std::uint32_t dd2 = 0; dd2 < n; ++dd2)
        for (std::uint32_t dp = 0; dp < n; ++dp) {
          if (g.mul(dp, g.inv(dd2)) != d) continue;  // <xi_d, h_dp S^{-1}(h_dd2)>
          want.emplace_back((dd2 * n + 0) * n + dp, Scalar(1));
        }
      sparse_sort_combine(want);
      if (!sparse_equal(dc->coaction.row(d), want)) {
        ok = false;
        note = "cocommutative closed form mismatch for kC" + std::to_string(nn);
      }
    }
    if (!ok) break;
  }
  // H = Drin(C2): axioms over Drin(H) of dimension 16.
  if (ok) {
    auto dd = drinfeld_double(kg(cyclic_group(2)));
    auto dd2 = drinfeld_double(dd.hopf);
    ReflectiveAlgebra ra = reflective_algebra(dd.hopf, dd.r, trivial_comodule(dd.hopf));
    try {
      auto dc = drin_coaction_ref(ra, dd2);
      if (!check_comodule_algebra(*dc).all_passed()) {
        ok = false;
        note = "comodule axioms failed over Drin(Drin(C2))";
      }
    } catch (const VerificationFailure&) {
      ok = false;
      note = "comodule axioms failed over Drin(Drin(C2))";
    }
  }
  report(9, "Drin(H)-coaction on the reflective algebra: axioms and cocommutative formula",
         ok, elapsed(t0), note);
}

}  // namespace

int main() {
  auto t0 = Clock::now();
  std::cout << "acceptance suite (exact arithmetic, zero tolerance)\n";
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  std::cout << (g_failures == 0 ? "ALL CRITERIA PASSED" : "FAILURES PRESENT") << "  (total "
            << elapsed(t0) << " s)\n";
  return g_failures == 0 ? 0 : 1;
}
