#include "reflectum/doubles.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace reflectum {

MultiLegElement element2(Leg l1, Leg l2, const Matrix& coeffs) {
  if (coeffs.rows() != l1.dim() || coeffs.cols() != l2.dim())
    throw std::invalid_argument("DimensionMismatch: element2");
  MultiLegElement x({l1, l2});
  for (std::size_t i = 0; i < coeffs.rows(); ++i)
    for (std::size_t j = 0; j < coeffs.cols(); ++j)
      if (!coeffs.at(i, j).is_zero())
        x.coeff(i * coeffs.cols() + j) = coeffs.at(i, j);
  return x;
}

Matrix matrix2(const MultiLegElement& x) {
  if (x.legs().size() != 2) throw std::invalid_argument("DimensionMismatch: matrix2");
  std::size_t r = x.legs()[0].dim(), c = x.legs()[1].dim();
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m.at(i, j) = x.coeff(i * c + j);
  return m;
}

std::optional<Matrix> two_leg_inverse(const Algebra& a1, const Algebra& a2,
                                      const Matrix& coeffs) {
  const std::uint32_t n1 = a1.dim, n2 = a2.dim;
  const std::size_t n = std::size_t(n1) * n2;
  std::vector<SparseVec> rows(2 * n);
  std::vector<std::vector<Scalar>> rhs(2 * n);
  // x*y = 1 block then y*x = 1 block; unknown y indexed (j1,j2).
  for (std::uint32_t i1 = 0; i1 < n1; ++i1)
    for (std::uint32_t i2 = 0; i2 < n2; ++i2) {
      const Scalar& c = coeffs.at(i1, i2);
      if (c.is_zero()) continue;
      for (std::uint32_t j1 = 0; j1 < n1; ++j1) {
        const SparseVec& r1l = a1.mult.row(i1, j1);
        const SparseVec& r1r = a1.mult.row(j1, i1);
        for (std::uint32_t j2 = 0; j2 < n2; ++j2) {
          std::uint32_t col = j1 * n2 + j2;
          for (const auto& [q1, c1] : r1l)
            for (const auto& [q2, c2] : a2.mult.row(i2, j2)) {
              Scalar v = c;
              v *= c1;
              v *= c2;
              rows[std::size_t(q1) * n2 + q2].emplace_back(col, std::move(v));
            }
          for (const auto& [q1, c1] : r1r)
            for (const auto& [q2, c2] : a2.mult.row(j2, i2)) {
              Scalar v = c;
              v *= c1;
              v *= c2;
              rows[n + std::size_t(q1) * n2 + q2].emplace_back(col, std::move(v));
            }
        }
      }
    }
  for (auto& r : rows) sparse_sort_combine(r);
  for (std::uint32_t q1 = 0; q1 < n1; ++q1)
    for (std::uint32_t q2 = 0; q2 < n2; ++q2) {
      Scalar u = a1.unit[q1];
      u *= a2.unit[q2];
      rhs[std::size_t(q1) * n2 + q2] = {u};
      rhs[n + std::size_t(q1) * n2 + q2] = {std::move(u)};
    }
  auto sol = solve_linear_sparse(n, std::move(rows), std::move(rhs));
  if (!sol) return std::nullopt;
  Matrix y(n1, n2);
  for (std::uint32_t j1 = 0; j1 < n1; ++j1)
    for (std::uint32_t j2 = 0; j2 < n2; ++j2)
      y.at(j1, j2) = sol->at(std::size_t(j1) * n2 + j2, 0);
  return y;
}

namespace {

// xi_x * xi_y in H^* (convolution), from the comultiplication of H.
MulTable dual_convolution(const HopfAlgebra& h) {
  const std::uint32_t n = h.dim();
  MulTable t(n, n);
  for (std::uint32_t k = 0; k < n; ++k)
    for (const auto& [key, c] : h.coalg.comult.row(k))
      t.row(key / n, key % n).emplace_back(k, c);
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j) sparse_sort_combine(t.row(i, j));
  return t;
}

// Delta_{H^*}(xi_d) as sparse over keys a*n + b.
CoTable dual_comult(const HopfAlgebra& h) {
  const std::uint32_t n = h.dim();
  CoTable t(n, n, n);
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b)
      for (const auto& [d, c] : h.alg.mult.row(a, b)) t.row(d).emplace_back(a * n + b, c);
  for (std::uint32_t d = 0; d < n; ++d) sparse_sort_combine(t.row(d));
  return t;
}

}  // namespace

DrinfeldDouble drinfeld_double(const HopfPtr& h) {
  const std::uint32_t n = h->dim();
  const std::uint32_t N = n * n;
  const auto& mult = h->alg.mult;
  const auto& comult = h->coalg.comult;

  // Iterated coproduct of each basis element, keys p*n*n + q*n + r.
  std::vector<SparseVec> comult2(n);
  for (std::uint32_t b = 0; b < n; ++b) {
    for (const auto& [key, c] : comult.row(b)) {
      std::uint32_t i = key / n, j = key % n;
      for (const auto& [key2, c2] : comult.row(i)) {
        Scalar v = c;
        v *= c2;
        comult2[b].emplace_back(key2 * n + j, std::move(v));
      }
    }
    sparse_sort_combine(comult2[b]);
  }

  // Cross relation h_b xi_c = sum <xi_c1, S(h_b1)> <xi_c3, h_b3> xi_c2 h_b2,
  // tabulated as cross[b][c] over keys m*n + w (xi_m (x) h_w).
  std::vector<std::vector<SparseVec>> cross(n, std::vector<SparseVec>(n));
  for (std::uint32_t b = 0; b < n; ++b) {
    for (const auto& [key, c2v] : comult2[b]) {
      std::uint32_t p = key / (n * n), q = (key / n) % n, r = key % n;
      for (std::uint32_t d = 0; d < n; ++d) {
        const Scalar& sdp = h->antipode.at(d, p);
        if (sdp.is_zero()) continue;
        // <xi_c, h_d h_m h_r> over all m, c.
        for (std::uint32_t m = 0; m < n; ++m) {
          for (const auto& [t, ct] : mult.row(d, m))
            for (const auto& [cidx, ct2] : mult.row(t, r)) {
              Scalar v = c2v;
              v *= sdp;
              v *= ct;
              v *= ct2;
              cross[b][cidx].emplace_back(m * n + q, std::move(v));
            }
        }
      }
    }
    for (std::uint32_t c = 0; c < n; ++c) sparse_sort_combine(cross[b][c]);
  }

  MulTable dualmul = dual_convolution(*h);
  CoTable dualco = dual_comult(*h);

  auto d = std::make_shared<HopfAlgebra>();
  d->alg.dim = N;
  d->alg.name = "Drin(" + h->name() + ")";
  d->alg.basis.reserve(N);
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b) {
      std::string la = a < h->alg.basis.size() ? h->alg.basis[a] : std::to_string(a);
      std::string lb = b < h->alg.basis.size() ? h->alg.basis[b] : std::to_string(b);
      d->alg.basis.push_back("d(" + la + ")" + lb);
    }

  // Product: (xi_a h_b)(xi_c h_e) = xi_a (h_b xi_c) h_e, with the H^*-leg
  // multiplied in the opposite convolution order.
  d->alg.mult = MulTable(N, N);
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b)
      for (std::uint32_t c = 0; c < n; ++c)
        for (std::uint32_t e = 0; e < n; ++e) {
          SparseVec& out = d->alg.mult.row(a * n + b, c * n + e);
          for (const auto& [key, cv] : cross[b][c]) {
            std::uint32_t m = key / n, w = key % n;
            for (const auto& [k1, c1] : dualmul.row(m, a))
              for (const auto& [k2, c2] : mult.row(w, e)) {
                Scalar v = cv;
                v *= c1;
                v *= c2;
                out.emplace_back(k1 * n + k2, std::move(v));
              }
          }
          sparse_sort_combine(out);
        }

  d->alg.unit.assign(N, Scalar());
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b) {
      Scalar v = h->coalg.counit[a];
      v *= h->alg.unit[b];
      d->alg.unit[std::size_t(a) * n + b] = std::move(v);
    }

  // Tensor product coalgebra.
  d->coalg.dim = N;
  d->coalg.comult = CoTable(N, N, N);
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b) {
      SparseVec& out = d->coalg.comult.row(a * n + b);
      for (const auto& [kd, cd] : dualco.row(a)) {
        std::uint32_t x = kd / n, y = kd % n;
        for (const auto& [kh, ch] : comult.row(b)) {
          std::uint32_t i = kh / n, j = kh % n;
          Scalar v = cd;
          v *= ch;
          out.emplace_back((x * n + i) * N + (y * n + j), std::move(v));
        }
      }
      sparse_sort_combine(out);
    }
  d->coalg.counit.assign(N, Scalar());
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b) {
      Scalar v = h->alg.unit[a];
      v *= h->coalg.counit[b];
      d->coalg.counit[std::size_t(a) * n + b] = std::move(v);
    }

  auto S = antipode_solve(d->alg, d->coalg);
  if (!S) throw std::runtime_error("drinfeld_double: no antipode (internal error)");
  d->antipode = *S;
  auto Sinv = invert(d->antipode);
  if (!Sinv) throw std::runtime_error("drinfeld_double: antipode not bijective (data error)");
  d->antipode_inv = *Sinv;

  DrinfeldDouble out;
  out.base = h;
  out.hopf = d;
  out.r.host = d;
  // R = sum_d (xi_d (x) 1_H) (x) (1_{H^*} (x) h_d); for group algebras this is
  // sum_g delta_g (x) g, the dual-basis leg first.
  out.r.coeffs = Matrix(N, N);
  for (std::uint32_t dd = 0; dd < n; ++dd)
    for (std::uint32_t e = 0; e < n; ++e) {
      if (h->alg.unit[e].is_zero()) continue;
      for (std::uint32_t a = 0; a < n; ++a) {
        if (h->coalg.counit[a].is_zero()) continue;
        Scalar v = h->coalg.counit[a];
        v *= h->alg.unit[e];
        out.r.coeffs.at(std::size_t(dd) * n + e, std::size_t(a) * n + dd) += v;
      }
    }
  auto rinv = two_leg_inverse(d->alg, d->alg, out.r.coeffs);
  if (!rinv) throw std::runtime_error("drinfeld_double: R-matrix not invertible (internal error)");
  out.r.inverse_coeffs = *rinv;

  out.embed_dual = Matrix(N, n);
  out.embed_h = Matrix(N, n);
  for (std::uint32_t dd = 0; dd < n; ++dd)
    for (std::uint32_t e = 0; e < n; ++e) {
      out.embed_dual.at(std::size_t(dd) * n + e, dd) = h->alg.unit[e];
      out.embed_h.at(std::size_t(dd) * n + e, e) = h->coalg.counit[dd];
    }
  return out;
}

std::vector<Scalar> harpoon_left(const HopfAlgebra& h, const std::vector<Scalar>& hv,
                                 const std::vector<Scalar>& xi) {
  const std::uint32_t n = h.dim();
  if (hv.size() != n || xi.size() != n)
    throw std::invalid_argument("DimensionMismatch: harpoon_left");
  std::vector<Scalar> out(n);
  for (std::uint32_t dp = 0; dp < n; ++dp)
    for (std::uint32_t i = 0; i < n; ++i) {
      if (hv[i].is_zero()) continue;
      for (const auto& [dd, c] : h.alg.mult.row(dp, i)) {
        if (xi[dd].is_zero()) continue;
        Scalar v = hv[i];
        v *= c;
        v *= xi[dd];
        out[dp] += v;
      }
    }
  return out;
}

std::vector<Scalar> harpoon_right(const HopfAlgebra& h, const std::vector<Scalar>& xi,
                                  const std::vector<Scalar>& hv) {
  const std::uint32_t n = h.dim();
  if (hv.size() != n || xi.size() != n)
    throw std::invalid_argument("DimensionMismatch: harpoon_right");
  std::vector<Scalar> out(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    if (hv[i].is_zero()) continue;
    for (std::uint32_t dp = 0; dp < n; ++dp)
      for (const auto& [dd, c] : h.alg.mult.row(i, dp)) {
        if (xi[dd].is_zero()) continue;
        Scalar v = hv[i];
        v *= c;
        v *= xi[dd];
        out[dp] += v;
      }
  }
  return out;
}

namespace {

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

}  // namespace

VerificationReport check_quasitriangular(const HopfAlgebra& h, const RMatrix& r) {
  VerificationReport rep;
  HopfPtr hp = r.host;
  Leg H = leg_of(hp);
  const std::uint32_t n = h.dim();

  // Invertibility through the tensor-square algebra.
  {
    Algebra hh = tensor_algebra(h.alg, h.alg, h.alg.name + "(x)" + h.alg.name);
    std::vector<Scalar> x(std::size_t(n) * n);
    for (std::uint32_t i = 0; i < n; ++i)
      for (std::uint32_t j = 0; j < n; ++j) x[std::size_t(i) * n + j] = r.coeffs.at(i, j);
    auto inv = element_inverse(hh, x);
    bool ok = inv.has_value();
    if (ok) {
      for (std::uint32_t i = 0; i < n && ok; ++i)
        for (std::uint32_t j = 0; j < n; ++j)
          if ((*inv)[std::size_t(i) * n + j] != r.inverse_coeffs.at(i, j)) {
            ok = false;
            break;
          }
    }
    if (ok) {
      rep.pass("R invertible");
    } else {
      rep.fail("R invertible", Witness{},
               inv ? "stored inverse differs from solved inverse" : "no inverse exists");
    }
  }

  MultiLegElement R12 = element2(H, H, r.coeffs);
  MultiLegElement Rinv12 = element2(H, H, r.inverse_coeffs);
  std::vector<Leg> threeH{H, H, H};

  // (Delta (x) Id)(R) = R13 R23.
  {
    MultiLegElement lhs = apply_cotable_to_leg(R12, 0, h.coalg.comult, H, H);
    MultiLegElement rhs = leg_multiply(embed_legs(R12, {0, 2}, threeH),
                                       embed_legs(R12, {1, 2}, threeH));
    if (lhs == rhs) rep.pass("QT1");
    else rep.fail("QT1", element_witness({}, lhs, rhs));
  }
  // (Id (x) Delta)(R) = R13 R12.
  {
    MultiLegElement lhs = apply_cotable_to_leg(R12, 1, h.coalg.comult, H, H);
    MultiLegElement rhs = leg_multiply(embed_legs(R12, {0, 2}, threeH),
                                       embed_legs(R12, {0, 1}, threeH));
    if (lhs == rhs) rep.pass("QT2");
    else rep.fail("QT2", element_witness({}, lhs, rhs));
  }
  // R Delta(h) = Delta^op(h) R for every basis h.
  {
    bool ok = true;
    std::vector<Leg> twoH{H, H};
    for (std::uint32_t k = 0; k < n && ok; ++k) {
      MultiLegElement dh(twoH), dhop(twoH);
      for (const auto& [key, c] : h.coalg.comult.row(k)) {
        std::uint32_t i = key / n, j = key % n;
        dh.coeff(std::size_t(i) * n + j) += c;
        dhop.coeff(std::size_t(j) * n + i) += c;
      }
      MultiLegElement lhs = leg_multiply(R12, dh);
      MultiLegElement rhs = leg_multiply(dhop, R12);
      if (lhs != rhs) {
        rep.fail("QT3", element_witness({k}, lhs, rhs));
        ok = false;
      }
    }
    if (ok) rep.pass("QT3");
  }
  // Derived identities: (eps (x) Id)(R) = 1 = (Id (x) eps)(R).
  {
    MultiLegElement l = apply_covector_to_leg(R12, 0, h.coalg.counit);
    MultiLegElement rr = apply_covector_to_leg(R12, 1, h.coalg.counit);
    MultiLegElement one = unit_element({H});
    if (l == one && rr == one) rep.pass("QT4");
    else rep.fail("QT4", element_witness({}, l == one ? rr : l, one));
  }
  // R^{-1} = (S (x) Id)(R), R = (Id (x) S)(R^{-1}), R = (S (x) S)(R).
  {
    MultiLegElement sR = apply_matrix_to_leg(R12, 0, h.antipode, H);
    bool ok = sR == Rinv12;
    MultiLegElement sRinv = apply_matrix_to_leg(Rinv12, 1, h.antipode, H);
    ok = ok && sRinv == R12;
    MultiLegElement ssR = apply_matrix_to_leg(sR, 1, h.antipode, H);
    ok = ok && ssR == R12;
    if (ok) rep.pass("QT5");
    else rep.fail("QT5", element_witness({}, sR, Rinv12));
  }
  return rep;
}

VerificationReport check_qybe(const HopfAlgebra& h, const RMatrix& r) {
  (void)h;
  VerificationReport rep;
  Leg H = leg_of(r.host);
  std::vector<Leg> threeH{H, H, H};
  MultiLegElement R12 = element2(H, H, r.coeffs);
  MultiLegElement a = embed_legs(R12, {0, 1}, threeH);
  MultiLegElement b = embed_legs(R12, {0, 2}, threeH);
  MultiLegElement c = embed_legs(R12, {1, 2}, threeH);
  MultiLegElement lhs = leg_multiply(leg_multiply(a, b), c);
  MultiLegElement rhs = leg_multiply(leg_multiply(c, b), a);
  if (lhs == rhs) rep.pass("QYBE");
  else rep.fail("QYBE", element_witness({}, lhs, rhs));
  return rep;
}

std::vector<Scalar> drinfeld_element(const HopfAlgebra& h, const RMatrix& r) {
  const std::uint32_t n = h.dim();
  std::vector<Scalar> u(n);
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b) {
      const Scalar& c = r.coeffs.at(a, b);
      if (c.is_zero()) continue;
      for (std::uint32_t p = 0; p < n; ++p) {
        const Scalar& sp = h.antipode.at(p, b);
        if (sp.is_zero()) continue;
        for (const auto& [k, m] : h.alg.mult.row(p, a)) {
          Scalar v = c;
          v *= sp;
          v *= m;
          u[k] += v;
        }
      }
    }
  return u;
}

VerificationReport verify_ribbon(const HopfAlgebra& h, const RMatrix& r,
                                 const std::vector<Scalar>& v) {
  VerificationReport rep;
  const std::uint32_t n = h.dim();
  if (v.size() != n) throw std::invalid_argument("DimensionMismatch: verify_ribbon");
  SparseVec vs = to_sparse(v);

  bool central = true;
  for (std::uint32_t i = 0; i < n && central; ++i) {
    SparseVec e{{i, Scalar(1)}};
    if (!sparse_equal(h.alg.mult.multiply(vs, e), h.alg.mult.multiply(e, vs))) {
      Witness w;
      w.index = {i};
      rep.fail("ribbon: central", std::move(w));
      central = false;
    }
  }
  if (central) rep.pass("ribbon: central");

  auto vinv = element_inverse(h.alg, v);
  if (vinv) rep.pass("ribbon: invertible");
  else rep.fail("ribbon: invertible", Witness{});

  {
    // S(v) = v.
    std::vector<Scalar> sv = h.antipode.apply(v);
    if (sv == v) {
      rep.pass("ribbon: S(v) = v");
    } else {
      Witness w;
      for (std::uint32_t i = 0; i < n && w.discrepancy.size() < 8; ++i) {
        Scalar d = sv[i];
        d -= v[i];
        if (!d.is_zero()) w.discrepancy.emplace_back(i, std::move(d));
      }
      rep.fail("ribbon: S(v) = v", std::move(w));
    }
  }

  {
    Leg H = leg_of(r.host);
    std::vector<Leg> twoH{H, H};
    MultiLegElement R12 = element2(H, H, r.coeffs);
    MultiLegElement R21 = element2(H, H, r.coeffs.transpose());
    MultiLegElement Rinv12 = element2(H, H, r.inverse_coeffs);
    MultiLegElement Rinv21 = element2(H, H, r.inverse_coeffs.transpose());
    // (R21 R12)^{-1} = R12^{-1} R21^{-1}.
    MultiLegElement m_inv = leg_multiply(Rinv12, Rinv21);
    MultiLegElement vv(twoH);
    for (const auto& [i, ci] : vs)
      for (const auto& [j, cj] : vs) {
        Scalar c = ci;
        c *= cj;
        vv.coeff(std::size_t(i) * n + j) = std::move(c);
      }
    MultiLegElement rhs = leg_multiply(vv, m_inv);
    MultiLegElement lhs(twoH);
    lhs.set_from_sparse(h.coalg.comult.apply(vs));
    if (lhs == rhs) rep.pass("ribbon: Delta(v) = (v(x)v)(R21 R12)^-1");
    else rep.fail("ribbon: Delta(v) = (v(x)v)(R21 R12)^-1", element_witness({}, lhs, rhs));
  }
  return rep;
}

Matrix center_basis(const Algebra& a) {
  const std::uint32_t n = a.dim;
  Matrix sys(std::size_t(n) * n, n);
  for (std::uint32_t i = 0; i < n; ++i) {
    // Row block for [e_i, x] = 0.
    for (std::uint32_t j = 0; j < n; ++j) {
      for (const auto& [k, c] : a.mult.row(i, j)) sys.at(std::size_t(i) * n + k, j) += c;
      for (const auto& [k, c] : a.mult.row(j, i)) sys.at(std::size_t(i) * n + k, j) -= c;
    }
  }
  return kernel_basis(sys);
}

namespace {

Scalar determinant(Matrix m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant: square only");
  const std::size_t n = m.rows();
  Scalar det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = n;
    for (std::size_t r = c; r < n; ++r)
      if (!m.at(r, c).is_zero()) {
        piv = r;
        break;
      }
    if (piv == n) return Scalar(0);
    if (piv != c) {
      for (std::size_t k = 0; k < n; ++k) std::swap(m.at(piv, k), m.at(c, k));
      det = -det;
    }
    det *= m.at(c, c);
    Scalar inv = m.at(c, c).inverse();
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m.at(r, c).is_zero()) continue;
      Scalar f = m.at(r, c);
      f *= inv;
      for (std::size_t k = c; k < n; ++k) {
        Scalar t = m.at(c, k);
        t *= f;
        m.at(r, k) -= t;
      }
    }
  }
  return det;
}

// Rational roots of the polynomial with the given exact rational coefficients
// (index = degree), found through integer divisor candidates. Best effort.
std::vector<Scalar> rational_roots(const std::vector<Scalar>& poly) {
  std::vector<Scalar> roots;
  // Clear denominators.
  long long lcm = 1;
  for (const auto& c : poly) {
    if (!c.is_small()) return roots;  // coefficients too large for the search
    long long d = c.den_small();
    long long g = std::gcd(lcm, d);
    lcm = (lcm / g) * d;
    if (lcm > (1LL << 40)) return roots;
  }
  std::vector<long long> ip;
  for (const auto& c : poly) {
    if (!c.is_small()) return roots;
    ip.push_back(c.num_small() * (lcm / c.den_small()));
  }
  while (!ip.empty() && ip.back() == 0) ip.pop_back();
  if (ip.empty()) return roots;
  // Strip trailing zero roots.
  std::size_t low = 0;
  while (low < ip.size() && ip[low] == 0) ++low;
  if (low > 0) roots.push_back(Scalar(0));
  std::vector<long long> p(ip.begin() + low, ip.end());
  if (p.size() <= 1) return roots;
  auto divisors = [](long long v) {
    std::vector<long long> out;
    v = v < 0 ? -v : v;
    for (long long d = 1; d * d <= v && d <= 100000; ++d)
      if (v % d == 0) {
        out.push_back(d);
        out.push_back(v / d);
      }
    return out;
  };
  auto eval = [&](const Scalar& x) {
    Scalar acc;
    for (std::size_t i = p.size(); i-- > 0;) {
      acc *= x;
      acc += Scalar(p[i]);
    }
    return acc;
  };
  for (long long a : divisors(p.front()))
    for (long long b : divisors(p.back()))
      for (int sign : {1, -1}) {
        Scalar cand(sign * a, b);
        if (eval(cand).is_zero()) {
          if (std::find(roots.begin(), roots.end(), cand) == roots.end())
            roots.push_back(cand);
        }
      }
  return roots;
}

}  // namespace

std::optional<std::vector<Scalar>> find_ribbon(const HopfAlgebra& h, const RMatrix& r,
                                               bool skip_candidates) {
  const std::uint32_t n = h.dim();
  auto try_candidate = [&](const std::vector<Scalar>& v) -> bool {
    return verify_ribbon(h, r, v).all_passed();
  };
  std::vector<Scalar> u = drinfeld_element(h, r);
  if (!skip_candidates) {
    if (try_candidate(u)) return u;
    if (auto ui = element_inverse(h.alg, u)) {
      if (try_candidate(*ui)) return ui;
      std::vector<Scalar> nui = *ui;
      for (auto& s : nui) s = -s;
      if (try_candidate(nui)) return nui;
    }
    {
      std::vector<Scalar> nu = u;
      for (auto& s : nu) s = -s;
      if (try_candidate(nu)) return nu;
    }
    {
      std::vector<Scalar> su = h.antipode.apply(u);
      if (try_candidate(su)) return su;
    }
  }

  // Center search. Parameterize v over the S-fixed center and match the
  // quadratic condition Delta(v) (R21 R12) = v (x) v through anchored slices.
  Matrix Z = center_basis(h.alg);
  if (Z.cols() == 0) return std::nullopt;
  // Restrict to the S-fixed subspace: kernel of (S - I) Z.
  Matrix SZ = h.antipode * Z;
  for (std::size_t i = 0; i < Z.rows(); ++i)
    for (std::size_t j = 0; j < Z.cols(); ++j) SZ.at(i, j) -= Z.at(i, j);
  Matrix ker = kernel_basis(SZ);
  if (ker.cols() == 0) return std::nullopt;
  Matrix W = Z * ker;  // n x w
  const std::size_t w = W.cols();

  // T(lambda) = Delta(v) (R21 R12) as an (n^2) x w matrix in the parameters.
  Leg H = leg_of(r.host);
  MultiLegElement R12 = element2(H, H, r.coeffs);
  MultiLegElement R21 = element2(H, H, r.coeffs.transpose());
  MultiLegElement RR = leg_multiply(R21, R12);
  Matrix T(std::size_t(n) * n, w);
  for (std::size_t col = 0; col < w; ++col) {
    SparseVec vcol;
    for (std::uint32_t i = 0; i < n; ++i)
      if (!W.at(i, col).is_zero()) vcol.emplace_back(i, W.at(i, col));
    MultiLegElement dv({H, H});
    dv.set_from_sparse(h.coalg.comult.apply(vcol));
    MultiLegElement prod = leg_multiply(dv, RR);
    for (std::size_t f = 0; f < prod.size(); ++f) T.at(f, col) = prod.coeff(f);
  }

  for (std::uint32_t anchor = 0; anchor < n; ++anchor) {
    // M_r lambda = mu * (W lambda) on the anchor slice.
    Matrix Mr(n, w);
    for (std::uint32_t q = 0; q < n; ++q)
      for (std::size_t col = 0; col < w; ++col)
        Mr.at(q, col) = T.at(std::size_t(anchor) * n + q, col);
    Matrix A = W.transpose() * Mr;   // w x w
    Matrix B = W.transpose() * W;    // w x w
    // det(A - mu B) as a polynomial via interpolation at w+1 points.
    std::vector<Scalar> xs, ys;
    for (std::size_t s = 0; s <= w; ++s) {
      Scalar mu{static_cast<long long>(s)};
      Matrix P = A;
      for (std::size_t i = 0; i < w; ++i)
        for (std::size_t j = 0; j < w; ++j) {
          Scalar t = B.at(i, j);
          t *= mu;
          P.at(i, j) -= t;
        }
      xs.push_back(mu);
      ys.push_back(determinant(P));
    }
    // Newton interpolation to coefficient form.
    std::vector<Scalar> coef(w + 1), newton(ys);
    for (std::size_t lev = 1; lev <= w; ++lev)
      for (std::size_t i = w; i >= lev; --i) {
        Scalar num = newton[i];
        num -= newton[i - 1];
        Scalar den = xs[i];
        den -= xs[i - lev];
        newton[i] = num / den;
        if (i == lev) break;
      }
    std::vector<Scalar> poly{newton[w]};
    for (std::size_t i = w; i-- > 0;) {
      // poly = poly*(x - xs[i]) + newton[i]
      std::vector<Scalar> next(poly.size() + 1);
      for (std::size_t k = 0; k < poly.size(); ++k) {
        next[k + 1] += poly[k];
        Scalar t = poly[k];
        t *= xs[i];
        next[k] -= t;
      }
      next[0] += newton[i];
      poly = std::move(next);
    }
    for (const Scalar& mu : rational_roots(poly)) {
      if (mu.is_zero()) continue;
      // Solve (Mr - mu W) lambda = 0.
      Matrix sys(n, w);
      for (std::uint32_t q = 0; q < n; ++q)
        for (std::size_t col = 0; col < w; ++col) {
          Scalar t = W.at(q, col);
          t *= mu;
          sys.at(q, col) = Mr.at(q, col);
          sys.at(q, col) -= t;
        }
      Matrix K = kernel_basis(sys);
      for (std::size_t col = 0; col < K.cols(); ++col) {
        std::vector<Scalar> lam(w);
        for (std::size_t i = 0; i < w; ++i) lam[i] = K.at(i, col);
        std::vector<Scalar> v0(n);
        for (std::uint32_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < w; ++j) v0[i].add_mul(W.at(i, j), lam[j]);
        if (v0[anchor].is_zero()) continue;
        Scalar t = mu / v0[anchor];
        std::vector<Scalar> v(n);
        for (std::uint32_t i = 0; i < n; ++i) {
          v[i] = v0[i];
          v[i] *= t;
        }
        if (try_candidate(v)) return v;
      }
    }
  }
  return std::nullopt;
}

}  // namespace reflectum
