#include "reflectum/tensor.hpp"

#include <stdexcept>

#include "reflectum/algebra.hpp"

namespace reflectum {

SparseVec MulTable::left_apply(std::uint32_t i, const SparseVec& v) const {
  SparseVec out;
  for (const auto& [j, c] : v) sparse_axpy(out, c, row(i, j));
  return out;
}

SparseVec MulTable::multiply(const SparseVec& a, const SparseVec& b) const {
  SparseVec out;
  for (const auto& [i, ca] : a) {
    for (const auto& [j, cb] : b) {
      const SparseVec& r = row(i, j);
      if (r.empty()) continue;
      Scalar c = ca;
      c *= cb;
      sparse_axpy(out, c, r);
    }
  }
  return out;
}

SparseVec CoTable::apply(const SparseVec& v) const {
  SparseVec out;
  for (const auto& [k, c] : v) sparse_axpy(out, c, rows_[k]);
  return out;
}

std::uint32_t Leg::dim() const { return alg->dim; }

MultiLegElement::MultiLegElement(std::vector<Leg> legs) : legs_(std::move(legs)) {
  std::size_t n = 1;
  strides_.assign(legs_.size(), 1);
  for (std::size_t i = legs_.size(); i-- > 0;) {
    strides_[i] = n;
    n *= legs_[i].dim();
  }
  coeff_.assign(n, Scalar());
}

std::size_t MultiLegElement::flat_index(const std::vector<std::uint32_t>& idx) const {
  std::size_t f = 0;
  for (std::size_t i = 0; i < legs_.size(); ++i) f += strides_[i] * idx[i];
  return f;
}

std::vector<std::uint32_t> MultiLegElement::unflatten(std::size_t flat) const {
  std::vector<std::uint32_t> idx(legs_.size());
  for (std::size_t i = 0; i < legs_.size(); ++i) {
    idx[i] = std::uint32_t(flat / strides_[i]);
    flat %= strides_[i];
  }
  return idx;
}

SparseVec MultiLegElement::nonzeros() const {
  SparseVec out;
  for (std::size_t f = 0; f < coeff_.size(); ++f)
    if (!coeff_[f].is_zero()) out.emplace_back(std::uint32_t(f), coeff_[f]);
  return out;
}

void MultiLegElement::set_from_sparse(const SparseVec& v) {
  for (auto& s : coeff_) s = Scalar();
  for (const auto& [f, c] : v) coeff_[f] = c;
}

bool MultiLegElement::operator==(const MultiLegElement& o) const {
  if (legs_.size() != o.legs_.size()) return false;
  for (std::size_t i = 0; i < legs_.size(); ++i)
    if (!legs_[i].same_tag(o.legs_[i])) return false;
  return coeff_ == o.coeff_;
}

bool MultiLegElement::is_zero() const {
  for (const auto& s : coeff_)
    if (!s.is_zero()) return false;
  return true;
}

MultiLegElement& MultiLegElement::operator+=(const MultiLegElement& o) {
  if (coeff_.size() != o.coeff_.size()) throw std::invalid_argument("LegMismatch: add");
  for (std::size_t f = 0; f < coeff_.size(); ++f) coeff_[f] += o.coeff_[f];
  return *this;
}

MultiLegElement& MultiLegElement::operator-=(const MultiLegElement& o) {
  if (coeff_.size() != o.coeff_.size()) throw std::invalid_argument("LegMismatch: sub");
  for (std::size_t f = 0; f < coeff_.size(); ++f) coeff_[f] -= o.coeff_[f];
  return *this;
}

MultiLegElement MultiLegElement::scaled(const Scalar& c) const {
  MultiLegElement out(legs_);
  for (std::size_t f = 0; f < coeff_.size(); ++f) {
    out.coeff_[f] = coeff_[f];
    out.coeff_[f] *= c;
  }
  return out;
}

MultiLegElement unit_element(const std::vector<Leg>& legs) {
  if (legs.empty()) throw std::invalid_argument("LegMismatch: empty leg list");
  MultiLegElement out(legs);
  std::vector<SparseVec> units;
  units.reserve(legs.size());
  for (const auto& l : legs) {
    units.push_back(l.alg->unit_sparse());
    if (units.back().empty()) return out;
  }
  // Outer product of the unit vectors.
  std::vector<std::size_t> pos(legs.size(), 0);
  while (true) {
    std::size_t flat = 0;
    Scalar c(1);
    for (std::size_t i = 0; i < legs.size(); ++i) {
      flat = flat * legs[i].dim() + units[i][pos[i]].first;
      c *= units[i][pos[i]].second;
    }
    out.coeff(flat) += c;
    std::size_t k = legs.size();
    bool done = true;
    while (k-- > 0) {
      if (++pos[k] < units[k].size()) {
        done = false;
        break;
      }
      pos[k] = 0;
    }
    if (done) break;
  }
  return out;
}

namespace {

void require_same_legs(const MultiLegElement& x, const MultiLegElement& y) {
  if (x.legs().size() != y.legs().size())
    throw std::invalid_argument("LegMismatch: different leg counts");
  for (std::size_t i = 0; i < x.legs().size(); ++i)
    if (!x.legs()[i].same_tag(y.legs()[i]))
      throw std::invalid_argument("LegMismatch: leg tags differ");
}

}  // namespace

MultiLegElement leg_multiply(const MultiLegElement& x, const MultiLegElement& y) {
  require_same_legs(x, y);
  const auto& legs = x.legs();
  const std::size_t nl = legs.size();
  MultiLegElement out(legs);
  SparseVec xs = x.nonzeros();
  SparseVec ys = y.nonzeros();
  std::vector<std::uint32_t> xi(nl), yi(nl);
  std::vector<const SparseVec*> rows(nl);
  // Depth-first outer product over per-leg expansion rows.
  std::vector<std::size_t> ppos(nl);
  for (const auto& [fx, cx] : xs) {
    {
      std::size_t f = fx;
      for (std::size_t i = nl; i-- > 0;) {
        xi[i] = std::uint32_t(f % legs[i].dim());
        f /= legs[i].dim();
      }
    }
    for (const auto& [fy, cy] : ys) {
      std::size_t f = fy;
      for (std::size_t i = nl; i-- > 0;) {
        yi[i] = std::uint32_t(f % legs[i].dim());
        f /= legs[i].dim();
      }
      bool dead = false;
      for (std::size_t i = 0; i < nl; ++i) {
        rows[i] = &legs[i].alg->mult.row(xi[i], yi[i]);
        if (rows[i]->empty()) {
          dead = true;
          break;
        }
      }
      if (dead) continue;
      Scalar base = cx;
      base *= cy;
      std::fill(ppos.begin(), ppos.end(), 0);
      while (true) {
        std::size_t flat = 0;
        Scalar c = base;
        for (std::size_t i = 0; i < nl; ++i) {
          const auto& e = (*rows[i])[ppos[i]];
          flat = flat * legs[i].dim() + e.first;
          c *= e.second;
        }
        out.coeff(flat) += c;
        std::size_t k = nl;
        bool done = true;
        while (k-- > 0) {
          if (++ppos[k] < rows[k]->size()) {
            done = false;
            break;
          }
          ppos[k] = 0;
        }
        if (done) break;
      }
    }
  }
  return out;
}

MultiLegElement embed_legs(const MultiLegElement& x,
                           const std::vector<std::uint32_t>& positions,
                           const std::vector<Leg>& target_legs) {
  if (positions.size() != x.legs().size())
    throw std::invalid_argument("LegMismatch: position count");
  std::vector<bool> taken(target_legs.size(), false);
  for (std::size_t i = 0; i < positions.size(); ++i) {
    std::uint32_t p = positions[i];
    if (p >= target_legs.size() || taken[p])
      throw std::invalid_argument("LegMismatch: bad embed positions");
    taken[p] = true;
    if (!x.legs()[i].same_tag(target_legs[p]))
      throw std::invalid_argument("LegMismatch: incompatible leg tag at embed");
  }
  std::vector<std::uint32_t> rest;
  for (std::uint32_t p = 0; p < target_legs.size(); ++p)
    if (!taken[p]) rest.push_back(p);

  MultiLegElement out(target_legs);
  std::vector<SparseVec> units;
  units.reserve(rest.size());
  for (auto p : rest) units.push_back(target_legs[p].alg->unit_sparse());

  SparseVec xs = x.nonzeros();
  std::vector<std::uint32_t> xi(x.legs().size());
  std::vector<std::uint32_t> full(target_legs.size(), 0);
  for (const auto& [fx, cx] : xs) {
    std::size_t f = fx;
    for (std::size_t i = x.legs().size(); i-- > 0;) {
      xi[i] = std::uint32_t(f % x.legs()[i].dim());
      f /= x.legs()[i].dim();
    }
    for (std::size_t i = 0; i < positions.size(); ++i) full[positions[i]] = xi[i];
    // Expand units on the remaining legs.
    std::vector<std::size_t> pos(rest.size(), 0);
    while (true) {
      Scalar c = cx;
      bool dead = false;
      for (std::size_t i = 0; i < rest.size(); ++i) {
        if (units[i].empty()) {
          dead = true;
          break;
        }
        full[rest[i]] = units[i][pos[i]].first;
        c *= units[i][pos[i]].second;
      }
      if (dead) break;
      std::size_t flat = 0;
      for (std::size_t i = 0; i < target_legs.size(); ++i)
        flat = flat * target_legs[i].dim() + full[i];
      out.coeff(flat) += c;
      if (rest.empty()) break;
      std::size_t k = rest.size();
      bool done = true;
      while (k-- > 0) {
        if (++pos[k] < units[k].size()) {
          done = false;
          break;
        }
        pos[k] = 0;
      }
      if (done) break;
    }
  }
  return out;
}

MultiLegElement apply_matrix_to_leg(const MultiLegElement& x, std::uint32_t leg,
                                    const Matrix& f, Leg out_leg) {
  if (leg >= x.legs().size() || f.cols() != x.legs()[leg].dim() ||
      f.rows() != out_leg.dim())
    throw std::invalid_argument("DimensionMismatch: apply_matrix_to_leg");
  std::vector<Leg> legs = x.legs();
  legs[leg] = out_leg;
  MultiLegElement out(legs);
  std::vector<std::uint32_t> xi(x.legs().size());
  for (const auto& [fx, cx] : x.nonzeros()) {
    std::size_t f0 = fx;
    for (std::size_t i = x.legs().size(); i-- > 0;) {
      xi[i] = std::uint32_t(f0 % x.legs()[i].dim());
      f0 /= x.legs()[i].dim();
    }
    for (std::size_t r = 0; r < f.rows(); ++r) {
      const Scalar& m = f.at(r, xi[leg]);
      if (m.is_zero()) continue;
      auto idx = xi;
      idx[leg] = std::uint32_t(r);
      std::size_t flat = 0;
      for (std::size_t i = 0; i < legs.size(); ++i)
        flat = flat * legs[i].dim() + idx[i];
      out.coeff(flat).add_mul(cx, m);
    }
  }
  return out;
}

MultiLegElement apply_cotable_to_leg(const MultiLegElement& x, std::uint32_t leg,
                                     const CoTable& f, Leg out1, Leg out2) {
  if (leg >= x.legs().size() || f.dim() != x.legs()[leg].dim() ||
      f.out1() != out1.dim() || f.out2() != out2.dim())
    throw std::invalid_argument("DimensionMismatch: apply_cotable_to_leg");
  std::vector<Leg> legs;
  for (std::size_t i = 0; i < x.legs().size(); ++i) {
    if (i == leg) {
      legs.push_back(out1);
      legs.push_back(out2);
    } else {
      legs.push_back(x.legs()[i]);
    }
  }
  MultiLegElement out(legs);
  std::vector<std::uint32_t> xi(x.legs().size());
  for (const auto& [fx, cx] : x.nonzeros()) {
    std::size_t f0 = fx;
    for (std::size_t i = x.legs().size(); i-- > 0;) {
      xi[i] = std::uint32_t(f0 % x.legs()[i].dim());
      f0 /= x.legs()[i].dim();
    }
    for (const auto& [key, m] : f.row(xi[leg])) {
      std::uint32_t a = key / f.out2();
      std::uint32_t b = key % f.out2();
      std::size_t flat = 0;
      for (std::size_t i = 0; i < x.legs().size(); ++i) {
        if (i == leg) {
          flat = flat * out1.dim() + a;
          flat = flat * out2.dim() + b;
        } else {
          flat = flat * x.legs()[i].dim() + xi[i];
        }
      }
      out.coeff(flat).add_mul(cx, m);
    }
  }
  return out;
}

MultiLegElement apply_covector_to_leg(const MultiLegElement& x, std::uint32_t leg,
                                      const std::vector<Scalar>& f) {
  if (leg >= x.legs().size() || f.size() != x.legs()[leg].dim())
    throw std::invalid_argument("DimensionMismatch: apply_covector_to_leg");
  std::vector<Leg> legs;
  for (std::size_t i = 0; i < x.legs().size(); ++i)
    if (i != leg) legs.push_back(x.legs()[i]);
  if (legs.empty()) throw std::invalid_argument("DimensionMismatch: cannot delete last leg");
  MultiLegElement out(legs);
  std::vector<std::uint32_t> xi(x.legs().size());
  for (const auto& [fx, cx] : x.nonzeros()) {
    std::size_t f0 = fx;
    for (std::size_t i = x.legs().size(); i-- > 0;) {
      xi[i] = std::uint32_t(f0 % x.legs()[i].dim());
      f0 /= x.legs()[i].dim();
    }
    const Scalar& m = f[xi[leg]];
    if (m.is_zero()) continue;
    std::size_t flat = 0;
    for (std::size_t i = 0; i < x.legs().size(); ++i) {
      if (i == leg) continue;
      flat = flat * x.legs()[i].dim() + xi[i];
    }
    out.coeff(flat).add_mul(cx, m);
  }
  return out;
}

SparseVec two_leg_sparse_multiply(const MulTable& m1, const MulTable& m2,
                                  std::uint32_t dim2, const SparseVec& x,
                                  const SparseVec& y) {
  SparseVec out;
  for (const auto& [kx, cx] : x) {
    std::uint32_t i1 = kx / dim2, i2 = kx % dim2;
    for (const auto& [ky, cy] : y) {
      std::uint32_t j1 = ky / dim2, j2 = ky % dim2;
      const SparseVec& r1 = m1.row(i1, j1);
      if (r1.empty()) continue;
      const SparseVec& r2 = m2.row(i2, j2);
      if (r2.empty()) continue;
      Scalar c = cx;
      c *= cy;
      for (const auto& [q1, c1] : r1)
        for (const auto& [q2, c2] : r2) {
          Scalar v = c;
          v *= c1;
          v *= c2;
          out.emplace_back(q1 * dim2 + q2, std::move(v));
        }
    }
  }
  sparse_sort_combine(out);
  return out;
}

MultiLegElement apply_map_to_leg(const MultiLegElement& x, std::uint32_t leg,
                                 const LinMapOnLeg& f) {
  switch (f.kind) {
    case LinMapOnLeg::Kind::MatrixMap:
      return apply_matrix_to_leg(x, leg, f.matrix, f.matrix_out);
    case LinMapOnLeg::Kind::Expand:
      return apply_cotable_to_leg(x, leg, f.cotable, f.out1, f.out2);
    case LinMapOnLeg::Kind::Delete:
      return apply_covector_to_leg(x, leg, f.covector);
  }
  throw std::logic_error("apply_map_to_leg: bad kind");
}

}  // namespace reflectum
