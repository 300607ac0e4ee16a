#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include "reflectum/doubles.hpp"
#include "reflectum/group.hpp"

using namespace reflectum;

namespace {

HopfPtr kc2 = std::make_shared<HopfAlgebra>(group_algebra(cyclic_group(2)));

MultiLegElement basis_elem(const std::vector<Leg>& legs,
                           const std::vector<std::uint32_t>& idx) {
  MultiLegElement x(legs);
  x.coeff(x.flat_index(idx)) = Scalar(1);
  return x;
}

}  // namespace

TEST_CASE("unit element multiplies as the identity") {
  Leg H = leg_of(kc2);
  std::vector<Leg> legs{H, H};
  MultiLegElement one = unit_element(legs);
  MultiLegElement y = basis_elem(legs, {1, 0});
  y.coeff(3) = Scalar(5, 2);
  CHECK(leg_multiply(one, y) == y);
  CHECK(leg_multiply(y, one) == y);
}

TEST_CASE("g (x) g squares to the unit in kC2 (x) kC2") {
  Leg H = leg_of(kc2);
  std::vector<Leg> legs{H, H};
  MultiLegElement gg = basis_elem(legs, {1, 1});
  CHECK(leg_multiply(gg, gg) == unit_element(legs));
}

TEST_CASE("leg mismatch is rejected") {
  Leg H = leg_of(kc2);
  auto other = std::make_shared<HopfAlgebra>(group_algebra(cyclic_group(2)));
  Leg H2 = leg_of(other);
  MultiLegElement x({H, H});
  MultiLegElement y({H, H2});
  CHECK_THROWS_AS(leg_multiply(x, y), std::invalid_argument);
  CHECK_THROWS_AS(embed_legs(x, {0, 1}, {H, H2}), std::invalid_argument);
  CHECK_THROWS_AS(embed_legs(x, {0, 0}, {H, H}), std::invalid_argument);
}

TEST_CASE("identity embedding and transposition") {
  Leg H = leg_of(kc2);
  std::vector<Leg> legs{H, H};
  MultiLegElement x(legs);
  x.coeff(x.flat_index({0, 1})) = Scalar(2);
  x.coeff(x.flat_index({1, 0})) = Scalar(3);
  CHECK(embed_legs(x, {0, 1}, legs) == x);
  MultiLegElement t = embed_legs(x, {1, 0}, legs);
  CHECK(t.coeff(t.flat_index({1, 0})) == Scalar(2));
  CHECK(t.coeff(t.flat_index({0, 1})) == Scalar(3));
}

TEST_CASE("embedding R of Drin(C2) into three legs matches the direct expansion") {
  auto dd = drinfeld_double(kc2);
  Leg D = leg_of(dd.hopf);
  std::vector<Leg> three{D, D, D};
  MultiLegElement r2 = element2(D, D, dd.r.coeffs);
  MultiLegElement left = embed_legs(r2, {0, 1}, three);
  MultiLegElement right = embed_legs(r2, {1, 2}, three);
  MultiLegElement got = leg_multiply(left, right);

  // Independent oracle: expand R12 R23 by hand for G = C2. With the basis
  // d(x)y at index 2x + y and R = sum_g d_g (x) g, the product works out to
  // sum_{g,h,x} d_g (x) d_h g (x) d_x h, all coefficients 1.
  auto drin_idx = [](std::uint32_t x, std::uint32_t y) { return 2 * x + y; };
  MultiLegElement want_full(three);
  for (std::uint32_t g = 0; g < 2; ++g)
    for (std::uint32_t h = 0; h < 2; ++h)
      for (std::uint32_t x3 = 0; x3 < 2; ++x3)
        want_full.coeff(want_full.flat_index({drin_idx(g, 0), drin_idx(h, g), drin_idx(x3, h)})) +=
            Scalar(1);
  CHECK(got == want_full);
}

TEST_CASE("applying the counit to a leg of R gives the unit") {
  auto dd = drinfeld_double(kc2);
  Leg D = leg_of(dd.hopf);
  MultiLegElement r2 = element2(D, D, dd.r.coeffs);
  MultiLegElement lhs = apply_covector_to_leg(r2, 0, dd.hopf->coalg.counit);
  CHECK(lhs == unit_element({D}));
  CHECK(apply_covector_to_leg(r2, 1, dd.hopf->coalg.counit) == unit_element({D}));
}

TEST_CASE("antipode on one leg of R inverts it") {
  auto c3 = std::make_shared<HopfAlgebra>(group_algebra(cyclic_group(3)));
  auto dd = drinfeld_double(c3);
  Leg D = leg_of(dd.hopf);
  MultiLegElement r2 = element2(D, D, dd.r.coeffs);
  MultiLegElement s1 = apply_matrix_to_leg(r2, 0, dd.hopf->antipode, D);
  // Cross-check against the inverse computed by the linear solver.
  CHECK(matrix2(s1) == dd.r.inverse_coeffs);
  // identity map leaves elements alone
  CHECK(apply_matrix_to_leg(r2, 0, Matrix::identity(dd.hopf->dim()), D) == r2);
}

TEST_CASE("expanding a leg with the coproduct") {
  Leg H = leg_of(kc2);
  MultiLegElement x({H});
  x.coeff(1) = Scalar(1);  // g
  MultiLegElement dx = apply_cotable_to_leg(x, 0, kc2->coalg.comult, H, H);
  MultiLegElement want({H, H});
  want.coeff(want.flat_index({1, 1})) = Scalar(1);  // Delta(g) = g (x) g
  CHECK(dx == want);
}

TEST_CASE("exhaustive small-dimension check: embed then multiply agrees with direct products") {
  // In (kC2)^{(x)2} multiply arbitrary basis pairs two ways.
  Leg H = leg_of(kc2);
  std::vector<Leg> legs{H, H};
  for (std::uint32_t a = 0; a < 4; ++a)
    for (std::uint32_t b = 0; b < 4; ++b) {
      MultiLegElement x(legs), y(legs);
      x.coeff(a) = Scalar(1);
      y.coeff(b) = Scalar(1);
      MultiLegElement got = leg_multiply(x, y);
      // Direct product of group elements componentwise.
      std::uint32_t i1 = a / 2, i2 = a % 2, j1 = b / 2, j2 = b % 2;
      MultiLegElement want(legs);
      want.coeff(((i1 + j1) % 2) * 2 + (i2 + j2) % 2) = Scalar(1);
      CHECK(got == want);
    }
}

TEST_CASE("leg_multiply is associative and unital on random sparse elements") {
  auto dd = drinfeld_double(kc2);
  Leg D = leg_of(dd.hopf);
  Leg H = leg_of(kc2);
  std::mt19937_64 rng(7777);
  std::uniform_int_distribution<long long> coeff(-4, 4);
  for (auto legs : {std::vector<Leg>{D, H}, std::vector<Leg>{H, H, H}, std::vector<Leg>{D, D}}) {
    MultiLegElement one = unit_element(legs);
    for (int trial = 0; trial < 10; ++trial) {
      MultiLegElement x(legs), y(legs), z(legs);
      for (std::size_t f = 0; f < x.size(); ++f) {
        x.coeff(f) = Scalar(coeff(rng), 1 + (f % 3));
        y.coeff(f) = Scalar(coeff(rng));
        z.coeff(f) = Scalar(coeff(rng), 2);
      }
      CHECK(leg_multiply(leg_multiply(x, y), z) == leg_multiply(x, leg_multiply(y, z)));
      CHECK(leg_multiply(one, x) == x);
      CHECK(leg_multiply(x, one) == x);
    }
  }
}

TEST_CASE("three-leg products of basis elements match the direct expansion exhaustively") {
  Leg H = leg_of(kc2);
  std::vector<Leg> legs{H, H, H};
  for (std::uint32_t a = 0; a < 8; ++a)
    for (std::uint32_t b = 0; b < 8; ++b) {
      MultiLegElement x(legs), y(legs);
      x.coeff(a) = Scalar(1);
      y.coeff(b) = Scalar(1);
      std::uint32_t a1 = a / 4, a2 = (a / 2) % 2, a3 = a % 2;
      std::uint32_t b1 = b / 4, b2 = (b / 2) % 2, b3 = b % 2;
      MultiLegElement want(legs);
      want.coeff((std::size_t((a1 + b1) % 2) * 2 + (a2 + b2) % 2) * 2 + (a3 + b3) % 2) =
          Scalar(1);
      CHECK(leg_multiply(x, y) == want);
    }
}

TEST_CASE("apply_map_to_leg dispatches all three map kinds") {
  Leg H = leg_of(kc2);
  MultiLegElement x({H, H});
  x.coeff(x.flat_index({1, 0})) = Scalar(3);
  {
    LinMapOnLeg f;
    f.kind = LinMapOnLeg::Kind::MatrixMap;
    f.matrix = kc2->antipode;
    f.matrix_out = H;
    CHECK(apply_map_to_leg(x, 0, f) == apply_matrix_to_leg(x, 0, kc2->antipode, H));
  }
  {
    LinMapOnLeg f;
    f.kind = LinMapOnLeg::Kind::Expand;
    f.cotable = kc2->coalg.comult;
    f.out1 = H;
    f.out2 = H;
    CHECK(apply_map_to_leg(x, 0, f) == apply_cotable_to_leg(x, 0, kc2->coalg.comult, H, H));
  }
  {
    LinMapOnLeg f;
    f.kind = LinMapOnLeg::Kind::Delete;
    f.covector = kc2->coalg.counit;
    CHECK(apply_map_to_leg(x, 1, f) == apply_covector_to_leg(x, 1, kc2->coalg.counit));
  }
}
