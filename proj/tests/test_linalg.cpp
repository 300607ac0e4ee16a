#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "reflectum/linalg.hpp"

using namespace reflectum;

namespace {

Matrix from_rows(std::initializer_list<std::initializer_list<long long>> rows) {
  std::size_t r = rows.size(), c = rows.begin()->size();
  Matrix m(r, c);
  std::size_t i = 0;
  for (const auto& row : rows) {
    std::size_t j = 0;
    for (long long v : row) m.at(i, j++) = Scalar(v);
    ++i;
  }
  return m;
}

}  // namespace

TEST_CASE("solve against the identity returns the right-hand side") {
  Matrix b = from_rows({{5}, {-2}, {7, }});
  auto x = solve_linear(Matrix::identity(3), b);
  REQUIRE(x.has_value());
  CHECK(*x == b);
}

TEST_CASE("inconsistent rows yield no solution") {
  Matrix a = from_rows({{1, 1}, {1, 1}});
  Matrix b = from_rows({{1}, {2}});
  CHECK(!solve_linear(a, b).has_value());
}

TEST_CASE("scalar division") {
  Matrix a = from_rows({{2}});
  Matrix b = from_rows({{3}});
  auto x = solve_linear(a, b);
  REQUIRE(x.has_value());
  CHECK(x->at(0, 0) == Scalar(3, 2));
}

TEST_CASE("underdetermined systems set free coordinates to zero") {
  // x0 + x1 = 1 with free x1 -> (1, 0).
  Matrix a = from_rows({{1, 1}});
  Matrix b = from_rows({{1}});
  auto x = solve_linear(a, b);
  REQUIRE(x.has_value());
  CHECK(x->at(0, 0) == Scalar(1));
  CHECK(x->at(1, 0) == Scalar(0));
}

TEST_CASE("random square systems solve exactly") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long long> d(-6, 6);
  for (int trial = 0; trial < 50; ++trial) {
    std::size_t n = 1 + trial % 7;
    Matrix a(n, n), xs(n, 2);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) a.at(i, j) = Scalar(d(rng));
      xs.at(i, 0) = Scalar(d(rng), 1 + (i % 3));
      xs.at(i, 1) = Scalar(d(rng));
    }
    Matrix b = a * xs;
    auto got = solve_linear(a, b);
    REQUIRE(got.has_value());
    CHECK(a * *got == b);
  }
}

TEST_CASE("invert and rank and kernel") {
  Matrix a = from_rows({{1, 2}, {3, 5}});
  auto ai = invert(a);
  REQUIRE(ai.has_value());
  CHECK((*ai * a).is_identity());
  CHECK(rank(a) == 2);

  Matrix s = from_rows({{1, 2}, {2, 4}});
  CHECK(!invert(s).has_value());
  CHECK(rank(s) == 1);
  Matrix k = kernel_basis(s);
  REQUIRE(k.cols() == 1);
  // s * k = 0
  Matrix prod = s * k;
  for (std::size_t i = 0; i < prod.rows(); ++i) CHECK(prod.at(i, 0).is_zero());
}

TEST_CASE("sparse helpers") {
  SparseVec v{{3, Scalar(1)}, {1, Scalar(2)}, {3, Scalar(-1)}};
  sparse_sort_combine(v);
  REQUIRE(v.size() == 1);
  CHECK(v[0].first == 1);
  SparseVec w{{1, Scalar(1)}, {2, Scalar(1)}};
  sparse_axpy(w, Scalar(-1), SparseVec{{1, Scalar(1)}});
  REQUIRE(w.size() == 1);
  CHECK(w[0].first == 2);
}
