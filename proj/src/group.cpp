#include "reflectum/group.hpp"

#include <stdexcept>

namespace reflectum {

void FiniteGroup::validate() const {
  if (order == 0 || mult_table.size() != std::size_t(order) * order)
    throw std::invalid_argument("InvalidGroup: bad table size");
  for (std::uint32_t a = 0; a < order; ++a) {
    std::vector<bool> row(order, false), col(order, false);
    for (std::uint32_t b = 0; b < order; ++b) {
      std::uint32_t ab = mul(a, b), ba = mul(b, a);
      if (ab >= order || ba >= order)
        throw std::invalid_argument("InvalidGroup: index out of range");
      if (row[ab] || col[ba]) throw std::invalid_argument("InvalidGroup: not a Latin square");
      row[ab] = col[ba] = true;
    }
    if (mul(0, a) != a || mul(a, 0) != a)
      throw std::invalid_argument("InvalidGroup: identity is not at index 0");
  }
  if (inverse_table.size() != order)
    throw std::invalid_argument("InvalidGroup: bad inverse table size");
  for (std::uint32_t a = 0; a < order; ++a)
    if (mul(a, inv(a)) != 0 || mul(inv(a), a) != 0)
      throw std::invalid_argument("InvalidGroup: inconsistent inverses");
  // Associativity (the Latin square property alone does not give a group).
  for (std::uint32_t a = 0; a < order; ++a)
    for (std::uint32_t b = 0; b < order; ++b)
      for (std::uint32_t c = 0; c < order; ++c)
        if (mul(mul(a, b), c) != mul(a, mul(b, c)))
          throw std::invalid_argument("InvalidGroup: non-associative table");
}

FiniteGroup cyclic_group(std::uint32_t n) {
  FiniteGroup g;
  g.order = n;
  g.name = "C" + std::to_string(n);
  g.element_labels.reserve(n);
  for (std::uint32_t i = 0; i < n; ++i)
    g.element_labels.push_back(i == 0 ? "e" : "g" + (i == 1 ? "" : std::to_string(i)));
  g.mult_table.resize(std::size_t(n) * n);
  g.inverse_table.resize(n);
  for (std::uint32_t a = 0; a < n; ++a) {
    g.inverse_table[a] = (n - a) % n;
    for (std::uint32_t b = 0; b < n; ++b) g.mult_table[std::size_t(a) * n + b] = (a + b) % n;
  }
  return g;
}

FiniteGroup symmetric_group_s3() {
  // Permutations of {0,1,2} in one-line notation, identity first.
  const int perms[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1},
                           {1, 0, 2}, {0, 2, 1}, {2, 1, 0}};
  const char* labels[6] = {"e", "r", "r2", "s", "sr", "sr2"};
  auto compose = [&](int a, int b) {
    int out[3];
    for (int i = 0; i < 3; ++i) out[i] = perms[a][perms[b][i]];
    for (int k = 0; k < 6; ++k)
      if (perms[k][0] == out[0] && perms[k][1] == out[1] && perms[k][2] == out[2]) return k;
    return -1;
  };
  FiniteGroup g;
  g.order = 6;
  g.name = "S3";
  g.element_labels.assign(labels, labels + 6);
  g.mult_table.resize(36);
  g.inverse_table.resize(6);
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      int c = compose(a, b);
      g.mult_table[a * 6 + b] = std::uint32_t(c);
      if (c == 0) g.inverse_table[a] = std::uint32_t(b);
    }
  return g;
}

FiniteGroup trivial_group() {
  FiniteGroup g;
  g.order = 1;
  g.name = "1";
  g.element_labels = {"e"};
  g.mult_table = {0};
  g.inverse_table = {0};
  return g;
}

HopfAlgebra group_algebra(const FiniteGroup& g) {
  g.validate();
  const std::uint32_t n = g.order;
  HopfAlgebra h;
  h.alg.dim = n;
  h.alg.name = "k" + g.name;
  h.alg.basis = g.element_labels;
  h.alg.mult = MulTable(n, n);
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b)
      h.alg.mult.row(a, b).emplace_back(g.mul(a, b), Scalar(1));
  h.alg.unit.assign(n, Scalar());
  h.alg.unit[0] = Scalar(1);
  h.coalg.dim = n;
  h.coalg.comult = CoTable(n, n, n);
  for (std::uint32_t a = 0; a < n; ++a)
    h.coalg.comult.row(a).emplace_back(a * n + a, Scalar(1));
  h.coalg.counit.assign(n, Scalar(1));
  h.antipode = Matrix(n, n);
  h.antipode_inv = Matrix(n, n);
  for (std::uint32_t a = 0; a < n; ++a) {
    h.antipode.at(g.inv(a), a) = Scalar(1);
    h.antipode_inv.at(a, g.inv(a)) = Scalar(1);
  }
  return h;
}

}  // namespace reflectum
