#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "reflectum/algebra.hpp"

namespace reflectum {

// Finite group given by its multiplication table; identity must sit at index 0.
struct FiniteGroup {
  std::uint32_t order = 0;
  std::string name;
  std::vector<std::string> element_labels;
  std::vector<std::uint32_t> mult_table;  // row-major order x order
  std::vector<std::uint32_t> inverse_table;

  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    return mult_table[std::size_t(a) * order + b];
  }
  std::uint32_t inv(std::uint32_t a) const { return inverse_table[a]; }

  // Latin square, identity at 0, inverses consistent. Throws
  // std::invalid_argument with an InvalidGroup message otherwise.
  void validate() const;
};

FiniteGroup cyclic_group(std::uint32_t n);
FiniteGroup symmetric_group_s3();
FiniteGroup trivial_group();

// Group Hopf algebra kG: grouplike basis, S(g) = g^{-1}.
HopfAlgebra group_algebra(const FiniteGroup& g);

}  // namespace reflectum
