#pragma once

#include <algorithm>
#include <array>
#include <vector>

#include "kazhdan/extension.hpp"
#include "kazhdan/group.hpp"

namespace fixtures {

using kazhdan::Element;

/// S_3 from explicit permutations of {0,1,2}; (g*h)(x) = g(h(x)).
/// Index 0 identity, 1 = (0 1), 2 = (0 1 2), then the rest in list order.
inline kazhdan::FiniteGroup s3_from_permutations() {
  const std::vector<std::array<int, 3>> perms = {
      {0, 1, 2}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {0, 2, 1}, {2, 1, 0}};
  const std::size_t n = perms.size();
  std::vector<Element> table(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      std::array<int, 3> c{};
      for (int x = 0; x < 3; ++x) c[x] = perms[a][perms[b][x]];
      table[a * n + b] = static_cast<Element>(std::find(perms.begin(), perms.end(), c) - perms.begin());
    }
  }
  return kazhdan::make_table_group(n, std::move(table), "S3");
}

/// C_3 x| C_2 with the inversion action; index a + 3h.
inline kazhdan::FiniteGroup dihedral6() {
  kazhdan::ActionHom inversion(2, 3, {0, 1, 2, 0, 2, 1});
  return kazhdan::semidirect_product(kazhdan::make_cyclic(3), kazhdan::make_cyclic(2), inversion, "D6");
}

/// Carry cocycle sigma(i, j) = floor((i + j) / p) on C_p x C_p.
inline kazhdan::Cocycle carry_cocycle(unsigned p) {
  std::vector<Element> t(p * p);
  for (unsigned i = 0; i < p; ++i) {
    for (unsigned j = 0; j < p; ++j) t[i * p + j] = (i + j) / p;
  }
  return kazhdan::Cocycle(p, std::move(t));
}

}  // namespace fixtures
