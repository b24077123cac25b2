#pragma once

#include <span>
#include <vector>

#include "kazhdan/group.hpp"

namespace kazhdan::detail {

// Breadth-first closure of {identity} under right multiplication by gens.
// For a finite group this is exactly the generated subgroup. Returns the
// members in discovery order; `mask` is resized to the group order.
inline std::vector<Element> close_under(const FiniteGroup& g, std::span<const Element> gens,
                                        std::vector<char>& mask) {
  mask.assign(g.order(), 0);
  std::vector<Element> members{g.identity()};
  mask[g.identity()] = 1;
  for (std::size_t i = 0; i < members.size(); ++i) {
    const Element x = members[i];
    for (Element s : gens) {
      const Element y = g.mul(x, s);
      if (!mask[y]) {
        mask[y] = 1;
        members.push_back(y);
      }
    }
  }
  return members;
}

// Extends an existing closure by one more generator, reusing the members
// already found. `gens` must already contain `extra`.
inline void extend_closure(const FiniteGroup& g, std::span<const Element> gens,
                           std::vector<Element>& members, std::vector<char>& mask) {
  // Every new element is a product of an old member with a word in gens,
  // so restarting the sweep over all members with the full generator list
  // reaches all of them.
  for (std::size_t i = 0; i < members.size(); ++i) {
    const Element x = members[i];
    for (Element s : gens) {
      const Element y = g.mul(x, s);
      if (!mask[y]) {
        mask[y] = 1;
        members.push_back(y);
      }
    }
  }
}

}  // namespace kazhdan::detail
