#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kazhdan/group.hpp"
#include "kazhdan/subgroup.hpp"

namespace kazhdan {

/// Left action of H on A by automorphisms: apply(h, a) = theta(h)(a), with
/// theta(h1 h2) = theta(h1) o theta(h2). Stored as an |H| x |A| table.
class ActionHom {
 public:
  ActionHom() = default;
  ActionHom(std::size_t acting_order, std::size_t target_order, std::vector<Element> table);

  static ActionHom trivial(std::size_t acting_order, std::size_t target_order);

  std::size_t acting_order() const { return acting_order_; }
  std::size_t target_order() const { return target_order_; }
  Element apply(Element h, Element a) const {
    return trivial_ ? a : table_[std::size_t{h} * target_order_ + a];
  }
  bool is_trivial() const { return trivial_; }

 private:
  std::size_t acting_order_ = 0;
  std::size_t target_order_ = 0;
  bool trivial_ = true;
  std::vector<Element> table_;
};

/// sigma: H x H -> A as an |H| x |H| table of A-indices. An empty table is
/// the zero cocycle.
class Cocycle {
 public:
  Cocycle() = default;
  Cocycle(std::size_t quotient_order, std::vector<Element> table);

  static Cocycle zero(std::size_t quotient_order);

  Element operator()(Element h1, Element h2) const {
    return table_.empty() ? 0 : table_[std::size_t{h1} * quotient_order_ + h2];
  }
  bool is_zero() const { return table_.empty(); }
  std::size_t quotient_order() const { return quotient_order_; }
  const std::vector<Element>& table() const { return table_; }

 private:
  std::size_t quotient_order_ = 0;
  std::vector<Element> table_;
};

/// Extension of `base` A by `quotient` H (A abelian whenever the cocycle
/// is non-zero): pairs (a, h) with
/// (a1,h1)(a2,h2) = (a1 * theta(h1)(a2) * sigma(h1,h2), h1 h2).
/// Element (a, h) has index a + |A| * h.
struct ExtensionData {
  FiniteGroup base;
  FiniteGroup quotient;
  ActionHom action;
  Cocycle cocycle;
};

using Triple = std::array<Element, 3>;

/// Why an ActionHom is not a valid left action by automorphisms.
std::optional<std::string> action_defect(const FiniteGroup& a, const FiniteGroup& h,
                                         const ActionHom& theta);

/// Exhaustive check of normalization and the cocycle identity
/// theta(h1)(s(h2,h3)) s(h1,h2h3) = s(h1,h2) s(h1h2,h3). On failure returns
/// the first violating triple in lexicographic order. A normalization
/// failure sigma(0,h) != 0 is reported as (0, h, 0), sigma(h,0) != 0 as
/// (h, 0, 0).
struct CocycleCheck {
  bool ok = true;
  std::optional<Triple> witness;
};
CocycleCheck verify_cocycle(const ExtensionData& data);

/// Builds the extension group together with its projection onto H
/// (section h -> (0, h), kernel {(a, 0)} = indices 0..|A|-1).
/// Throws PreconditionError naming the witness triple when the cocycle
/// identity fails, or when the action is invalid.
struct Extension {
  FiniteGroup group;
  QuotientMap projection;
};
Extension cocycle_extension(const ExtensionData& data, std::string label = {});

/// A x| H with the zero cocycle; same indexing as cocycle_extension.
FiniteGroup semidirect_product(const FiniteGroup& a, const FiniteGroup& h, const ActionHom& theta,
                               std::string label = {});

/// Inverse of cocycle_extension for a quotient map with abelian kernel:
/// base = kernel (element i is kernel.members()[i]), theta(h) = conjugation
/// by the section, sigma(h1,h2) = s(h1) s(h2) s(h1h2)^-1. Then
/// (a, h) -> a * s(h) is an isomorphism from the rebuilt extension.
struct ExtractedExtension {
  ExtensionData data;
  std::vector<Element> kernel_elements;  // base index -> source element
};
ExtractedExtension extract_cocycle(const QuotientMap& q);

/// Union of H-orbits of B. Set mode: sorted distinct elements. Multiset
/// mode: theta(x)(b) for every b in B and x in H, b-major (size |B||H|).
enum class OrbitMode { set, multiset };
std::vector<Element> orbit_closure(const FiniteGroup& a, const FiniteGroup& h,
                                   const ActionHom& theta, std::span<const Element> b,
                                   OrbitMode mode = OrbitMode::multiset);

/// F_p[C_p] as an additive group (index sum_x f(x) p^x) together with the
/// translation action of C_{p^n}: (theta(h) f)(x) = f(x - h mod p).
struct GroupAlgebra {
  unsigned p = 0;
  FiniteGroup additive;
  FiniteGroup acting;
  ActionHom translation;
};
GroupAlgebra make_group_algebra(unsigned p, unsigned n = 1);

}  // namespace kazhdan
