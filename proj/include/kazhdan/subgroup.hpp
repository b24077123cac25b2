#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "kazhdan/group.hpp"

namespace kazhdan {

/// A subgroup of `parent`, stored as a sorted member list plus a
/// membership mask. Always closed under mul and inv.
class SubgroupHandle {
 public:
  /// Trivial subgroup of the trivial group.
  SubgroupHandle() : SubgroupHandle(FiniteGroup(), {0}) {}
  SubgroupHandle(FiniteGroup parent, std::vector<Element> members,
                 std::vector<Element> generators = {});

  const FiniteGroup& parent() const { return parent_; }
  const std::vector<Element>& members() const { return members_; }
  /// Generators used to build it (may be empty for the trivial subgroup).
  const std::vector<Element>& generators() const { return generators_; }
  std::size_t size() const { return members_.size(); }
  bool contains(Element x) const { return x < mask_.size() && mask_[x]; }
  bool is_trivial() const { return members_.size() == 1; }
  bool is_whole() const { return members_.size() == parent_.order(); }

  friend bool operator==(const SubgroupHandle& a, const SubgroupHandle& b) {
    return a.members_ == b.members_;
  }

 private:
  FiniteGroup parent_;
  std::vector<Element> members_;
  std::vector<Element> generators_;
  std::vector<char> mask_;
};

/// Surjective homomorphism source -> target with a fixed set-theoretic
/// section (projection(section(t)) == t, section(identity) == identity).
struct QuotientMap {
  FiniteGroup source;
  SubgroupHandle kernel;
  FiniteGroup target;
  std::vector<Element> projection;  // indexed by source element
  std::vector<Element> section;     // indexed by target element

  Element project(Element x) const { return projection[x]; }
  Element lift(Element t) const { return section[t]; }
};

SubgroupHandle trivial_subgroup(const FiniteGroup& g);
SubgroupHandle whole_group(const FiniteGroup& g);

/// Smallest subgroup containing gens.
SubgroupHandle subgroup_generated(const FiniteGroup& g, std::span<const Element> gens);

/// Smallest normal subgroup containing gens.
SubgroupHandle normal_closure(const FiniteGroup& g, std::span<const Element> gens);

/// Subgroup generated by all commutators g^-1 h^-1 g h.
SubgroupHandle commutator_subgroup(const FiniteGroup& g);

SubgroupHandle center(const FiniteGroup& g);

/// phi_1 = G, phi_{i+1} = phi_i^p [phi_i, G], until the chain stabilizes.
/// The trivial subgroup is included as the last entry when reached.
std::vector<SubgroupHandle> lower_p_series(const FiniteGroup& g, unsigned p);

/// For a chain from lower_p_series: every phi_i/phi_{i+1} has exponent p
/// and is central in G/phi_{i+1}. Returns the index i (0-based) of the
/// first failing layer, or nullopt when all layers pass.
std::optional<std::size_t> check_p_series_layers(const std::vector<SubgroupHandle>& series,
                                                 unsigned p);

/// (conjugator, member) such that conjugator^-1 member conjugator is outside n.
using NormalityWitness = std::pair<Element, Element>;
std::optional<NormalityWitness> normality_witness(const FiniteGroup& g, const SubgroupHandle& n);

bool is_central(const FiniteGroup& g, const SubgroupHandle& n);

/// Quotient on left cosets gN. The section picks the least element index in
/// each coset; coset indices are assigned in order of those least elements,
/// so the identity coset is 0. Throws PreconditionError when N is not normal.
QuotientMap quotient_by_normal(const FiniteGroup& g, const SubgroupHandle& n);

/// Every member of h has order dividing p (h has exponent p or is trivial).
bool has_exponent_dividing(const SubgroupHandle& h, unsigned p);

/// Subgroup of the parent viewed as a standalone table group; element i of
/// the result is members()[i]. Requires size <= kTableLimit.
FiniteGroup subgroup_as_group(const SubgroupHandle& h, std::string label = {});

}  // namespace kazhdan
