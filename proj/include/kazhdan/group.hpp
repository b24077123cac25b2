#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace kazhdan {

/// Dense element index in 0..order-1. Index 0 is always the identity.
using Element = std::uint32_t;

/// Groups up to this order get a materialized multiplication table when
/// read from disk or explicitly materialized; larger groups stay lazy.
inline constexpr std::size_t kTableLimit = 1u << 12;

/// Multiplication backend. Implementations are immutable after construction.
class GroupImpl {
 public:
  virtual ~GroupImpl() = default;
  virtual std::size_t order() const = 0;
  virtual Element mul(Element a, Element b) const = 0;
  virtual Element inv(Element a) const = 0;
  virtual bool has_table() const { return false; }
};

/// A complete finite group with element indexing. Cheap to copy: the
/// multiplication backend is shared and never mutated.
class FiniteGroup {
 public:
  /// The trivial group.
  FiniteGroup();
  FiniteGroup(std::shared_ptr<const GroupImpl> impl, std::string label,
              std::vector<Element> generators = {});

  std::size_t order() const { return impl_->order(); }
  Element identity() const { return 0; }
  Element mul(Element a, Element b) const { return impl_->mul(a, b); }
  Element inv(Element a) const { return impl_->inv(a); }
  const std::string& label() const { return label_; }
  bool has_table() const { return impl_->has_table(); }

  Element pow(Element g, std::uint64_t e) const;
  /// g^-1 h^-1 g h
  Element commutator(Element g, Element h) const;
  /// g^-1 x g
  Element conjugate(Element x, Element g) const;

  /// A generating set: the construction's natural generators when known,
  /// otherwise a greedy one computed from scratch on each call.
  std::vector<Element> generators() const;

  /// Generators commute pairwise.
  bool is_abelian() const;

  /// Same group with an explicit table. Throws SizeGuardError above kTableLimit.
  FiniteGroup materialized() const;

  FiniteGroup relabeled(std::string label) const;

  const std::shared_ptr<const GroupImpl>& impl() const { return impl_; }

 private:
  std::shared_ptr<const GroupImpl> impl_;
  std::string label_;
  std::vector<Element> generators_;
};

/// Least m >= 1 with g^m = identity.
std::uint64_t element_order(const FiniteGroup& g, Element x);

/// Z/m under addition.
FiniteGroup make_cyclic(std::size_t m);

/// Z/o_0 x Z/o_1 x ... with element index sum d_i * prod_{j<i} o_j
/// (coordinate 0 is the lowest digit).
FiniteGroup make_abelian_product(std::vector<std::uint32_t> orders, std::string label = {});

/// F_p^d.
FiniteGroup make_elementary_abelian(std::uint32_t p, std::uint32_t d);

/// Direct product with element index a + |A| * h.
FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& h);

/// Group from an explicit table (row g, column h gives g*h). Validates the
/// Latin-square property, identity at index 0, and associativity
/// (exhaustive up to kTableLimit, 10^5 sampled triples above).
FiniteGroup make_table_group(std::size_t order, std::vector<Element> table, std::string label = {});

/// Validation result: empty message means the group axioms hold.
struct AxiomReport {
  bool ok = true;
  std::string message;
};

/// Identity, inverse, Latin-square rows/columns, associativity (exhaustive
/// for order <= kTableLimit, `samples` seeded random triples otherwise).
AxiomReport check_group_axioms(const FiniteGroup& g, std::size_t samples = 100000,
                               std::uint64_t seed = 0);

/// Plain-text table format: `order N` then N rows of N indices.
void write_table(std::ostream& out, const FiniteGroup& g);
FiniteGroup read_table(std::istream& in, std::string label = {});

bool is_prime(std::uint64_t n);
std::uint64_t ipow(std::uint64_t base, unsigned exp);

}  // namespace kazhdan
