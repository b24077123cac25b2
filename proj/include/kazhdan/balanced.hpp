#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "kazhdan/group.hpp"

namespace kazhdan {

/// f = sum_x f(x) x in F_p[C_p], stored as coeffs[x] in [0, p).
struct GroupAlgebraElement {
  unsigned p = 0;
  std::vector<unsigned> coeffs;

  GroupAlgebraElement() = default;
  GroupAlgebraElement(unsigned p, std::vector<unsigned> coeffs);

  static GroupAlgebraElement zero(unsigned p);
  /// Inverse of index(): the F_p[C_p] group from make_group_algebra uses
  /// index sum_x coeffs[x] p^x.
  static GroupAlgebraElement from_index(unsigned p, Element index);
  Element index() const;

  bool is_zero() const;
  /// Translation by t: (t.f)(x) = f(x - t).
  GroupAlgebraElement rotated(unsigned t) const;
  /// Additive inverse.
  GroupAlgebraElement negated() const;

  friend bool operator==(const GroupAlgebraElement&, const GroupAlgebraElement&) = default;
};

using AlgebraMultiset = std::vector<GroupAlgebraElement>;

/// sum_x f(x) g(x) mod p.
unsigned dot(const GroupAlgebraElement& f, const GroupAlgebraElement& g);

/// e_p(a) = exp(2 pi i a / p).
std::complex<double> e_p(unsigned p, unsigned a);

/// sum over h in the multiset of e_p(f . h).
std::complex<double> charsum(std::span<const GroupAlgebraElement> multiset,
                             const GroupAlgebraElement& f);

struct BalancedReport {
  double delta_star = 0.0;  // 1 - max_{f != 0} |charsum(B, f)| / |B|
  GroupAlgebraElement witness;
  std::size_t multiset_size = 0;
};

/// Exhaustive over all p^p - 1 non-zero f. Ties go to the lexicographically
/// smallest coefficient vector (coeffs[0] most significant).
BalancedReport balance_defect(std::span<const GroupAlgebraElement> multiset);

/// Rank over F_p of T_f(h) = h f, i.e. of the circulant matrix whose rows
/// are the rotations of f.
unsigned rank_Tf(const GroupAlgebraElement& f);

/// census[k] = number of f with rank_Tf(f) = k, k = 0..p.
std::map<unsigned, std::uint64_t> rank_census(unsigned p);

/// ceil(4 c ln p / (1 - 2 delta)^2). SizeGuardError when the result would
/// exceed `cap`.
std::uint64_t required_s(unsigned p, double delta, double c, std::uint64_t cap = 1'000'000);

/// s uniform h_i, then each rotation t.h_i for t in C_{p^n} (so each
/// rotation by C_p appears p^{n-1} times); size s p^n, h-major.
AlgebraMultiset sample_orbit_union(unsigned p, unsigned n, std::size_t s, std::uint64_t seed);

struct FailureBound {
  double single = 0.0;     // 8 exp(-(1-2d)^2 r s / 4)
  double aggregate = 0.0;  // 8 sum_{r=1..p} p^r exp(-(1-2d)^2 r s / 4)
};
FailureBound failure_bound(unsigned p, double delta, unsigned r, std::uint64_t s);

/// Multiset of group-algebra elements as indices into make_group_algebra(p).additive.
std::vector<Element> to_indices(std::span<const GroupAlgebraElement> multiset);

}  // namespace kazhdan
