#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kazhdan/balanced.hpp"
#include "kazhdan/extension.hpp"
#include "kazhdan/spectra.hpp"

namespace kazhdan {

/// An extension of F_p[C_p] by C_{p^n} with the translation action.
struct MetabelianInstance {
  unsigned p = 0;
  unsigned n = 0;
  bool split = true;
  FiniteGroup group;
  QuotientMap projection;                // group -> C_{p^n}
  std::vector<Element> kernel_embedding;  // algebra index -> group element
  GroupAlgebra algebra;                   // acting group is C_{p^n}

  Element embed(const GroupAlgebraElement& f) const { return kernel_embedding[f.index()]; }
};

/// C_{p^n} acting on F_p[C_p] by translation, as a semidirect product.
MetabelianInstance build_split_metabelian(unsigned p, unsigned n);

/// (C_{p^{n+1}} x| F_p[C_p]) / K with K generated by (constant 1, p^n).
/// Requires n >= 2.
MetabelianInstance build_nonsplit_metabelian(unsigned p, unsigned n);

struct NonsplitReport {
  bool nonsplit = false;
  std::uint64_t target_order = 0;             // p^n
  std::map<std::uint64_t, std::size_t> lifting_orders;  // order -> count
  std::optional<Element> witness;             // a lifting of order p^n
};

/// Enumerates every preimage of the generator 1 of C_{p^n}.
NonsplitReport verify_nonsplit(const MetabelianInstance& inst);

/// F_k / phi_3(F_k) in the variety of exponent-p^2 class-2 groups, built
/// as a central extension of F_p^k by F_p^{k(k+1)/2}.
struct GammaK2Instance {
  unsigned p = 0;
  unsigned k = 0;
  FiniteGroup group;
  QuotientMap projection;          // group -> F_p^k
  std::vector<Element> generators;  // lifts of the standard basis
};

/// Base coordinates: carries 0..k-1, then commutators [x_i, x_j] for
/// i < j in lexicographic order. `experimental` allows p = 2.
GammaK2Instance build_gamma_k2(unsigned p, unsigned k, bool experimental = false);

struct NamedCheck {
  std::string name;
  bool ok = false;
  std::string detail;
};

struct GammaK2Report {
  std::vector<NamedCheck> checks;
  bool ok() const;
};
GammaK2Report verify_gamma_k2(const GammaK2Instance& inst);

/// eps_H eps_A / (512 (1 + |S|/|B| + |B|/|S|)).
double theorem1_bound(double eps_h, double eps_a, std::size_t size_s, std::size_t size_b);

struct MainTheoremReport {
  unsigned p = 0;
  unsigned n = 0;
  bool split = true;
  std::size_t size_s = 0;
  std::size_t size_b = 0;
  double eps_h = 0.0;
  double eps_a = 0.0;
  double eps_gamma = 0.0;
  double bound = 0.0;
  double ratio = 0.0;
  bool pass = false;
  SolverMethod method = SolverMethod::dense;
};

inline constexpr double kComparisonSlack = 1e-9;

/// s: elements of C_{p^n}; b: distinct elements of F_p[C_p]; s_lift: one
/// preimage per entry of s (empty picks the canonical section).
/// PreconditionError when s does not generate C_{p^n} or the orbits of b
/// do not generate the kernel.
MainTheoremReport verify_main_theorem(const MetabelianInstance& inst, std::span<const Element> s,
                                      std::span<const GroupAlgebraElement> b,
                                      std::span<const Element> s_lift = {},
                                      const SolverConfig& cfg = {});

struct SerreReport {
  std::string group;
  std::size_t order = 0;
  std::size_t size_s = 0;
  double eps2_quotient = 0.0;  // average constant of G/A
  double relative_avg = 0.0;   // 2 beta on the complement of G/G'-functions
  double avg_bound = 0.0;      // eps2_quotient / 4
  bool avg_pass = false;
  bool vacuous = false;
  bool quotient_abelian = false;
  double eps1_quotient = 0.0;  // max-form constant of G/A, abelian quotients only
  double max_bound = 0.0;      // eps1_quotient / (2 |S|)
  double max_lower = 0.0;      // sqrt(relative_avg), a lower bound for the max form
  /// True when max_lower >= max_bound; false is inconclusive, not a failure.
  bool max_certified = false;
  bool pass = false;
};

/// PreconditionError when a is not central or s_lift does not generate g.
SerreReport verify_serre(const FiniteGroup& g, const SubgroupHandle& a, std::span<const Element> s_lift,
                         const SolverConfig& cfg = {});

/// 2 sqrt(c) / sqrt((84 sqrt(k) + 1920) (4k)^c).
double tame_delta(unsigned k, unsigned c);

enum class TameCase { c2kl1, c2kl2, c2kl3, c2kl4, otherwise, small_c };
std::string to_string(TameCase c);

struct TameBoundEntry {
  unsigned k = 0;
  unsigned c = 0;
  TameCase case_label = TameCase::small_c;
  double bound = 0.0;
  std::uint64_t nielsen_size = 0;  // 4k(k-1)
};

/// c <= 2k: small_c. Otherwise c mod 2k in {1,2,3,4} picks the matching
/// congruence branch, anything else the last branch.
TameBoundEntry tame_kazhdan_bound(unsigned k, unsigned c);

struct GEpsilonReport {
  std::string group;
  std::size_t order = 0;
  double eps = 0.0;
  std::size_t m = 0;
  std::vector<Element> witness;
  double avg_kazhdan = 0.0;
  double verified_avg = 0.0;  // recomputed on the witness
  std::size_t trials = 0;
  std::size_t cap = 0;
  std::vector<double> best_by_size;  // best avg constant seen for m = 1, 2, ...
};

/// 2 ceil(log2 |G|) + 2, clipped to |G| - 1.
std::size_t default_search_cap(std::size_t order);

/// Smallest m <= cap for which one of `trials` uniform m-subsets of
/// non-identity elements reaches avg_kazhdan >= eps. Trial t at size m
/// draws from seed + (m - 1) * trials + t. SearchCapError past the cap.
GEpsilonReport g_epsilon_search(const FiniteGroup& g, double eps, std::size_t trials, std::uint64_t seed,
                                std::size_t cap = 0, const SolverConfig& cfg = {});

}  // namespace kazhdan
