#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "kazhdan/group.hpp"
#include "kazhdan/subgroup.hpp"

namespace kazhdan {

/// Normalized averaging operator of a Cayley graph:
///   (M v)(g) = (1/degree) * sum_s v(g s)
/// over the symmetrized multiset S + S^-1 (degree = 2|S|). Symmetrizing is
/// loss-free for average Kazhdan constants because
/// ||rho(s)v - v|| = ||rho(s^-1)v - v|| for unitary rho.
class CayleyOperator {
 public:
  CayleyOperator(FiniteGroup group, std::vector<Element> raw_generators);

  const FiniteGroup& group() const { return group_; }
  std::size_t order() const { return group_.order(); }
  /// The multiset as given.
  const std::vector<Element>& raw_generators() const { return raw_; }
  /// raw followed by the inverses of raw, in the same order.
  const std::vector<Element>& generators() const { return symmetric_; }
  std::size_t degree() const { return symmetric_.size(); }
  /// Identity appears in the multiset (self-loops in the graph).
  bool has_self_loops() const { return self_loops_; }

  /// out = M in. Both spans have length order().
  void apply(std::span<const double> in, std::span<double> out) const;

  /// g * generators()[j]
  Element neighbor(Element g, std::size_t j) const { return neighbors_[std::size_t{g} * degree() + j]; }

 private:
  FiniteGroup group_;
  std::vector<Element> raw_;
  std::vector<Element> symmetric_;
  std::vector<Element> neighbors_;
  bool self_loops_ = false;
};

/// Throws InvalidArgument on an empty multiset or out-of-range element.
CayleyOperator build_cayley(const FiniteGroup& g, std::span<const Element> s);

enum class SolverMethod { characters, dense, iterative };
std::string to_string(SolverMethod m);

struct SpectralReport {
  std::string group;
  std::size_t order = 0;
  std::size_t degree = 0;
  double lambda2 = 1.0;  // second largest eigenvalue (largest on the deflated space for relative gaps)
  double beta = 0.0;     // 1 - lambda2
  double avg_kazhdan = 0.0;  // 2 * beta
  SolverMethod method = SolverMethod::dense;
  double tolerance = 1e-12;
  long iterations = 0;
  bool connected = true;
  /// No representation is left to measure (trivial group, or an empty
  /// deflated space); beta = 2 is reported as a sentinel.
  bool vacuous = false;
  double residual = 0.0;
  std::uint64_t seed = 0;
};

/// Character table of a finite abelian group. The group is built as a chain
/// <g_1> <= <g_1,g_2> <= ..., each element gets coordinates (e_1,...,e_r)
/// with x = g_1^e_1 ... g_r^e_r, and each character is a phase vector
/// (phi_1,...,phi_r) mod E with chi(x) = exp(2 pi i sum e_j phi_j / E).
class AbelianDual {
 public:
  explicit AbelianDual(const FiniteGroup& g);  // PreconditionError if non-abelian

  std::size_t size() const { return order_; }
  std::uint64_t exponent() const { return exponent_; }
  std::size_t rank() const { return chain_.size(); }
  /// Phase of chi(x), in units of 2 pi / exponent().
  std::uint64_t phase(std::span<const std::uint64_t> chi, Element x) const;

  /// Calls f(chi) for every non-trivial character, chi a span of rank()
  /// phases. Enumeration order is deterministic.
  template <class F>
  void for_each_nontrivial(F&& f) const;

 private:
  struct Step {
    Element generator;
    std::uint64_t index;          // m: least m with g^m in the previous subgroup
    std::vector<std::uint32_t> power_coords;  // coordinates of g^m
  };
  std::size_t order_ = 0;
  std::uint64_t exponent_ = 1;
  std::vector<Step> chain_;
  std::vector<std::uint32_t> coords_;  // order_ x rank()

  template <class F>
  void enumerate(std::size_t depth, std::vector<std::uint64_t>& chi, bool nontrivial, F& f) const;
};

/// Exact lambda2 from characters: max over chi != 1 of (1/degree) sum_s Re chi(s).
SpectralReport abelian_gap_characters(const CayleyOperator& op);
SpectralReport abelian_gap_characters(const CayleyOperator& op, const AbelianDual& dual);

/// Full symmetric eigensolve of the materialized operator.
SpectralReport gap_dense(const CayleyOperator& op, std::size_t dense_threshold = kTableLimit);

struct IterativeOptions {
  double tol = 1e-7;
  long max_iter = 0;  // matrix-vector products; 0: ceil(200 ln(order)), at least 200
  std::uint64_t seed = 0;
  int block = 4;      // starting block and Ritz vectors kept across restarts
};

/// Thick-restart Lanczos on the complement of the constants; stops when the
/// top Ritz pair has ||M v - lambda v|| <= tol. Throws ConvergenceError
/// otherwise.
SpectralReport gap_iterative(const CayleyOperator& op, const IterativeOptions& opts = {});

struct RelativeGapOptions {
  std::size_t dense_threshold = kTableLimit;
  IterativeOptions iterative{1e-8, 0, 0, 4};
};

/// Gap of M restricted to the orthogonal complement of the functions
/// constant on cosets of the normal subgroup n. With n = G' this measures
/// exactly the irreducibles of dimension >= 2. Empty complement gives a
/// vacuous report.
SpectralReport relative_gap_deflated(const CayleyOperator& op, const SubgroupHandle& n,
                                     const RelativeGapOptions& opts = {});

/// epsilon_1 = min over chi != 1 of max_{s in raw} |chi(s) - 1|.
double kazhdan_max_abelian(const CayleyOperator& op, std::span<const Element> raw);
double kazhdan_max_abelian(const AbelianDual& dual, std::span<const Element> raw);

/// min over chi != 1 of (1/|S|) sum_{s in raw} |chi(s) - 1|^2, evaluated
/// directly from the definition.
double average_kazhdan_definitional(const AbelianDual& dual, std::span<const Element> raw);

struct SolverConfig {
  std::size_t dense_threshold = kTableLimit;
  IterativeOptions iterative{};
};

/// Characters for abelian groups, dense up to the threshold, iterative above.
SpectralReport best_gap(const CayleyOperator& op, const SolverConfig& cfg = {});

// ---------------------------------------------------------------------------

template <class F>
void AbelianDual::for_each_nontrivial(F&& f) const {
  std::vector<std::uint64_t> chi(rank(), 0);
  enumerate(0, chi, false, f);
}

template <class F>
void AbelianDual::enumerate(std::size_t depth, std::vector<std::uint64_t>& chi, bool nontrivial,
                            F& f) const {
  if (depth == chain_.size()) {
    if (nontrivial) f(std::span<const std::uint64_t>(chi));
    return;
  }
  const Step& step = chain_[depth];
  // chi(g^m) is already fixed by the earlier coordinates; the m choices of
  // chi(g) are its m-th roots.
  std::uint64_t c = 0;
  for (std::size_t j = 0; j < depth; ++j) c += step.power_coords[j] * chi[j];
  c %= exponent_;
  const std::uint64_t base = c / step.index;
  const std::uint64_t stride = exponent_ / step.index;
  for (std::uint64_t j = 0; j < step.index; ++j) {
    chi[depth] = (base + stride * j) % exponent_;
    enumerate(depth + 1, chi, nontrivial || chi[depth] != 0, f);
  }
}

}  // namespace kazhdan
