#include "kazhdan/balanced.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "kazhdan/errors.hpp"
#include "kazhdan/random.hpp"

namespace kazhdan {
namespace {

void require_small_prime(unsigned p) {
  if (!is_prime(p)) throw InvalidArgument("p must be prime, got " + std::to_string(p));
  if (p > 7) throw SizeGuardError("F_p[C_p] enumeration is limited to p <= 7");
}

std::uint64_t algebra_size(unsigned p) { return ipow(p, p); }

// Mod-p inverse by Fermat.
unsigned inv_mod(unsigned a, unsigned p) {
  unsigned r = 1;
  unsigned base = a % p;
  for (unsigned e = p - 2; e > 0; e >>= 1) {
    if (e & 1u) r = r * base % p;
    base = base * base % p;
  }
  return r;
}

}  // namespace

GroupAlgebraElement::GroupAlgebraElement(unsigned p_, std::vector<unsigned> coeffs_)
    : p(p_), coeffs(std::move(coeffs_)) {
  if (!is_prime(p)) throw InvalidArgument("p must be prime, got " + std::to_string(p));
  if (coeffs.size() != p) throw InvalidArgument("group-algebra element needs exactly p coefficients");
  for (unsigned c : coeffs) {
    if (c >= p) throw InvalidArgument("coefficient out of range [0, p)");
  }
}

GroupAlgebraElement GroupAlgebraElement::zero(unsigned p) {
  return GroupAlgebraElement(p, std::vector<unsigned>(p, 0));
}

GroupAlgebraElement GroupAlgebraElement::from_index(unsigned p, Element index) {
  std::vector<unsigned> c(p);
  for (unsigned x = 0; x < p; ++x) {
    c[x] = index % p;
    index /= p;
  }
  return GroupAlgebraElement(p, std::move(c));
}

Element GroupAlgebraElement::index() const {
  Element idx = 0;
  for (unsigned x = p; x-- > 0;) idx = idx * p + coeffs[x];
  return idx;
}

bool GroupAlgebraElement::is_zero() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](unsigned c) { return c == 0; });
}

GroupAlgebraElement GroupAlgebraElement::rotated(unsigned t) const {
  GroupAlgebraElement out = *this;
  t %= p;
  for (unsigned x = 0; x < p; ++x) out.coeffs[(x + t) % p] = coeffs[x];
  return out;
}

GroupAlgebraElement GroupAlgebraElement::negated() const {
  GroupAlgebraElement out = *this;
  for (auto& c : out.coeffs) c = (p - c) % p;
  return out;
}

unsigned dot(const GroupAlgebraElement& f, const GroupAlgebraElement& g) {
  if (f.p != g.p) throw InvalidArgument("dot product of elements over different primes");
  unsigned acc = 0;
  for (unsigned x = 0; x < f.p; ++x) acc = (acc + f.coeffs[x] * g.coeffs[x]) % f.p;
  return acc;
}

std::complex<double> e_p(unsigned p, unsigned a) {
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(a % p) / static_cast<double>(p));
}

std::complex<double> charsum(std::span<const GroupAlgebraElement> multiset,
                             const GroupAlgebraElement& f) {
  if (multiset.empty()) throw InvalidArgument("character sum over an empty multiset");
  // Bucket by dot value first; the f = 0 case then returns exactly |B|.
  std::vector<double> buckets(f.p, 0.0);
  for (const auto& h : multiset) buckets[dot(f, h)] += 1.0;
  std::complex<double> acc = buckets[0];
  for (unsigned k = 1; k < f.p; ++k) acc += buckets[k] * e_p(f.p, k);
  return acc;
}

BalancedReport balance_defect(std::span<const GroupAlgebraElement> multiset) {
  if (multiset.empty()) throw InvalidArgument("balance defect of an empty multiset");
  const unsigned p = multiset.front().p;
  require_small_prime(p);
  for (const auto& h : multiset) {
    if (h.p != p) throw InvalidArgument("multiset mixes different primes");
  }

  // Collapse multiplicities.
  std::vector<Element> idx;
  idx.reserve(multiset.size());
  for (const auto& h : multiset) idx.push_back(h.index());
  std::sort(idx.begin(), idx.end());
  std::vector<std::pair<std::vector<unsigned>, double>> distinct;
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j < idx.size() && idx[j] == idx[i]) ++j;
    distinct.emplace_back(GroupAlgebraElement::from_index(p, idx[i]).coeffs, static_cast<double>(j - i));
    i = j;
  }

  std::vector<std::complex<double>> roots(p);
  for (unsigned k = 0; k < p; ++k) roots[k] = e_p(p, k);

  const std::uint64_t total = algebra_size(p);
  std::vector<unsigned> f(p, 0);
  std::vector<double> buckets(p);
  double best = -1.0;
  std::vector<unsigned> best_f;
  // Odometer with the last coordinate fastest, so f runs through
  // coefficient vectors in lexicographic order.
  for (std::uint64_t step = 1; step < total; ++step) {
    for (unsigned x = p; x-- > 0;) {
      if (++f[x] < p) break;
      f[x] = 0;
    }
    std::fill(buckets.begin(), buckets.end(), 0.0);
    for (const auto& [h, count] : distinct) {
      unsigned d = 0;
      for (unsigned x = 0; x < p; ++x) d += f[x] * h[x];
      buckets[d % p] += count;
    }
    std::complex<double> acc = buckets[0];
    for (unsigned k = 1; k < p; ++k) acc += buckets[k] * roots[k];
    const double mag = std::abs(acc);
    if (mag > best + 1e-12) {
      best = mag;
      best_f = f;
    }
  }
  BalancedReport r;
  r.multiset_size = multiset.size();
  r.delta_star = std::clamp(1.0 - best / static_cast<double>(multiset.size()), 0.0, 1.0);
  r.witness = GroupAlgebraElement(p, best_f);
  return r;
}

unsigned rank_Tf(const GroupAlgebraElement& f) {
  const unsigned p = f.p;
  std::vector<std::vector<unsigned>> rows(p);
  for (unsigned t = 0; t < p; ++t) rows[t] = f.rotated(t).coeffs;
  unsigned rank = 0;
  for (unsigned col = 0; col < p && rank < p; ++col) {
    unsigned pivot = rank;
    while (pivot < p && rows[pivot][col] == 0) ++pivot;
    if (pivot == p) continue;
    std::swap(rows[pivot], rows[rank]);
    const unsigned inv = inv_mod(rows[rank][col], p);
    for (auto& v : rows[rank]) v = v * inv % p;
    for (unsigned r = 0; r < p; ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      const unsigned factor = rows[r][col];
      for (unsigned c = 0; c < p; ++c) rows[r][c] = (rows[r][c] + p * p - factor * rows[rank][c]) % p;
    }
    ++rank;
  }
  return rank;
}

std::map<unsigned, std::uint64_t> rank_census(unsigned p) {
  require_small_prime(p);
  std::map<unsigned, std::uint64_t> census;
  for (unsigned k = 0; k <= p; ++k) census[k] = 0;
  const std::uint64_t total = algebra_size(p);
  for (std::uint64_t i = 0; i < total; ++i) {
    ++census[rank_Tf(GroupAlgebraElement::from_index(p, static_cast<Element>(i)))];
  }
  return census;
}

std::uint64_t required_s(unsigned p, double delta, double c, std::uint64_t cap) {
  if (!is_prime(p)) throw InvalidArgument("p must be prime");
  if (!(delta > 0.0 && delta < 0.5)) throw InvalidArgument("delta must lie in (0, 1/2)");
  if (!(c > 1.0)) throw InvalidArgument("c must exceed 1");
  const double gap = 1.0 - 2.0 * delta;
  const double s = std::ceil(4.0 * c * std::log(static_cast<double>(p)) / (gap * gap));
  if (s > static_cast<double>(cap)) {
    throw SizeGuardError("required s = " + std::to_string(s) + " exceeds the cap " + std::to_string(cap));
  }
  return static_cast<std::uint64_t>(s);
}

AlgebraMultiset sample_orbit_union(unsigned p, unsigned n, std::size_t s, std::uint64_t seed) {
  require_small_prime(p);
  if (n == 0) throw InvalidArgument("n must be >= 1");
  if (s == 0) throw InvalidArgument("s must be >= 1");
  Rng rng(seed);
  const std::uint64_t orbit = ipow(p, n);
  AlgebraMultiset out;
  out.reserve(s * orbit);
  for (std::size_t i = 0; i < s; ++i) {
    std::vector<unsigned> c(p);
    for (auto& v : c) v = static_cast<unsigned>(rng.below(p));
    const GroupAlgebraElement h(p, std::move(c));
    for (std::uint64_t t = 0; t < orbit; ++t) out.push_back(h.rotated(static_cast<unsigned>(t % p)));
  }
  return out;
}

FailureBound failure_bound(unsigned p, double delta, unsigned r, std::uint64_t s) {
  if (r < 1 || r > p) throw InvalidArgument("rank r must lie in [1, p]");
  const double gap = 1.0 - 2.0 * delta;
  const double rate = gap * gap * static_cast<double>(s) / 4.0;
  FailureBound b;
  b.single = 8.0 * std::exp(-rate * r);
  for (unsigned k = 1; k <= p; ++k) {
    b.aggregate += std::pow(static_cast<double>(p), k) * std::exp(-rate * k);
  }
  b.aggregate *= 8.0;
  return b;
}

std::vector<Element> to_indices(std::span<const GroupAlgebraElement> multiset) {
  std::vector<Element> out;
  out.reserve(multiset.size());
  for (const auto& h : multiset) out.push_back(h.index());
  return out;
}

}  // namespace kazhdan
