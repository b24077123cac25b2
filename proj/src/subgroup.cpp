#include "kazhdan/subgroup.hpp"

#include <algorithm>
#include <memory>
#include <string>

#include "closure.hpp"
#include "kazhdan/errors.hpp"

namespace kazhdan {
namespace {

class QuotientImpl final : public GroupImpl {
 public:
  QuotientImpl(FiniteGroup source, std::vector<Element> projection, std::vector<Element> section)
      : source_(std::move(source)),
        projection_(std::move(projection)),
        section_(std::move(section)) {}
  std::size_t order() const override { return section_.size(); }
  Element mul(Element a, Element b) const override {
    return projection_[source_.mul(section_[a], section_[b])];
  }
  Element inv(Element a) const override { return projection_[source_.inv(section_[a])]; }

 private:
  FiniteGroup source_;
  std::vector<Element> projection_;
  std::vector<Element> section_;
};

SubgroupHandle from_closure(const FiniteGroup& g, std::vector<Element> members,
                            std::vector<Element> gens) {
  std::sort(members.begin(), members.end());
  return SubgroupHandle(g, std::move(members), std::move(gens));
}

}  // namespace

SubgroupHandle::SubgroupHandle(FiniteGroup parent, std::vector<Element> members,
                               std::vector<Element> generators)
    : parent_(std::move(parent)),
      members_(std::move(members)),
      generators_(std::move(generators)),
      mask_(parent_.order(), 0) {
  std::sort(members_.begin(), members_.end());
  for (Element x : members_) {
    if (x >= parent_.order()) throw InvalidArgument("subgroup member out of range");
    mask_[x] = 1;
  }
}

SubgroupHandle trivial_subgroup(const FiniteGroup& g) { return SubgroupHandle(g, {g.identity()}); }

SubgroupHandle whole_group(const FiniteGroup& g) {
  std::vector<Element> all(g.order());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<Element>(i);
  return SubgroupHandle(g, std::move(all), g.generators());
}

SubgroupHandle subgroup_generated(const FiniteGroup& g, std::span<const Element> gens) {
  for (Element s : gens) {
    if (s >= g.order()) throw InvalidArgument("generator " + std::to_string(s) + " out of range");
  }
  std::vector<Element> kept;
  for (Element s : gens) {
    if (s != g.identity() && std::find(kept.begin(), kept.end(), s) == kept.end()) kept.push_back(s);
  }
  std::vector<char> mask;
  auto members = detail::close_under(g, kept, mask);
  return from_closure(g, std::move(members), std::move(kept));
}

SubgroupHandle normal_closure(const FiniteGroup& g, std::span<const Element> gens) {
  const auto conjugators = g.generators();
  std::vector<Element> current;
  std::vector<char> mask;
  auto members = detail::close_under(g, current, mask);
  auto add = [&](Element x) {
    if (mask[x]) return false;
    current.push_back(x);
    detail::extend_closure(g, current, members, mask);
    return true;
  };
  for (Element s : gens) add(s);
  // Conjugates of the generators by the generators of g must land inside;
  // add any that do not and repeat until stable.
  bool grew = true;
  while (grew) {
    grew = false;
    for (std::size_t i = 0; i < current.size(); ++i) {
      for (Element t : conjugators) {
        if (add(g.conjugate(current[i], t))) grew = true;
      }
    }
  }
  return from_closure(g, std::move(members), std::move(current));
}

SubgroupHandle commutator_subgroup(const FiniteGroup& g) {
  const auto gens = g.generators();
  std::vector<Element> comms;
  for (Element a : gens) {
    for (Element b : gens) {
      const Element c = g.commutator(a, b);
      if (c != g.identity()) comms.push_back(c);
    }
  }
  return normal_closure(g, comms);
}

SubgroupHandle center(const FiniteGroup& g) {
  const auto gens = g.generators();
  std::vector<Element> members;
  for (std::size_t x = 0; x < g.order(); ++x) {
    const auto z = static_cast<Element>(x);
    const bool central = std::all_of(gens.begin(), gens.end(),
                                     [&](Element s) { return g.mul(z, s) == g.mul(s, z); });
    if (central) members.push_back(z);
  }
  return SubgroupHandle(g, std::move(members));
}

std::vector<SubgroupHandle> lower_p_series(const FiniteGroup& g, unsigned p) {
  if (!is_prime(p)) throw InvalidArgument("lower p-series needs a prime p");
  const auto g_gens = g.generators();
  std::vector<SubgroupHandle> series{whole_group(g)};
  while (!series.back().is_trivial()) {
    const SubgroupHandle& phi = series.back();
    std::vector<Element> seeds;
    // phi^p is characteristic in phi, [phi, G] is the normal closure of
    // commutators of generators, so the normal closure of both generates
    // phi^p [phi, G].
    for (Element x : phi.members()) {
      const Element y = g.pow(x, p);
      if (y != g.identity()) seeds.push_back(y);
    }
    auto phi_gens = phi.generators();
    if (phi_gens.empty()) phi_gens = phi.members();
    for (Element x : phi_gens) {
      for (Element t : g_gens) {
        const Element c = g.commutator(x, t);
        if (c != g.identity()) seeds.push_back(c);
      }
    }
    std::sort(seeds.begin(), seeds.end());
    seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());
    auto next = normal_closure(g, seeds);
    if (next.size() == phi.size()) break;
    series.push_back(std::move(next));
  }
  return series;
}

std::optional<std::size_t> check_p_series_layers(const std::vector<SubgroupHandle>& series,
                                                 unsigned p) {
  if (series.empty()) return std::nullopt;
  const FiniteGroup& g = series.front().parent();
  const auto g_gens = g.generators();
  for (std::size_t i = 0; i + 1 < series.size(); ++i) {
    const auto& upper = series[i];
    const auto& lower = series[i + 1];
    for (Element x : upper.members()) {
      if (!lower.contains(g.pow(x, p))) return i;
      for (Element t : g_gens) {
        if (!lower.contains(g.commutator(x, t))) return i;
      }
    }
  }
  return std::nullopt;
}

std::optional<NormalityWitness> normality_witness(const FiniteGroup& g, const SubgroupHandle& n) {
  auto n_gens = n.generators();
  if (n_gens.empty()) n_gens = n.members();
  for (Element x : n_gens) {
    for (Element t : g.generators()) {
      if (!n.contains(g.conjugate(x, t))) return NormalityWitness{t, x};
    }
  }
  return std::nullopt;
}

bool is_central(const FiniteGroup& g, const SubgroupHandle& n) {
  const auto gens = g.generators();
  for (Element z : n.members()) {
    for (Element s : gens) {
      if (g.mul(z, s) != g.mul(s, z)) return false;
    }
  }
  return true;
}

QuotientMap quotient_by_normal(const FiniteGroup& g, const SubgroupHandle& n) {
  if (auto w = normality_witness(g, n)) {
    throw PreconditionError("subgroup is not normal: conjugating " + std::to_string(w->second) +
                            " by " + std::to_string(w->first) + " leaves it");
  }
  constexpr Element kUnset = ~Element{0};
  std::vector<Element> projection(g.order(), kUnset);
  std::vector<Element> section;
  section.reserve(g.order() / n.size());
  for (std::size_t x = 0; x < g.order(); ++x) {
    if (projection[x] != kUnset) continue;
    const auto idx = static_cast<Element>(section.size());
    section.push_back(static_cast<Element>(x));
    for (Element m : n.members()) projection[g.mul(static_cast<Element>(x), m)] = idx;
  }
  std::vector<Element> target_gens;
  for (Element s : g.generators()) {
    const Element t = projection[s];
    if (t != 0 && std::find(target_gens.begin(), target_gens.end(), t) == target_gens.end()) {
      target_gens.push_back(t);
    }
  }
  FiniteGroup target(std::make_shared<QuotientImpl>(g, projection, section),
                     g.label() + "/N" + std::to_string(n.size()), std::move(target_gens));
  return QuotientMap{g, n, std::move(target), std::move(projection), std::move(section)};
}

bool has_exponent_dividing(const SubgroupHandle& h, unsigned p) {
  const FiniteGroup& g = h.parent();
  return std::all_of(h.members().begin(), h.members().end(),
                     [&](Element x) { return g.pow(x, p) == g.identity(); });
}

FiniteGroup subgroup_as_group(const SubgroupHandle& h, std::string label) {
  const std::size_t n = h.size();
  if (n > kTableLimit) throw SizeGuardError("subgroup too large to tabulate");
  const FiniteGroup& g = h.parent();
  const auto& mem = h.members();
  std::vector<Element> table(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Element prod = g.mul(mem[i], mem[j]);
      table[i * n + j] = static_cast<Element>(std::lower_bound(mem.begin(), mem.end(), prod) -
                                              mem.begin());
    }
  }
  return make_table_group(n, std::move(table),
                          label.empty() ? g.label() + "_sub" + std::to_string(n) : std::move(label));
}

}  // namespace kazhdan
