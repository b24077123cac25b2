#include "kazhdan/extension.hpp"

#include <algorithm>
#include <memory>
#include <string>

#include "kazhdan/errors.hpp"

namespace kazhdan {
namespace {

class ExtensionImpl final : public GroupImpl {
 public:
  explicit ExtensionImpl(ExtensionData data)
      : d_(std::move(data)), na_(static_cast<Element>(d_.base.order())) {}

  std::size_t order() const override { return d_.base.order() * d_.quotient.order(); }

  Element mul(Element x, Element y) const override {
    const Element a1 = x % na_, h1 = x / na_;
    const Element a2 = y % na_, h2 = y / na_;
    Element a = d_.base.mul(a1, d_.action.apply(h1, a2));
    if (!d_.cocycle.is_zero()) a = d_.base.mul(a, d_.cocycle(h1, h2));
    return a + na_ * d_.quotient.mul(h1, h2);
  }

  Element inv(Element x) const override {
    const Element a = x % na_, h = x / na_;
    const Element hi = d_.quotient.inv(h);
    Element t = d_.base.inv(a);
    if (!d_.cocycle.is_zero()) t = d_.base.mul(t, d_.base.inv(d_.cocycle(h, hi)));
    return d_.action.apply(hi, t) + na_ * hi;
  }

 private:
  ExtensionData d_;
  Element na_;
};

std::string triple_str(Element a, Element b, Element c) {
  return "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
}

}  // namespace

ActionHom::ActionHom(std::size_t acting_order, std::size_t target_order, std::vector<Element> table)
    : acting_order_(acting_order),
      target_order_(target_order),
      trivial_(false),
      table_(std::move(table)) {
  if (table_.size() != acting_order_ * target_order_) {
    throw InvalidArgument("action table has the wrong size");
  }
}

ActionHom ActionHom::trivial(std::size_t acting_order, std::size_t target_order) {
  ActionHom theta;
  theta.acting_order_ = acting_order;
  theta.target_order_ = target_order;
  return theta;
}

Cocycle::Cocycle(std::size_t quotient_order, std::vector<Element> table)
    : quotient_order_(quotient_order), table_(std::move(table)) {
  if (table_.size() != quotient_order_ * quotient_order_) {
    throw InvalidArgument("cocycle table has the wrong size");
  }
}

Cocycle Cocycle::zero(std::size_t quotient_order) {
  Cocycle c;
  c.quotient_order_ = quotient_order;
  return c;
}

std::optional<std::string> action_defect(const FiniteGroup& a, const FiniteGroup& h,
                                         const ActionHom& theta) {
  if (theta.acting_order() != h.order() || theta.target_order() != a.order()) {
    return "action dimensions do not match the groups";
  }
  if (theta.is_trivial()) return std::nullopt;
  const std::size_t na = a.order();
  std::vector<char> seen(na);
  const auto a_gens = a.generators();
  for (std::size_t x = 0; x < h.order(); ++x) {
    const auto hx = static_cast<Element>(x);
    std::fill(seen.begin(), seen.end(), 0);
    for (std::size_t y = 0; y < na; ++y) {
      const Element img = theta.apply(hx, static_cast<Element>(y));
      if (img >= na || seen[img]) return "theta(" + std::to_string(x) + ") is not a permutation";
      seen[img] = 1;
    }
    for (std::size_t y = 0; y < na; ++y) {
      const auto ay = static_cast<Element>(y);
      for (Element g : a_gens) {
        if (theta.apply(hx, a.mul(ay, g)) != a.mul(theta.apply(hx, ay), theta.apply(hx, g))) {
          return "theta(" + std::to_string(x) + ") is not a homomorphism of A";
        }
      }
    }
  }
  for (std::size_t y = 0; y < na; ++y) {
    if (theta.apply(0, static_cast<Element>(y)) != y) return "theta(identity) is not the identity";
  }
  for (Element g : h.generators()) {
    for (std::size_t x = 0; x < h.order(); ++x) {
      const auto hx = static_cast<Element>(x);
      const Element gx = h.mul(g, hx);
      for (std::size_t y = 0; y < na; ++y) {
        const auto ay = static_cast<Element>(y);
        if (theta.apply(gx, ay) != theta.apply(g, theta.apply(hx, ay))) {
          return "theta(" + std::to_string(g) + "*" + std::to_string(x) +
                 ") != theta(" + std::to_string(g) + ") o theta(" + std::to_string(x) + ")";
        }
      }
    }
  }
  return std::nullopt;
}

CocycleCheck verify_cocycle(const ExtensionData& data) {
  const FiniteGroup& a = data.base;
  const FiniteGroup& h = data.quotient;
  const Cocycle& s = data.cocycle;
  if (s.is_zero()) return {};
  const std::size_t nh = h.order();
  for (std::size_t x = 0; x < nh; ++x) {
    const auto hx = static_cast<Element>(x);
    if (s(0, hx) != 0) return {false, Triple{0, hx, 0}};
    if (s(hx, 0) != 0) return {false, Triple{hx, 0, 0}};
  }
  for (std::size_t i = 0; i < nh; ++i) {
    const auto h1 = static_cast<Element>(i);
    for (std::size_t j = 0; j < nh; ++j) {
      const auto h2 = static_cast<Element>(j);
      const Element h12 = h.mul(h1, h2);
      const Element s12 = s(h1, h2);
      for (std::size_t k = 0; k < nh; ++k) {
        const auto h3 = static_cast<Element>(k);
        const Element lhs = a.mul(data.action.apply(h1, s(h2, h3)), s(h1, h.mul(h2, h3)));
        const Element rhs = a.mul(s12, s(h12, h3));
        if (lhs != rhs) return {false, Triple{h1, h2, h3}};
      }
    }
  }
  return {};
}

Extension cocycle_extension(const ExtensionData& data, std::string label) {
  const std::size_t na = data.base.order();
  const std::size_t nh = data.quotient.order();
  if (na * nh > UINT32_MAX) throw SizeGuardError("extension too large");
  if (!data.cocycle.is_zero() && !data.base.is_abelian()) {
    throw PreconditionError("a non-zero cocycle needs an abelian base");
  }
  if (auto defect = action_defect(data.base, data.quotient, data.action)) {
    throw PreconditionError("invalid action: " + *defect);
  }
  if (!data.cocycle.is_zero() && data.cocycle.quotient_order() != nh) {
    throw InvalidArgument("cocycle table does not match the quotient order");
  }
  if (auto check = verify_cocycle(data); !check.ok) {
    const auto& w = *check.witness;
    throw PreconditionError("cocycle identity fails at " + triple_str(w[0], w[1], w[2]));
  }
  if (label.empty()) {
    label = data.base.label() + (data.cocycle.is_zero() ? " x| " : " .| ") + data.quotient.label();
  }
  const auto na32 = static_cast<Element>(na);
  std::vector<Element> gens;
  for (Element g : data.base.generators()) gens.push_back(g);
  for (Element g : data.quotient.generators()) gens.push_back(na32 * g);

  FiniteGroup group(std::make_shared<ExtensionImpl>(data), std::move(label), std::move(gens));

  std::vector<Element> projection(na * nh);
  for (std::size_t x = 0; x < projection.size(); ++x) projection[x] = static_cast<Element>(x / na);
  std::vector<Element> section(nh);
  for (std::size_t t = 0; t < nh; ++t) section[t] = static_cast<Element>(t * na);
  std::vector<Element> kernel(na);
  for (std::size_t x = 0; x < na; ++x) kernel[x] = static_cast<Element>(x);
  SubgroupHandle kernel_handle(group, std::move(kernel), data.base.generators());
  QuotientMap q{group, std::move(kernel_handle), data.quotient, std::move(projection),
                std::move(section)};
  return Extension{std::move(group), std::move(q)};
}

FiniteGroup semidirect_product(const FiniteGroup& a, const FiniteGroup& h, const ActionHom& theta,
                               std::string label) {
  if (label.empty()) label = h.label() + " x| " + a.label();
  return cocycle_extension(ExtensionData{a, h, theta, Cocycle::zero(h.order())}, std::move(label))
      .group;
}

ExtractedExtension extract_cocycle(const QuotientMap& q) {
  const FiniteGroup& g = q.source;
  const auto& kernel = q.kernel.members();
  for (std::size_t i = 0; i < kernel.size(); ++i) {
    for (std::size_t j = i + 1; j < kernel.size(); ++j) {
      if (g.mul(kernel[i], kernel[j]) != g.mul(kernel[j], kernel[i])) {
        throw PreconditionError("extract_cocycle needs an abelian kernel");
      }
    }
  }
  constexpr Element kOutside = ~Element{0};
  std::vector<Element> index_of(g.order(), kOutside);
  for (std::size_t i = 0; i < kernel.size(); ++i) index_of[kernel[i]] = static_cast<Element>(i);

  FiniteGroup base = subgroup_as_group(q.kernel, "ker");
  const FiniteGroup& h = q.target;
  const std::size_t nh = h.order();
  const std::size_t na = kernel.size();

  std::vector<Element> action(nh * na);
  std::vector<Element> sigma(nh * nh);
  for (std::size_t t = 0; t < nh; ++t) {
    const Element s = q.lift(static_cast<Element>(t));
    const Element s_inv = g.inv(s);
    for (std::size_t i = 0; i < na; ++i) {
      action[t * na + i] = index_of[g.mul(g.mul(s, kernel[i]), s_inv)];
    }
    for (std::size_t u = 0; u < nh; ++u) {
      const Element su = q.lift(static_cast<Element>(u));
      const Element stu = q.lift(h.mul(static_cast<Element>(t), static_cast<Element>(u)));
      const Element val = index_of[g.mul(g.mul(s, su), g.inv(stu))];
      if (val == kOutside) throw PreconditionError("section values do not land in the kernel");
      sigma[t * nh + u] = val;
    }
  }
  ExtensionData data{std::move(base), h, ActionHom(nh, na, std::move(action)),
                     Cocycle(nh, std::move(sigma))};
  return ExtractedExtension{std::move(data), kernel};
}

std::vector<Element> orbit_closure(const FiniteGroup& a, const FiniteGroup& h,
                                   const ActionHom& theta, std::span<const Element> b,
                                   OrbitMode mode) {
  std::vector<Element> out;
  out.reserve(b.size() * h.order());
  for (Element x : b) {
    if (x >= a.order()) throw InvalidArgument("orbit seed out of range");
    for (std::size_t t = 0; t < h.order(); ++t) out.push_back(theta.apply(static_cast<Element>(t), x));
  }
  if (mode == OrbitMode::set) {
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
  }
  return out;
}

GroupAlgebra make_group_algebra(unsigned p, unsigned n) {
  if (!is_prime(p)) throw InvalidArgument("group algebra needs a prime p, got " + std::to_string(p));
  if (p > 7) throw SizeGuardError("F_p[C_p] enumeration is limited to p <= 7");
  if (n == 0) throw InvalidArgument("acting cyclic group C_{p^n} needs n >= 1");
  const std::uint64_t na = ipow(p, p);
  const std::uint64_t nh = ipow(p, n);
  if (na * nh > (1ull << 26)) throw SizeGuardError("translation action table too large");

  GroupAlgebra alg;
  alg.p = p;
  alg.additive = make_abelian_product(std::vector<std::uint32_t>(p, p),
                                      "F_" + std::to_string(p) + "[C_" + std::to_string(p) + "]");
  alg.acting = make_cyclic(nh);
  std::vector<Element> table(na * nh);
  std::vector<unsigned> digits(p), rotated(p);
  for (std::uint64_t a = 0; a < na; ++a) {
    std::uint64_t rest = a;
    for (unsigned x = 0; x < p; ++x) {
      digits[x] = static_cast<unsigned>(rest % p);
      rest /= p;
    }
    for (std::uint64_t h = 0; h < nh; ++h) {
      const unsigned shift = static_cast<unsigned>(h % p);
      Element img = 0;
      for (unsigned x = p; x-- > 0;) img = img * p + digits[(x + p - shift) % p];
      table[h * na + a] = img;
    }
  }
  alg.translation = ActionHom(nh, na, std::move(table));
  return alg;
}

}  // namespace kazhdan
