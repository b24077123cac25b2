#include "kazhdan/group.hpp"

#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>

#include "closure.hpp"
#include "kazhdan/errors.hpp"
#include "kazhdan/random.hpp"

namespace kazhdan {
namespace {

class TableImpl final : public GroupImpl {
 public:
  TableImpl(std::size_t order, std::vector<Element> table)
      : order_(order), table_(std::move(table)), inv_(order) {
    for (std::size_t g = 0; g < order_; ++g) {
      for (std::size_t h = 0; h < order_; ++h) {
        if (table_[g * order_ + h] == 0) {
          inv_[g] = static_cast<Element>(h);
          break;
        }
      }
    }
  }
  std::size_t order() const override { return order_; }
  Element mul(Element a, Element b) const override { return table_[std::size_t{a} * order_ + b]; }
  Element inv(Element a) const override { return inv_[a]; }
  bool has_table() const override { return true; }

 private:
  std::size_t order_;
  std::vector<Element> table_;
  std::vector<Element> inv_;
};

class CyclicImpl final : public GroupImpl {
 public:
  explicit CyclicImpl(std::size_t m) : m_(m) {}
  std::size_t order() const override { return m_; }
  Element mul(Element a, Element b) const override {
    return static_cast<Element>((std::size_t{a} + b) % m_);
  }
  Element inv(Element a) const override { return a == 0 ? 0 : static_cast<Element>(m_ - a); }

 private:
  std::size_t m_;
};

class AbelianProductImpl final : public GroupImpl {
 public:
  explicit AbelianProductImpl(std::vector<std::uint32_t> orders) : orders_(std::move(orders)) {
    order_ = 1;
    for (auto o : orders_) order_ *= o;
  }
  std::size_t order() const override { return order_; }
  Element mul(Element a, Element b) const override {
    Element out = 0;
    Element stride = 1;
    for (auto o : orders_) {
      const Element d = (a % o + b % o) % o;
      out += d * stride;
      stride *= o;
      a /= o;
      b /= o;
    }
    return out;
  }
  Element inv(Element a) const override {
    Element out = 0;
    Element stride = 1;
    for (auto o : orders_) {
      const Element d = a % o;
      out += (d == 0 ? 0 : o - d) * stride;
      stride *= o;
      a /= o;
    }
    return out;
  }

 private:
  std::vector<std::uint32_t> orders_;
  std::size_t order_;
};

class DirectProductImpl final : public GroupImpl {
 public:
  DirectProductImpl(FiniteGroup a, FiniteGroup h) : a_(std::move(a)), h_(std::move(h)) {}
  std::size_t order() const override { return a_.order() * h_.order(); }
  Element mul(Element x, Element y) const override {
    const auto na = static_cast<Element>(a_.order());
    return a_.mul(x % na, y % na) + na * h_.mul(x / na, y / na);
  }
  Element inv(Element x) const override {
    const auto na = static_cast<Element>(a_.order());
    return a_.inv(x % na) + na * h_.inv(x / na);
  }

 private:
  FiniteGroup a_;
  FiniteGroup h_;
};

std::vector<Element> greedy_generators(const FiniteGroup& g) {
  std::vector<Element> gens;
  std::vector<char> mask;
  auto members = detail::close_under(g, gens, mask);
  for (std::size_t x = 0; x < g.order(); ++x) {
    if (mask[x]) continue;
    gens.push_back(static_cast<Element>(x));
    detail::extend_closure(g, gens, members, mask);
  }
  return gens;
}

}  // namespace

FiniteGroup::FiniteGroup() : FiniteGroup(make_cyclic(1)) {}

FiniteGroup::FiniteGroup(std::shared_ptr<const GroupImpl> impl, std::string label,
                         std::vector<Element> generators)
    : impl_(std::move(impl)), label_(std::move(label)), generators_(std::move(generators)) {}

Element FiniteGroup::pow(Element g, std::uint64_t e) const {
  Element result = identity();
  Element base = g;
  while (e > 0) {
    if (e & 1u) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

Element FiniteGroup::commutator(Element g, Element h) const {
  return mul(mul(inv(g), inv(h)), mul(g, h));
}

Element FiniteGroup::conjugate(Element x, Element g) const { return mul(mul(inv(g), x), g); }

std::vector<Element> FiniteGroup::generators() const {
  if (!generators_.empty() || order() == 1) return generators_;
  return greedy_generators(*this);
}

bool FiniteGroup::is_abelian() const {
  const auto gens = generators();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      if (mul(gens[i], gens[j]) != mul(gens[j], gens[i])) return false;
    }
  }
  return true;
}

FiniteGroup FiniteGroup::materialized() const {
  if (has_table()) return *this;
  const std::size_t n = order();
  if (n > kTableLimit) {
    throw SizeGuardError("cannot materialize a table for order " + std::to_string(n));
  }
  std::vector<Element> table(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      table[a * n + b] = mul(static_cast<Element>(a), static_cast<Element>(b));
    }
  }
  return FiniteGroup(std::make_shared<TableImpl>(n, std::move(table)), label_, generators_);
}

FiniteGroup FiniteGroup::relabeled(std::string label) const {
  return FiniteGroup(impl_, std::move(label), generators_);
}

std::uint64_t element_order(const FiniteGroup& g, Element x) {
  std::uint64_t m = 1;
  Element y = x;
  while (y != g.identity()) {
    y = g.mul(y, x);
    ++m;
  }
  return m;
}

FiniteGroup make_cyclic(std::size_t m) {
  if (m == 0) throw InvalidArgument("cyclic group order must be >= 1");
  std::vector<Element> gens;
  if (m > 1) gens.push_back(1);
  return FiniteGroup(std::make_shared<CyclicImpl>(m), "C_" + std::to_string(m), std::move(gens));
}

FiniteGroup make_abelian_product(std::vector<std::uint32_t> orders, std::string label) {
  std::vector<Element> gens;
  std::uint64_t stride = 1;
  for (auto o : orders) {
    if (o == 0) throw InvalidArgument("cyclic factor of order 0");
    if (o > 1) gens.push_back(static_cast<Element>(stride));
    stride *= o;
    if (stride > UINT32_MAX) throw SizeGuardError("abelian product too large");
  }
  if (label.empty()) {
    std::ostringstream os;
    for (std::size_t i = 0; i < orders.size(); ++i) os << (i ? "x" : "") << "C_" << orders[i];
    label = orders.empty() ? "1" : os.str();
  }
  return FiniteGroup(std::make_shared<AbelianProductImpl>(std::move(orders)), std::move(label),
                     std::move(gens));
}

FiniteGroup make_elementary_abelian(std::uint32_t p, std::uint32_t d) {
  return make_abelian_product(std::vector<std::uint32_t>(d, p),
                              "F_" + std::to_string(p) + "^" + std::to_string(d));
}

FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& h) {
  if (a.order() * h.order() > UINT32_MAX) throw SizeGuardError("direct product too large");
  std::vector<Element> gens;
  const auto na = static_cast<Element>(a.order());
  for (Element x : a.generators()) gens.push_back(x);
  for (Element y : h.generators()) gens.push_back(na * y);
  return FiniteGroup(std::make_shared<DirectProductImpl>(a, h), a.label() + " x " + h.label(),
                     std::move(gens));
}

FiniteGroup make_table_group(std::size_t order, std::vector<Element> table, std::string label) {
  if (order == 0) throw InvalidArgument("table order must be >= 1");
  if (table.size() != order * order) throw InvalidArgument("table size does not match order");
  for (Element x : table) {
    if (x >= order) throw InvalidArgument("table entry out of range");
  }
  FiniteGroup g(std::make_shared<TableImpl>(order, std::move(table)),
                label.empty() ? "table_" + std::to_string(order) : std::move(label));
  if (auto report = check_group_axioms(g); !report.ok) throw InvalidArgument(report.message);
  return g;
}

AxiomReport check_group_axioms(const FiniteGroup& g, std::size_t samples, std::uint64_t seed) {
  const std::size_t n = g.order();
  auto fail = [](std::string msg) { return AxiomReport{false, std::move(msg)}; };
  for (std::size_t x = 0; x < n; ++x) {
    const auto e = static_cast<Element>(x);
    if (g.mul(0, e) != e || g.mul(e, 0) != e) {
      return fail("index 0 is not a two-sided identity at element " + std::to_string(x));
    }
    if (g.mul(e, g.inv(e)) != 0 || g.mul(g.inv(e), e) != 0) {
      return fail("inverse fails at element " + std::to_string(x));
    }
  }
  // Latin square: each row and column is a permutation.
  if (n <= kTableLimit) {
    std::vector<char> seen(n);
    for (std::size_t a = 0; a < n; ++a) {
      std::fill(seen.begin(), seen.end(), 0);
      for (std::size_t b = 0; b < n; ++b) {
        const Element y = g.mul(static_cast<Element>(a), static_cast<Element>(b));
        if (seen[y]) return fail("row " + std::to_string(a) + " is not a permutation");
        seen[y] = 1;
      }
      std::fill(seen.begin(), seen.end(), 0);
      for (std::size_t b = 0; b < n; ++b) {
        const Element y = g.mul(static_cast<Element>(b), static_cast<Element>(a));
        if (seen[y]) return fail("column " + std::to_string(a) + " is not a permutation");
        seen[y] = 1;
      }
    }
    if (n <= 256) {
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
          const Element ab = g.mul(static_cast<Element>(a), static_cast<Element>(b));
          for (std::size_t c = 0; c < n; ++c) {
            const auto ec = static_cast<Element>(c);
            if (g.mul(ab, ec) !=
                g.mul(static_cast<Element>(a), g.mul(static_cast<Element>(b), ec))) {
              return fail("associativity fails at (" + std::to_string(a) + "," +
                          std::to_string(b) + "," + std::to_string(c) + ")");
            }
          }
        }
      }
      return {};
    }
    // Light's test: the elements s with (xs)y = x(sy) for all x, y form a
    // submagma, so checking a set whose left-normed products cover the
    // whole table proves associativity exactly.
    std::vector<Element> gens;
    std::vector<char> mask;
    auto members = detail::close_under(g, gens, mask);
    for (std::size_t x = 0; x < n; ++x) {
      if (mask[x]) continue;
      gens.push_back(static_cast<Element>(x));
      detail::extend_closure(g, gens, members, mask);
    }
    for (Element s : gens) {
      for (std::size_t a = 0; a < n; ++a) {
        const Element as = g.mul(static_cast<Element>(a), s);
        for (std::size_t c = 0; c < n; ++c) {
          const auto ec = static_cast<Element>(c);
          if (g.mul(as, ec) != g.mul(static_cast<Element>(a), g.mul(s, ec))) {
            return fail("associativity fails at (" + std::to_string(a) + "," +
                        std::to_string(s) + "," + std::to_string(c) + ")");
          }
        }
      }
    }
    return {};
  }
  Rng rng(seed);
  for (std::size_t i = 0; i < samples; ++i) {
    const auto a = static_cast<Element>(rng.below(n));
    const auto b = static_cast<Element>(rng.below(n));
    const auto c = static_cast<Element>(rng.below(n));
    if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c))) {
      return fail("associativity fails at (" + std::to_string(a) + "," + std::to_string(b) + "," +
                  std::to_string(c) + ")");
    }
    // Left multiplication by a is injective iff a*b == a*c forces b == c.
    if (b != c && g.mul(a, b) == g.mul(a, c)) {
      return fail("row " + std::to_string(a) + " is not a permutation");
    }
  }
  return {};
}

void write_table(std::ostream& out, const FiniteGroup& g) {
  const std::size_t n = g.order();
  out << "order " << n << '\n';
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (b) out << ' ';
      out << g.mul(static_cast<Element>(a), static_cast<Element>(b));
    }
    out << '\n';
  }
}

FiniteGroup read_table(std::istream& in, std::string label) {
  std::string keyword;
  std::size_t n = 0;
  if (!(in >> keyword >> n) || keyword != "order") {
    throw InvalidArgument("table file must start with `order N`");
  }
  if (n == 0 || n > kTableLimit) throw SizeGuardError("table order out of range");
  std::vector<Element> table(n * n);
  for (auto& x : table) {
    long long v;
    if (!(in >> v)) throw InvalidArgument("table file truncated");
    if (v < 0 || static_cast<std::size_t>(v) >= n) throw InvalidArgument("table entry out of range");
    x = static_cast<Element>(v);
  }
  return make_table_group(n, std::move(table), std::move(label));
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::uint64_t ipow(std::uint64_t base, unsigned exp) {
  std::uint64_t r = 1;
  while (exp--) r *= base;
  return r;
}

}  // namespace kazhdan
