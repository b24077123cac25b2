#include <doctest.h>

#include <algorithm>
#include <set>

#include "fixtures.hpp"
#include "kazhdan/errors.hpp"
#include "kazhdan/lab.hpp"
#include "kazhdan/subgroup.hpp"

using namespace kazhdan;

namespace {

// Closure of an arbitrary set under multiplication by brute force.
std::set<Element> brute_closure(const FiniteGroup& g, std::set<Element> s) {
  s.insert(g.identity());
  for (bool grew = true; grew;) {
    grew = false;
    const std::vector<Element> cur(s.begin(), s.end());
    for (Element a : cur) {
      for (Element b : cur) grew |= s.insert(g.mul(a, b)).second;
    }
  }
  return s;
}

std::set<Element> as_set(const SubgroupHandle& h) { return {h.members().begin(), h.members().end()}; }

}  // namespace

TEST_CASE("subgroup_generated") {
  const auto c6 = make_cyclic(6);
  CHECK(subgroup_generated(c6, std::vector<Element>{}).is_trivial());
  const Element two[] = {2};
  const auto h = subgroup_generated(c6, two);
  CHECK(h.members() == std::vector<Element>{0, 2, 4});
  CHECK(h.contains(4));
  CHECK_FALSE(h.contains(3));

  const auto alg = make_group_algebra(3);
  const Element e0[] = {1};
  const auto orbit = orbit_closure(alg.additive, alg.acting, alg.translation, e0, OrbitMode::set);
  CHECK(subgroup_generated(alg.additive, orbit).is_whole());
  CHECK_THROWS_AS(subgroup_generated(c6, std::vector<Element>{6}), InvalidArgument);
}

TEST_CASE("subgroup_generated is closed and minimal against brute force") {
  const auto g = fixtures::dihedral6();
  for (Element a = 0; a < g.order(); ++a) {
    for (Element b = 0; b < g.order(); ++b) {
      const Element gens[] = {a, b};
      const auto h = subgroup_generated(g, gens);
      CHECK(as_set(h) == brute_closure(g, {a, b}));
      // Closing the members again changes nothing.
      CHECK(subgroup_generated(g, h.members()) == h);
    }
  }
}

TEST_CASE("commutator subgroup") {
  CHECK(commutator_subgroup(make_elementary_abelian(3, 2)).is_trivial());
  const auto d6 = fixtures::dihedral6();
  std::set<Element> comms;
  for (Element a = 0; a < 6; ++a) {
    for (Element b = 0; b < 6; ++b) comms.insert(d6.commutator(a, b));
  }
  const auto oracle = brute_closure(d6, comms);
  CHECK(oracle.size() == 3);
  CHECK(as_set(commutator_subgroup(d6)) == oracle);
  CHECK(commutator_subgroup(fixtures::s3_from_permutations()).size() == 3);
}

TEST_CASE("center") {
  CHECK(center(make_cyclic(8)).is_whole());
  CHECK(center(fixtures::dihedral6()).is_trivial());
  // In F_3[C_3] x| C_27 the kernel part of the center is the constant vectors.
  const auto alg = make_group_algebra(3, 3);
  const auto g = semidirect_product(alg.additive, alg.acting, alg.translation);
  CHECK(g.order() == 729);
  const auto z = center(g);
  std::vector<Element> kernel_central;
  for (Element x : z.members()) {
    if (x < 27) kernel_central.push_back(x);
  }
  // constants c(1,1,1) have index c * (1 + 3 + 9) = 13c
  CHECK(kernel_central == std::vector<Element>{0, 13, 26});
}

TEST_CASE("lower p-series") {
  const auto f = lower_p_series(make_elementary_abelian(3, 2), 3);
  REQUIRE(f.size() == 2);
  CHECK(f[1].is_trivial());

  const auto c9 = lower_p_series(make_cyclic(9), 3);
  REQUIRE(c9.size() == 3);
  CHECK(c9[1].members() == std::vector<Element>{0, 3, 6});
  CHECK(c9[2].is_trivial());
  CHECK_FALSE(check_p_series_layers(c9, 3).has_value());

  const auto gamma = build_gamma_k2(3, 2);
  const auto s = lower_p_series(gamma.group, 3);
  REQUIRE(s.size() == 3);
  CHECK(s[1].size() == 27);
  CHECK(s[2].is_trivial());
  CHECK_FALSE(check_p_series_layers(s, 3).has_value());
}

TEST_CASE("p-series layer check flags a bad chain") {
  // C_9 > {0} is not a valid layer for p = 3: 1^3 = 3 is not trivial.
  const auto c9 = make_cyclic(9);
  std::vector<SubgroupHandle> chain{whole_group(c9), trivial_subgroup(c9)};
  const auto bad = check_p_series_layers(chain, 3);
  REQUIRE(bad.has_value());
  CHECK(*bad == 0);
}

TEST_CASE("normality and quotients") {
  const auto d6 = fixtures::dihedral6();
  const Element flip[] = {3};
  const auto reflection = subgroup_generated(d6, flip);
  CHECK(normality_witness(d6, reflection).has_value());
  CHECK_THROWS_AS(quotient_by_normal(d6, reflection), PreconditionError);

  const auto c4 = make_cyclic(4);
  const Element two[] = {2};
  const auto q = quotient_by_normal(c4, subgroup_generated(c4, two));
  CHECK(q.target.order() == 2);
  CHECK(q.projection == std::vector<Element>{0, 1, 0, 1});
  CHECK(q.section == std::vector<Element>{0, 1});
  CHECK(q.target.mul(1, 1) == 0);

  const auto whole = quotient_by_normal(c4, whole_group(c4));
  CHECK(whole.target.order() == 1);

  const auto alg = make_group_algebra(3, 3);
  const auto g = semidirect_product(alg.additive, alg.acting, alg.translation);
  const Element k[] = {13 + 27 * 9};  // (constant 1, 9): central of order 3
  const auto kq = quotient_by_normal(g, subgroup_generated(g, k));
  CHECK(kq.target.order() == 243);
  CHECK(check_group_axioms(kq.target).ok);
  for (Element x = 0; x < g.order(); x += 7) {
    for (Element y = 0; y < g.order(); y += 11) {
      CHECK(kq.project(g.mul(x, y)) == kq.target.mul(kq.project(x), kq.project(y)));
    }
  }
}

TEST_CASE("misc subgroup helpers") {
  const auto g = make_elementary_abelian(3, 3);
  CHECK(has_exponent_dividing(whole_group(g), 3));
  CHECK_FALSE(has_exponent_dividing(whole_group(make_cyclic(9)), 3));
  CHECK(is_central(fixtures::dihedral6(), trivial_subgroup(fixtures::dihedral6())));
  const auto d6 = fixtures::dihedral6();
  const auto rot = commutator_subgroup(d6);
  const auto as_group = subgroup_as_group(rot);
  CHECK(as_group.order() == 3);
  CHECK(check_group_axioms(as_group).ok);
}
