#include <doctest.h>

#include <map>

#include "fixtures.hpp"
#include "kazhdan/errors.hpp"
#include "kazhdan/extension.hpp"
#include "kazhdan/lab.hpp"

using namespace kazhdan;

namespace {

// phi(a, h) = a * s(h) from the rebuilt extension back to the source;
// checks bijectivity and the homomorphism property exhaustively.
bool pair_map_is_isomorphism(const ExtractedExtension& ex, const QuotientMap& q) {
  const auto rebuilt = cocycle_extension(ex.data).group;
  const std::size_t na = ex.kernel_elements.size();
  const FiniteGroup& g = q.source;
  if (rebuilt.order() != g.order()) return false;
  std::vector<Element> phi(rebuilt.order());
  std::vector<char> hit(g.order(), 0);
  for (std::size_t x = 0; x < rebuilt.order(); ++x) {
    phi[x] = g.mul(ex.kernel_elements[x % na], q.lift(static_cast<Element>(x / na)));
    if (hit[phi[x]]) return false;
    hit[phi[x]] = 1;
  }
  for (std::size_t x = 0; x < rebuilt.order(); ++x) {
    for (std::size_t y = 0; y < rebuilt.order(); ++y) {
      if (phi[rebuilt.mul(static_cast<Element>(x), static_cast<Element>(y))] != g.mul(phi[x], phi[y])) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace

TEST_CASE("ActionHom validation") {
  const auto c3 = make_cyclic(3);
  const auto c2 = make_cyclic(2);
  CHECK_FALSE(action_defect(c3, c2, ActionHom(2, 3, {0, 1, 2, 0, 2, 1})).has_value());
  CHECK_FALSE(action_defect(c3, c2, ActionHom::trivial(2, 3)).has_value());
  // Not a permutation.
  CHECK(action_defect(c3, c2, ActionHom(2, 3, {0, 1, 2, 0, 1, 1})).has_value());
  // theta(1) o theta(1) must be theta(0) = id; a 3-cycle on C_3 is not even additive.
  CHECK(action_defect(c3, c2, ActionHom(2, 3, {0, 1, 2, 1, 2, 0})).has_value());
  // theta(0) must be the identity.
  CHECK(action_defect(c3, c2, ActionHom(2, 3, {0, 2, 1, 0, 2, 1})).has_value());
  CHECK_THROWS_AS(ActionHom(2, 3, {0, 1, 2}), InvalidArgument);
}

TEST_CASE("semidirect products") {
  const auto triv = semidirect_product(make_cyclic(3), make_cyclic(4), ActionHom::trivial(4, 3));
  const auto dp = direct_product(make_cyclic(3), make_cyclic(4));
  for (Element x = 0; x < 12; ++x) {
    for (Element y = 0; y < 12; ++y) CHECK(triv.mul(x, y) == dp.mul(x, y));
  }
  const auto alg9 = make_group_algebra(3, 2);
  CHECK(semidirect_product(alg9.additive, alg9.acting, alg9.translation).order() == 243);
  const auto alg27 = make_group_algebra(3, 3);
  const auto big = semidirect_product(alg27.additive, alg27.acting, alg27.translation);
  CHECK(big.order() == 729);
  CHECK(check_group_axioms(big).ok);
  CHECK(check_group_axioms(fixtures::dihedral6()).ok);
}

TEST_CASE("zero cocycle reproduces the semidirect product table") {
  const auto alg = make_group_algebra(3, 2);
  const auto sd = semidirect_product(alg.additive, alg.acting, alg.translation);
  const auto ext = cocycle_extension(ExtensionData{alg.additive, alg.acting, alg.translation, Cocycle::zero(9)});
  for (Element x = 0; x < sd.order(); ++x) {
    for (Element y = 0; y < sd.order(); ++y) CHECK(sd.mul(x, y) == ext.group.mul(x, y));
  }
}

TEST_CASE("carry cocycles build cyclic groups") {
  const auto c2 = make_cyclic(2);
  const auto c4 = cocycle_extension(ExtensionData{c2, c2, ActionHom::trivial(2, 2), fixtures::carry_cocycle(2)});
  CHECK(element_order(c4.group, 2) == 4);  // (0, 1)
  for (unsigned p : {3u, 5u}) {
    const auto cp = make_cyclic(p);
    const auto ext = cocycle_extension(ExtensionData{cp, cp, ActionHom::trivial(p, p), fixtures::carry_cocycle(p)});
    CHECK(element_order(ext.group, p) == p * p);
    CHECK(check_group_axioms(ext.group).ok);
  }
}

TEST_CASE("verify_cocycle") {
  const auto c3 = make_cyclic(3);
  CHECK(verify_cocycle(ExtensionData{c3, c3, ActionHom::trivial(3, 3), Cocycle::zero(3)}).ok);
  CHECK(verify_cocycle(ExtensionData{c3, c3, ActionHom::trivial(3, 3), fixtures::carry_cocycle(3)}).ok);

  // Perturb sigma(1, 1) from 0 to 1: (1, 1, 1) is the first triple where the
  // identity breaks (normalization still holds).
  auto table = fixtures::carry_cocycle(3).table();
  table[1 * 3 + 1] = 1;
  const auto bad = verify_cocycle(ExtensionData{c3, c3, ActionHom::trivial(3, 3), Cocycle(3, table)});
  REQUIRE_FALSE(bad.ok);
  REQUIRE(bad.witness.has_value());
  const auto [h1, h2, h3] = *bad.witness;
  // Independent recheck that the witness really violates the identity.
  auto s = [&](Element a, Element b) { return table[a * 3 + b]; };
  CHECK((s(h2, h3) + s(h1, (h2 + h3) % 3)) % 3 != (s(h1, h2) + s((h1 + h2) % 3, h3)) % 3);
  CHECK_THROWS_AS(cocycle_extension(ExtensionData{c3, c3, ActionHom::trivial(3, 3), Cocycle(3, table)}),
                  PreconditionError);

  // Normalization failure is reported as (0, h, 0).
  auto table2 = fixtures::carry_cocycle(3).table();
  table2[0 * 3 + 2] = 1;
  const auto unnorm = verify_cocycle(ExtensionData{c3, c3, ActionHom::trivial(3, 3), Cocycle(3, table2)});
  REQUIRE_FALSE(unnorm.ok);
  CHECK(*unnorm.witness == Triple{0, 2, 0});
}

TEST_CASE("extract_cocycle") {
  SUBCASE("C_4 over {0, 2}") {
    const auto c4 = make_cyclic(4);
    const Element two[] = {2};
    const auto q = quotient_by_normal(c4, subgroup_generated(c4, two));
    const auto ex = extract_cocycle(q);
    // kernel {0, 2}: base index 1 is element 2, the carry.
    CHECK(ex.kernel_elements == std::vector<Element>{0, 2});
    CHECK(ex.data.cocycle(1, 1) == 1);
    CHECK(verify_cocycle(ex.data).ok);
    CHECK(pair_map_is_isomorphism(ex, q));
  }
  SUBCASE("split extension with the complement as section gives zero") {
    const auto alg = make_group_algebra(3, 2);
    const auto ext = cocycle_extension(ExtensionData{alg.additive, alg.acting, alg.translation, Cocycle::zero(9)});
    const auto ex = extract_cocycle(ext.projection);
    for (Element a = 0; a < 9; ++a) {
      for (Element b = 0; b < 9; ++b) CHECK(ex.data.cocycle(a, b) == 0);
    }
  }
  SUBCASE("non-split metabelian group") {
    const auto inst = build_nonsplit_metabelian(3, 2);
    const auto ex = extract_cocycle(inst.projection);
    CHECK(verify_cocycle(ex.data).ok);
    CHECK(pair_map_is_isomorphism(ex, inst.projection));
  }
  SUBCASE("Gamma_{2,2}") {
    const auto inst = build_gamma_k2(3, 2);
    const auto ex = extract_cocycle(inst.projection);
    CHECK(verify_cocycle(ex.data).ok);
    CHECK(pair_map_is_isomorphism(ex, inst.projection));
  }
  SUBCASE("non-abelian kernel is rejected") {
    const auto g = direct_product(fixtures::s3_from_permutations(), make_cyclic(2));
    const Element gens[] = {1, 2};
    const auto q = quotient_by_normal(g, subgroup_generated(g, gens));
    CHECK_THROWS_AS(extract_cocycle(q), PreconditionError);
  }
}

TEST_CASE("group algebra and orbits") {
  const auto alg = make_group_algebra(3);
  CHECK(alg.additive.order() == 27);
  for (Element x = 1; x < 27; ++x) CHECK(element_order(alg.additive, x) == 3);
  // (1,1,1) has index 13 and is fixed.
  for (Element h = 0; h < 3; ++h) CHECK(alg.translation.apply(h, 13) == 13);
  const Element e0[] = {1};
  CHECK(orbit_closure(alg.additive, alg.acting, alg.translation, e0, OrbitMode::set) == std::vector<Element>{1, 3, 9});

  const Element ident[] = {0};
  CHECK(orbit_closure(alg.additive, alg.acting, alg.translation, ident, OrbitMode::set) == std::vector<Element>{0});
  CHECK(orbit_closure(alg.additive, alg.acting, alg.translation, ident, OrbitMode::multiset) ==
        std::vector<Element>{0, 0, 0});

  const auto alg9 = make_group_algebra(3, 2);
  const auto ms = orbit_closure(alg9.additive, alg9.acting, alg9.translation, e0, OrbitMode::multiset);
  CHECK(ms.size() == 9);
  std::map<Element, int> counts;
  for (Element x : ms) ++counts[x];
  CHECK(counts == std::map<Element, int>{{1, 3}, {3, 3}, {9, 3}});

  CHECK_THROWS_AS(make_group_algebra(4), InvalidArgument);
  CHECK_THROWS_AS(make_group_algebra(11), SizeGuardError);
}
