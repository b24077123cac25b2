#include <doctest.h>

#include <cmath>

#include "kazhdan/errors.hpp"
#include "kazhdan/lab.hpp"
#include "kazhdan/random.hpp"

using namespace kazhdan;
using doctest::Approx;

TEST_CASE("split metabelian instances") {
  const auto a = build_split_metabelian(3, 1);
  CHECK(a.group.order() == 81);
  const auto b = build_split_metabelian(3, 2);
  CHECK(b.group.order() == 243);
  CHECK(element_order(b.group, b.projection.lift(1)) == 9);
  CHECK(b.projection.kernel.size() == 27);
  CHECK(check_group_axioms(b.group).ok);
  // projection is a homomorphism and the kernel embedding is additive
  for (Element x = 0; x < b.group.order(); x += 5) {
    for (Element y = 0; y < b.group.order(); y += 7) {
      CHECK(b.projection.project(b.group.mul(x, y)) ==
            b.projection.target.mul(b.projection.project(x), b.projection.project(y)));
    }
  }
  CHECK_THROWS_AS(build_split_metabelian(7, 2), SizeGuardError);
  CHECK_THROWS_AS(build_split_metabelian(4, 1), InvalidArgument);
}

TEST_CASE("split metabelian p = 5, n = 1 stays lazy") {
  const auto g = build_split_metabelian(5, 1);
  CHECK(g.group.order() == 15625);
  CHECK_FALSE(g.group.has_table());
  CHECK(check_group_axioms(g.group, 20000, 1).ok);
}

TEST_CASE("non-split metabelian instance") {
  const auto inst = build_nonsplit_metabelian(3, 2);
  CHECK(inst.group.order() == 243);
  CHECK_FALSE(inst.split);
  CHECK(check_group_axioms(inst.group).ok);
  const auto& kernel = inst.projection.kernel;
  CHECK(kernel.size() == 27);
  CHECK(has_exponent_dividing(kernel, 3));
  for (Element x : kernel.members()) {
    for (Element y : kernel.members()) CHECK(inst.group.mul(x, y) == inst.group.mul(y, x));
    CHECK(inst.projection.project(x) == 0);
  }
  // the kernel embedding is an injective homomorphism from F_3[C_3]
  for (Element a = 0; a < 27; ++a) {
    for (Element b = 0; b < 27; ++b) {
      CHECK(inst.kernel_embedding[inst.algebra.additive.mul(a, b)] ==
            inst.group.mul(inst.kernel_embedding[a], inst.kernel_embedding[b]));
    }
  }
  // conjugation by a lift of h acts as translation by h
  const Element s = inst.projection.lift(1);
  for (Element a = 0; a < 27; ++a) {
    const Element conj = inst.group.mul(inst.group.mul(s, inst.kernel_embedding[a]), inst.group.inv(s));
    CHECK(conj == inst.kernel_embedding[inst.algebra.translation.apply(1, a)]);
  }
  CHECK_THROWS_AS(build_nonsplit_metabelian(3, 1), InvalidArgument);
}

TEST_CASE("non-splitness dichotomy") {
  const auto split = verify_nonsplit(build_split_metabelian(3, 2));
  CHECK_FALSE(split.nonsplit);
  REQUIRE(split.witness.has_value());
  CHECK(split.lifting_orders.at(9) >= 1);

  const auto ns = verify_nonsplit(build_nonsplit_metabelian(3, 2));
  CHECK(ns.nonsplit);
  CHECK_FALSE(ns.witness.has_value());
  CHECK(ns.lifting_orders == std::map<std::uint64_t, std::size_t>{{27, 27}});

  const auto ns33 = verify_nonsplit(build_nonsplit_metabelian(3, 3));
  CHECK(ns33.nonsplit);
}

TEST_CASE("Gamma_{k,2}") {
  for (auto [p, k] : {std::pair{3u, 2u}, {3u, 3u}, {5u, 2u}}) {
    const auto inst = build_gamma_k2(p, k);
    CHECK(inst.group.order() == ipow(p, k + k * (k + 1) / 2));
    CHECK(inst.generators.size() == k);
    const auto report = verify_gamma_k2(inst);
    for (const auto& c : report.checks) {
      INFO(c.name << ": " << c.detail);
      CHECK(c.ok);
    }
    CHECK(report.ok());
  }
  CHECK_THROWS_AS(build_gamma_k2(2, 2), InvalidArgument);
  CHECK_THROWS_AS(build_gamma_k2(5, 3), SizeGuardError);
  CHECK_THROWS_AS(build_gamma_k2(3, 1), InvalidArgument);
}

TEST_CASE("Gamma_{2,2} commutator of the generators is central of order p") {
  const auto inst = build_gamma_k2(3, 2);
  const auto& g = inst.group;
  const Element c = g.commutator(inst.generators[0], inst.generators[1]);
  CHECK(c != 0);
  CHECK(element_order(g, c) == 3);
  for (Element x = 0; x < g.order(); ++x) CHECK(g.mul(c, x) == g.mul(x, c));
  CHECK(element_order(g, inst.generators[0]) == 9);
}

TEST_CASE("theorem1_bound") {
  CHECK(theorem1_bound(1.0, 1.0, 3, 3) == Approx(1.0 / 1536.0));
  const double at1 = theorem1_bound(0.5, 0.7, 4, 4);
  for (std::size_t b : {1u, 2u, 3u, 5u, 8u}) CHECK(theorem1_bound(0.5, 0.7, 4, b) <= at1);
  CHECK(theorem1_bound(0.5, 2.1, 4, 2) == Approx(3.0 * theorem1_bound(0.5, 0.7, 4, 2)));
  CHECK_THROWS_AS(theorem1_bound(0.0, 1.0, 1, 1), InvalidArgument);
  CHECK_THROWS_AS(theorem1_bound(1.0, 1.0, 0, 1), InvalidArgument);
}

TEST_CASE("main theorem instances") {
  const Element s[] = {1};
  const GroupAlgebraElement e0(3, {1, 0, 0});
  const GroupAlgebraElement b[] = {e0};
  for (const auto& inst : {build_split_metabelian(3, 1), build_nonsplit_metabelian(3, 2)}) {
    const auto r = verify_main_theorem(inst, s, b);
    CHECK(r.pass);
    CHECK(r.eps_gamma >= r.bound);
    CHECK(r.ratio == Approx(r.eps_gamma / r.bound));
    CHECK(r.bound == Approx(theorem1_bound(r.eps_h, r.eps_a, 1, 1)));
  }
  // an explicit non-canonical lifting
  const auto ns = build_nonsplit_metabelian(3, 2);
  const Element lift[] = {ns.group.mul(ns.projection.lift(1), ns.embed(GroupAlgebraElement(3, {2, 1, 0})))};
  CHECK(verify_main_theorem(ns, s, b, lift).pass);
  const Element wrong[] = {ns.projection.lift(2)};
  CHECK_THROWS_AS(verify_main_theorem(ns, s, b, wrong), InvalidArgument);

  const GroupAlgebraElement constant[] = {GroupAlgebraElement(3, {1, 1, 1})};
  CHECK_THROWS_AS(verify_main_theorem(ns, s, constant), PreconditionError);
  const Element not_generating[] = {3};
  CHECK_THROWS_AS(verify_main_theorem(ns, not_generating, b), PreconditionError);
}

TEST_CASE("Serre bound") {
  const auto inst = build_gamma_k2(3, 2);
  const auto a = commutator_subgroup(inst.group);
  const auto r = verify_serre(inst.group, a, inst.generators);
  CHECK(r.pass);
  CHECK(r.avg_pass);
  CHECK_FALSE(r.vacuous);
  CHECK(r.quotient_abelian);
  CHECK(r.relative_avg >= r.eps2_quotient / 4.0);
  CHECK(r.max_bound == Approx(r.eps1_quotient / 4.0));

  // abelian G: nothing left after deflating G' = {e}... every irrep is a character
  const auto c9 = make_cyclic(9);
  const Element one[] = {1};
  const auto ab = verify_serre(c9, trivial_subgroup(c9), one);
  CHECK(ab.vacuous);
  CHECK(ab.pass);

  // a non-central A is rejected
  CHECK_THROWS_AS(verify_serre(inst.group, lower_p_series(inst.group, 3)[0], inst.generators), PreconditionError);
  const Element just_one[] = {inst.generators[0]};
  CHECK_THROWS_AS(verify_serre(inst.group, a, just_one), PreconditionError);
}

TEST_CASE("tame bounds") {
  const double d = 84.0 * std::sqrt(3.0) + 1920.0;
  CHECK(tame_delta(3, 1) == Approx(2.0 / std::sqrt(d * 12.0)).epsilon(1e-14));
  CHECK(std::abs(tame_delta(3, 1) - 1.2704e-2) <= 1e-5);
  CHECK(tame_delta(3, 2) == Approx(2.0 * std::sqrt(2.0) / std::sqrt(d * 144.0)).epsilon(1e-14));
  for (unsigned c = 1; c < 40; ++c) CHECK(tame_delta(3, c + 1) < tame_delta(3, c));

  const auto e7 = tame_kazhdan_bound(3, 7);
  CHECK(e7.case_label == TameCase::c2kl1);
  CHECK(e7.bound == Approx(std::sqrt(7.0) / std::sqrt(d * std::pow(4.0, 10) * std::pow(3.0, 11))).epsilon(1e-14));
  CHECK(tame_kazhdan_bound(3, 8).case_label == TameCase::c2kl2);
  CHECK(tame_kazhdan_bound(3, 9).case_label == TameCase::c2kl3);
  CHECK(tame_kazhdan_bound(3, 10).case_label == TameCase::c2kl4);
  CHECK(tame_kazhdan_bound(3, 11).case_label == TameCase::otherwise);
  CHECK(tame_kazhdan_bound(3, 13).case_label == TameCase::c2kl1);
  const auto e5 = tame_kazhdan_bound(3, 5);
  CHECK(e5.case_label == TameCase::small_c);
  CHECK(e5.bound == Approx(std::sqrt(5.0) / std::sqrt(d * std::pow(12.0, 5))).epsilon(1e-14));
  CHECK(e5.nielsen_size == 24);
  for (unsigned k = 3; k < 8; ++k) {
    for (unsigned c = 1; c <= 2 * k; ++c) {
      const double half = tame_delta(k, c) / 2.0;
      CHECK(std::abs(tame_kazhdan_bound(k, c).bound - half) <= 1e-15 * half);
    }
  }
  // large c goes through the overflow path without producing nan
  const auto mid = tame_kazhdan_bound(10, 150);
  CHECK(mid.bound > 0.0);
  CHECK(std::isfinite(mid.bound));
  CHECK_FALSE(std::isnan(tame_kazhdan_bound(50, 400).bound));
  CHECK_THROWS_AS(tame_delta(2, 1), InvalidArgument);
  CHECK_THROWS_AS(tame_kazhdan_bound(3, 0), InvalidArgument);
}

TEST_CASE("g_epsilon search") {
  const auto c2 = make_cyclic(2);
  const auto r = g_epsilon_search(c2, 1.0, 5, 0);
  CHECK(r.m == 1);
  CHECK(r.witness == std::vector<Element>{1});
  CHECK(r.avg_kazhdan == Approx(4.0));
  CHECK(g_epsilon_search(c2, 0.999, 5, 0).m == 1);
  CHECK_THROWS_AS(g_epsilon_search(c2, 4.5, 5, 0), SearchCapError);

  const auto gamma = build_gamma_k2(3, 2);
  const auto rg = g_epsilon_search(gamma.group, 0.2, 10, 1);
  CHECK(rg.m <= 2 + 8);
  CHECK(rg.verified_avg >= 0.2);
  const auto recheck = gap_dense(build_cayley(gamma.group, rg.witness));
  CHECK(recheck.avg_kazhdan >= 0.2);
  CHECK(g_epsilon_search(gamma.group, 0.2, 10, 1).witness == rg.witness);

  CHECK(default_search_cap(2) == 1);
  CHECK(default_search_cap(243) == 18);
  CHECK_THROWS_AS(g_epsilon_search(c2, 0.0, 1, 0), InvalidArgument);
  try {
    g_epsilon_search(make_cyclic(64), 3.9, 2, 0, 3);
    FAIL("expected SearchCapError");
  } catch (const SearchCapError& e) {
    CHECK(e.best_size() >= 1);
    CHECK(e.best_value() > 0.0);
  }
}
