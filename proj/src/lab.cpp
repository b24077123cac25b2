#include "kazhdan/lab.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "kazhdan/errors.hpp"
#include "kazhdan/random.hpp"

namespace kazhdan {
namespace {

constexpr std::uint64_t kMetabelianLimit = 1ull << 23;

void check_metabelian_size(unsigned p, unsigned n, std::uint64_t ambient_order) {
  if (!is_prime(p)) throw InvalidArgument("p must be prime, got " + std::to_string(p));
  if (n == 0) throw InvalidArgument("n must be >= 1");
  if (p > 7) throw SizeGuardError("metabelian instances need p <= 7");
  if (n >= 2 && p > 5) throw SizeGuardError("metabelian instances with n >= 2 need p <= 5");
  if (ambient_order > kMetabelianLimit) {
    throw SizeGuardError("metabelian instance of order " + std::to_string(ambient_order) +
                         " exceeds the enumeration budget");
  }
}

// Small groups get a table; the index layout is unchanged.
FiniteGroup tabulate_if_small(const FiniteGroup& g) {
  return g.order() <= kTableLimit ? g.materialized() : g;
}

SubgroupHandle rebase(const SubgroupHandle& h, const FiniteGroup& g) {
  return SubgroupHandle(g, h.members(), h.generators());
}

std::string metabelian_label(unsigned p, unsigned n, bool split) {
  return "metabelian:" + std::to_string(p) + "," + std::to_string(n) + (split ? ",split" : ",nonsplit");
}

double safe_avg(const SpectralReport& r) { return r.connected ? r.avg_kazhdan : 0.0; }

// sqrt(num) / sqrt(d * 4^e4 * k^ek), via logs once the powers overflow.
double root_ratio(double num, double d, double e4, double k, double ek) {
  const double denom = d * std::pow(4.0, e4) * std::pow(k, ek);
  if (std::isfinite(denom) && denom > 0.0) return std::sqrt(num) / std::sqrt(denom);
  return std::exp(0.5 * (std::log(num) - std::log(d) - e4 * std::log(4.0) - ek * std::log(k)));
}

double tame_d(unsigned k) { return 84.0 * std::sqrt(static_cast<double>(k)) + 1920.0; }

void check_tame_domain(unsigned k, unsigned c) {
  if (k < 3) throw InvalidArgument("tame bounds need k >= 3");
  if (c < 1) throw InvalidArgument("tame bounds need c >= 1");
}

}  // namespace

MetabelianInstance build_split_metabelian(unsigned p, unsigned n) {
  check_metabelian_size(p, n, is_prime(p) && p <= 7 ? ipow(p, p) * ipow(p, n) : 0);
  MetabelianInstance inst;
  inst.p = p;
  inst.n = n;
  inst.split = true;
  inst.algebra = make_group_algebra(p, n);
  const auto& alg = inst.algebra;
  auto ext = cocycle_extension(ExtensionData{alg.additive, alg.acting, alg.translation,
                                             Cocycle::zero(alg.acting.order())},
                               metabelian_label(p, n, true));
  inst.group = tabulate_if_small(ext.group);
  inst.projection = ext.projection;
  inst.projection.source = inst.group;
  inst.projection.kernel = rebase(ext.projection.kernel, inst.group);
  inst.kernel_embedding.resize(alg.additive.order());
  std::iota(inst.kernel_embedding.begin(), inst.kernel_embedding.end(), Element{0});
  return inst;
}

MetabelianInstance build_nonsplit_metabelian(unsigned p, unsigned n) {
  if (n < 2) throw InvalidArgument("the non-split construction needs n >= 2");
  check_metabelian_size(p, n, is_prime(p) && p <= 7 ? ipow(p, p) * ipow(p, n + 1) : 0);

  const GroupAlgebra big = make_group_algebra(p, n + 1);
  const auto tilde = cocycle_extension(ExtensionData{big.additive, big.acting, big.translation,
                                                     Cocycle::zero(big.acting.order())})
                         .group;
  const auto na = static_cast<Element>(big.additive.order());
  const auto pn = static_cast<Element>(ipow(p, n));

  // Constant vectors sum_x x, and the order-p subgroup of C_{p^{n+1}}.
  Element ones = 0;
  for (unsigned x = 0; x < p; ++x) ones = ones * p + 1;
  const Element z_gen = ones;
  const Element z_prime_gen = na * pn;
  const Element z_arr[] = {z_gen};
  if (!is_central(tilde, subgroup_generated(tilde, z_arr))) {
    throw PreconditionError("constant vectors are not central in the covering group");
  }
  const Element k_arr[] = {tilde.mul(z_prime_gen, z_gen)};
  const auto diag = subgroup_generated(tilde, k_arr);
  const auto q = quotient_by_normal(tilde, diag);

  MetabelianInstance inst;
  inst.p = p;
  inst.n = n;
  inst.split = false;
  inst.algebra = make_group_algebra(p, n);
  inst.group = tabulate_if_small(q.target.relabeled(metabelian_label(p, n, false)));

  const std::size_t order = inst.group.order();
  std::vector<Element> proj(order);
  for (std::size_t x = 0; x < order; ++x) proj[x] = (q.section[x] / na) % pn;
  std::vector<Element> section(pn);
  for (Element t = 0; t < pn; ++t) section[t] = q.projection[na * t];

  inst.kernel_embedding.resize(na);
  for (Element a = 0; a < na; ++a) inst.kernel_embedding[a] = q.projection[a];
  std::vector<Element> kernel_gens;
  for (Element x = 1; x < na; x *= p) kernel_gens.push_back(inst.kernel_embedding[x]);
  SubgroupHandle kernel(inst.group, inst.kernel_embedding, std::move(kernel_gens));
  inst.projection = QuotientMap{inst.group, std::move(kernel), make_cyclic(pn), std::move(proj),
                                std::move(section)};
  return inst;
}

NonsplitReport verify_nonsplit(const MetabelianInstance& inst) {
  NonsplitReport r;
  r.target_order = inst.projection.target.order();
  const Element generator = r.target_order > 1 ? 1 : 0;
  for (std::size_t x = 0; x < inst.group.order(); ++x) {
    if (inst.projection.project(static_cast<Element>(x)) != generator) continue;
    const auto ord = element_order(inst.group, static_cast<Element>(x));
    ++r.lifting_orders[ord];
    if (ord == r.target_order && !r.witness) r.witness = static_cast<Element>(x);
  }
  r.nonsplit = !r.witness.has_value();
  return r;
}

GammaK2Instance build_gamma_k2(unsigned p, unsigned k, bool experimental) {
  if (!is_prime(p)) throw InvalidArgument("p must be prime, got " + std::to_string(p));
  if (p == 2 && !experimental) {
    throw InvalidArgument("p = 2 is only available on the experimental path");
  }
  if (k < 2) throw InvalidArgument("k must be >= 2");
  const unsigned pairs = k * (k - 1) / 2;
  const unsigned m = k + pairs;
  if (static_cast<double>(k + m) * std::log2(static_cast<double>(p)) > 20.0 + 1e-9) {
    throw SizeGuardError("Gamma_{k,2} of order p^" + std::to_string(k + m) + " exceeds 2^20");
  }
  const FiniteGroup a = make_elementary_abelian(p, m);
  const FiniteGroup h = make_elementary_abelian(p, k);
  const std::size_t nh = h.order();

  auto digits = [&](std::size_t x) {
    std::vector<unsigned> d(k);
    for (unsigned i = 0; i < k; ++i) {
      d[i] = static_cast<unsigned>(x % p);
      x /= p;
    }
    return d;
  };
  std::vector<Element> sigma(nh * nh);
  std::vector<unsigned> coord(m);
  for (std::size_t x = 0; x < nh; ++x) {
    const auto u = digits(x);
    for (std::size_t y = 0; y < nh; ++y) {
      const auto v = digits(y);
      for (unsigned i = 0; i < k; ++i) coord[i] = (u[i] + v[i]) / p;
      unsigned slot = k;
      for (unsigned i = 0; i < k; ++i) {
        for (unsigned j = i + 1; j < k; ++j) coord[slot++] = (p - (u[j] * v[i]) % p) % p;
      }
      Element idx = 0;
      for (unsigned c = m; c-- > 0;) idx = idx * p + coord[c];
      sigma[x * nh + y] = idx;
    }
  }

  const std::string label = "gamma2:" + std::to_string(p) + "," + std::to_string(k);
  auto ext = cocycle_extension(
      ExtensionData{a, h, ActionHom::trivial(nh, a.order()), Cocycle(nh, std::move(sigma))}, label);

  GammaK2Instance inst;
  inst.p = p;
  inst.k = k;
  inst.group = tabulate_if_small(ext.group);
  inst.projection = ext.projection;
  inst.projection.source = inst.group;
  inst.projection.kernel = rebase(ext.projection.kernel, inst.group);
  for (unsigned i = 0; i < k; ++i) inst.generators.push_back(inst.projection.lift(static_cast<Element>(ipow(p, i))));
  return inst;
}

bool GammaK2Report::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const NamedCheck& c) { return c.ok; });
}

GammaK2Report verify_gamma_k2(const GammaK2Instance& inst) {
  const unsigned p = inst.p;
  const unsigned k = inst.k;
  const FiniteGroup& g = inst.group;
  const std::uint64_t phi2_expected = ipow(p, k * (k + 1) / 2);
  const std::uint64_t comm_expected = ipow(p, k * (k - 1) / 2);
  GammaK2Report r;
  auto add = [&](std::string name, bool ok, std::string detail) {
    r.checks.push_back(NamedCheck{std::move(name), ok, std::move(detail)});
  };
  auto eq = [](std::uint64_t got, std::uint64_t want) {
    return std::to_string(got) + " (expected " + std::to_string(want) + ")";
  };

  const std::uint64_t order_expected = ipow(p, k + k * (k + 1) / 2);
  add("order", g.order() == order_expected, eq(g.order(), order_expected));

  const auto span = subgroup_generated(g, inst.generators);
  add("generators_generate", span.is_whole(), eq(span.size(), g.order()));

  const auto series = lower_p_series(g, p);
  const bool has_phi2 = series.size() >= 2;
  const std::uint64_t phi2 = has_phi2 ? series[1].size() : g.order();
  add("phi2_order", phi2 == phi2_expected, eq(phi2, phi2_expected));
  add("phi2_index", g.order() / phi2 == ipow(p, k), eq(g.order() / phi2, ipow(p, k)));
  const bool phi3_trivial = series.size() == 3 && series[2].is_trivial();
  add("phi3_trivial", phi3_trivial,
      "series length " + std::to_string(series.size()) + ", last size " + std::to_string(series.back().size()));

  const auto comm = commutator_subgroup(g);
  add("commutator_order", comm.size() == comm_expected, eq(comm.size(), comm_expected));

  add("phi2_central", has_phi2 && is_central(g, series[1]), "");
  add("phi2_exponent_p", has_phi2 && has_exponent_dividing(series[1], p), "");
  const auto bad_layer = check_p_series_layers(series, p);
  add("layers_elementary_central", !bad_layer,
      bad_layer ? "layer " + std::to_string(*bad_layer) + " fails" : "");
  return r;
}

double theorem1_bound(double eps_h, double eps_a, std::size_t size_s, std::size_t size_b) {
  if (!(eps_h > 0.0) || !(eps_a > 0.0) || size_s == 0 || size_b == 0) {
    throw InvalidArgument("theorem1_bound needs positive inputs");
  }
  const double c = static_cast<double>(size_b) / static_cast<double>(size_s);
  return eps_h * eps_a / (512.0 * (1.0 + c + 1.0 / c));
}

MainTheoremReport verify_main_theorem(const MetabelianInstance& inst, std::span<const Element> s,
                                      std::span<const GroupAlgebraElement> b,
                                      std::span<const Element> s_lift, const SolverConfig& cfg) {
  const FiniteGroup& target = inst.projection.target;
  const GroupAlgebra& alg = inst.algebra;
  if (s.empty()) throw InvalidArgument("S must be non-empty");
  if (b.empty()) throw InvalidArgument("B must be non-empty");
  for (Element x : s) {
    if (x >= target.order()) throw InvalidArgument("element of S out of range");
  }
  for (const auto& f : b) {
    if (f.p != inst.p) throw InvalidArgument("element of B over the wrong prime");
  }
  if (!subgroup_generated(target, s).is_whole()) {
    throw PreconditionError("S does not generate C_{p^n}");
  }
  const auto b_idx = to_indices(b);
  const auto orbit_set = orbit_closure(alg.additive, alg.acting, alg.translation, b_idx, OrbitMode::set);
  if (!subgroup_generated(alg.additive, orbit_set).is_whole()) {
    throw PreconditionError("the orbits of B do not generate the kernel");
  }

  std::vector<Element> lifts;
  if (s_lift.empty()) {
    for (Element x : s) lifts.push_back(inst.projection.lift(x));
  } else {
    if (s_lift.size() != s.size()) throw InvalidArgument("S_lift must have one entry per element of S");
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s_lift[i] >= inst.group.order() || inst.projection.project(s_lift[i]) != s[i]) {
        throw InvalidArgument("S_lift entry " + std::to_string(i) + " does not lift S");
      }
    }
    lifts.assign(s_lift.begin(), s_lift.end());
  }

  MainTheoremReport r;
  r.p = inst.p;
  r.n = inst.n;
  r.split = inst.split;
  r.size_s = s.size();
  r.size_b = b.size();
  r.eps_h = safe_avg(abelian_gap_characters(build_cayley(target, s)));
  const auto b_tilde = orbit_closure(alg.additive, alg.acting, alg.translation, b_idx, OrbitMode::multiset);
  r.eps_a = safe_avg(abelian_gap_characters(build_cayley(alg.additive, b_tilde)));

  std::vector<Element> gens = lifts;
  for (const auto& f : b) gens.push_back(inst.embed(f));
  const auto gamma = best_gap(build_cayley(inst.group, gens), cfg);
  r.eps_gamma = safe_avg(gamma);
  r.method = gamma.method;
  r.bound = theorem1_bound(r.eps_h, r.eps_a, r.size_s, r.size_b);
  r.ratio = r.eps_gamma / r.bound;
  r.pass = r.eps_gamma >= r.bound - kComparisonSlack;
  return r;
}

SerreReport verify_serre(const FiniteGroup& g, const SubgroupHandle& a, std::span<const Element> s_lift,
                         const SolverConfig& cfg) {
  if (s_lift.empty()) throw InvalidArgument("S_lift must be non-empty");
  if (!is_central(g, a)) throw PreconditionError("A is not central in G");
  if (!subgroup_generated(g, s_lift).is_whole()) throw PreconditionError("S_lift does not generate G");

  SerreReport r;
  r.group = g.label();
  r.order = g.order();
  r.size_s = s_lift.size();

  const auto q = quotient_by_normal(g, a);
  std::vector<Element> projected;
  for (Element x : s_lift) projected.push_back(q.project(x));
  const auto quotient_op = build_cayley(q.target, projected);
  const auto quotient_rep = best_gap(quotient_op, cfg);
  r.eps2_quotient = quotient_rep.vacuous ? 0.0 : safe_avg(quotient_rep);
  r.avg_bound = r.eps2_quotient / 4.0;

  RelativeGapOptions ropts;
  ropts.dense_threshold = cfg.dense_threshold;
  ropts.iterative = cfg.iterative;
  ropts.iterative.tol = std::min(cfg.iterative.tol, 1e-8);
  const auto rel = relative_gap_deflated(build_cayley(g, s_lift), commutator_subgroup(g), ropts);
  r.vacuous = rel.vacuous;
  r.relative_avg = rel.avg_kazhdan;
  r.avg_pass = r.vacuous || r.relative_avg >= r.avg_bound - kComparisonSlack;

  r.quotient_abelian = q.target.is_abelian();
  if (r.quotient_abelian && q.target.order() > 1) {
    r.eps1_quotient = kazhdan_max_abelian(quotient_op, projected);
    r.max_bound = r.eps1_quotient / (2.0 * static_cast<double>(r.size_s));
    r.max_lower = std::sqrt(std::max(r.relative_avg, 0.0));
    r.max_certified = r.vacuous || r.max_lower >= r.max_bound - kComparisonSlack;
  }
  r.pass = r.avg_pass;
  return r;
}

double tame_delta(unsigned k, unsigned c) {
  check_tame_domain(k, c);
  const double kd = k;
  const double cd = c;
  return 2.0 * root_ratio(cd, tame_d(k), cd, kd, cd);
}

std::string to_string(TameCase c) {
  switch (c) {
    case TameCase::c2kl1: return "c=2kl+1";
    case TameCase::c2kl2: return "c=2kl+2";
    case TameCase::c2kl3: return "c=2kl+3";
    case TameCase::c2kl4: return "c=2kl+4";
    case TameCase::otherwise: return "otherwise";
    case TameCase::small_c: return "small_c";
  }
  return "unknown";
}

TameBoundEntry tame_kazhdan_bound(unsigned k, unsigned c) {
  check_tame_domain(k, c);
  TameBoundEntry e;
  e.k = k;
  e.c = c;
  e.nielsen_size = 4ull * k * (k - 1);
  const double kd = k;
  const double cd = c;
  const double d = tame_d(k);
  if (c <= 2 * k) {
    e.case_label = TameCase::small_c;
    e.bound = root_ratio(cd, d, cd, kd, cd);
    return e;
  }
  switch (c % (2 * k)) {
    case 1:
      e.case_label = TameCase::c2kl1;
      e.bound = root_ratio(cd, d, cd + 3, kd, cd + 4);
      break;
    case 2:
      e.case_label = TameCase::c2kl2;
      e.bound = root_ratio(cd - 1, d, cd + 3, kd, cd + 3);
      break;
    case 3:
      e.case_label = TameCase::c2kl3;
      e.bound = root_ratio(cd - 2, d, cd + 3, kd, cd + 2);
      break;
    case 4:
      e.case_label = TameCase::c2kl4;
      e.bound = root_ratio(cd - 3, d, cd + 3, kd, cd + 1);
      break;
    default:
      e.case_label = TameCase::otherwise;
      e.bound = root_ratio(cd - 4, d, cd + 3, kd, cd);
      break;
  }
  return e;
}

std::size_t default_search_cap(std::size_t order) {
  if (order < 2) return 0;
  const auto log2_ceil = static_cast<std::size_t>(std::ceil(std::log2(static_cast<double>(order))));
  return std::min(2 * log2_ceil + 2, order - 1);
}

GEpsilonReport g_epsilon_search(const FiniteGroup& g, double eps, std::size_t trials, std::uint64_t seed,
                                std::size_t cap, const SolverConfig& cfg) {
  if (!(eps > 0.0)) throw InvalidArgument("eps must be positive");
  if (trials == 0) throw InvalidArgument("trials must be >= 1");
  const std::size_t order = g.order();
  if (order < 2) throw InvalidArgument("g_epsilon_search needs a non-trivial group");
  if (cap == 0) cap = default_search_cap(order);
  cap = std::min(cap, order - 1);

  GEpsilonReport r;
  r.group = g.label();
  r.order = order;
  r.eps = eps;
  r.trials = trials;
  r.cap = cap;

  std::vector<Element> pool(order - 1);
  double best_overall = 0.0;
  std::size_t best_size = 0;
  for (std::size_t m = 1; m <= cap; ++m) {
    double best_here = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
      Rng rng(seed + (m - 1) * trials + t);
      std::iota(pool.begin(), pool.end(), Element{1});
      for (std::size_t i = 0; i < m; ++i) {
        const std::size_t j = i + rng.below(pool.size() - i);
        std::swap(pool[i], pool[j]);
      }
      std::vector<Element> subset(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(m));
      const auto op = build_cayley(g, subset);
      const double value = safe_avg(best_gap(op, cfg));
      best_here = std::max(best_here, value);
      if (value >= eps) {
        const auto check = order <= cfg.dense_threshold ? gap_dense(op, cfg.dense_threshold) : best_gap(op, cfg);
        r.verified_avg = safe_avg(check);
        if (r.verified_avg < eps - kComparisonSlack) {
          throw Error("g_epsilon witness failed re-verification");
        }
        r.best_by_size.push_back(best_here);
        r.m = m;
        r.witness = std::move(subset);
        r.avg_kazhdan = value;
        return r;
      }
    }
    r.best_by_size.push_back(best_here);
    if (best_here > best_overall) {
      best_overall = best_here;
      best_size = m;
    }
  }
  throw SearchCapError("no generating set of size <= " + std::to_string(cap) + " reached eps", best_overall,
                       best_size);
}

}  // namespace kazhdan
