// kazhdan: command-line front end for the spectral-gap and extension tools.
//
// Exit codes: 0 success, 1 usage, 2 disconnected generating set,
// 3 size guard, 4 search cap, 5 a verification or solver failure.

#include <algorithm>
#include <atomic>
#include <limits>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "kazhdan/balanced.hpp"
#include "kazhdan/errors.hpp"
#include "kazhdan/lab.hpp"
#include "kazhdan/random.hpp"
#include "kazhdan/report_io.hpp"

using namespace kazhdan;

namespace {

enum Exit { kOk = 0, kUsage = 1, kDisconnected = 2, kSizeGuard = 3, kSearchCap = 4, kFailed = 5 };

struct RunConfig {
  std::uint64_t seed = 0;
  double tolerance = 1e-7;
  std::size_t dense_threshold = kTableLimit;
  std::string format;  // empty: the subcommand default
  std::string out_path;
  unsigned jobs = 0;

  SolverConfig solver() const {
    SolverConfig cfg;
    cfg.dense_threshold = dense_threshold;
    cfg.iterative.tol = tolerance;
    cfg.iterative.seed = seed;
    return cfg;
  }
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

std::uint64_t parse_uint(const std::string& s) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); })) {
    throw UsageError("expected a non-negative integer, got '" + s + "'");
  }
  return std::stoull(s);
}

std::vector<unsigned> parse_vector(const std::string& s) {
  std::vector<unsigned> v;
  for (const auto& part : split(s, ',')) v.push_back(static_cast<unsigned>(parse_uint(part)));
  return v;
}

// Index of a coordinate vector in F_p^d (coordinate 0 lowest).
Element vector_index(const std::vector<unsigned>& v, unsigned p, std::size_t dim, const std::string& what) {
  if (v.size() != dim) {
    throw UsageError(what + " needs " + std::to_string(dim) + " coordinates, got " + std::to_string(v.size()));
  }
  Element idx = 0;
  for (std::size_t i = dim; i-- > 0;) {
    if (v[i] >= p) throw UsageError(what + " coordinate out of range [0, p)");
    idx = idx * p + v[i];
  }
  return idx;
}

/// A group parsed from a designator together with its element syntax.
struct LoadedGroup {
  FiniteGroup group;
  std::function<Element(const std::string&)> designate;
};

Element checked_index(const FiniteGroup& g, const std::string& s) {
  const auto x = parse_uint(s);
  if (x >= g.order()) throw UsageError("element " + s + " out of range for order " + std::to_string(g.order()));
  return static_cast<Element>(x);
}

// "a|h" with a in the kernel and h in the quotient.
Element pair_designator(const std::string& s, const std::function<Element(const std::string&)>& kernel,
                        const std::function<Element(const std::string&)>& lift, const FiniteGroup& g) {
  const auto bar = s.find('|');
  if (bar == std::string::npos) return checked_index(g, s);
  return g.mul(kernel(s.substr(0, bar)), lift(s.substr(bar + 1)));
}

LoadedGroup load_group(const std::string& designator) {
  const auto colon = designator.find(':');
  if (colon == std::string::npos) throw UsageError("group designator needs the form kind:params, got '" + designator + "'");
  const std::string kind = designator.substr(0, colon);
  const std::string args = designator.substr(colon + 1);

  if (kind == "cyclic") {
    const auto m = parse_uint(args);
    if (m == 0) throw UsageError("cyclic:m needs m >= 1");
    if (m > (1ull << 26)) throw SizeGuardError("cyclic group too large");
    auto g = make_cyclic(m).relabeled(designator);
    return {g, [g](const std::string& s) { return checked_index(g, s); }};
  }
  if (kind == "algebra") {
    const auto p = static_cast<unsigned>(parse_uint(args));
    auto alg = make_group_algebra(p, 1);
    auto g = alg.additive.relabeled(designator);
    return {g, [g, p](const std::string& s) {
              if (s.find(',') == std::string::npos) return checked_index(g, s);
              return vector_index(parse_vector(s), p, p, "group-algebra element");
            }};
  }
  if (kind == "metabelian") {
    const auto parts = split(args, ',');
    if (parts.size() != 3 || (parts[2] != "split" && parts[2] != "nonsplit")) {
      throw UsageError("metabelian designator is metabelian:p,n,split|nonsplit");
    }
    const auto p = static_cast<unsigned>(parse_uint(parts[0]));
    const auto n = static_cast<unsigned>(parse_uint(parts[1]));
    auto inst = std::make_shared<MetabelianInstance>(parts[2] == "split" ? build_split_metabelian(p, n)
                                                                         : build_nonsplit_metabelian(p, n));
    auto g = inst->group.relabeled(designator);
    auto kernel = [inst](const std::string& s) {
      return inst->kernel_embedding[vector_index(parse_vector(s), inst->p, inst->p, "kernel element")];
    };
    auto lift = [inst](const std::string& s) {
      const auto& target = inst->projection.target;
      return inst->projection.lift(checked_index(target, s));
    };
    return {g, [=](const std::string& s) { return pair_designator(s, kernel, lift, g); }};
  }
  if (kind == "gamma2") {
    const auto parts = split(args, ',');
    if (parts.size() != 2) throw UsageError("gamma2 designator is gamma2:p,k");
    const auto p = static_cast<unsigned>(parse_uint(parts[0]));
    const auto k = static_cast<unsigned>(parse_uint(parts[1]));
    auto inst = std::make_shared<GammaK2Instance>(build_gamma_k2(p, k));
    auto g = inst->group.relabeled(designator);
    const std::size_t base_dim = k + k * (k - 1) / 2;
    auto kernel = [inst, base_dim](const std::string& s) {
      return inst->projection.kernel.members()[vector_index(parse_vector(s), inst->p, base_dim, "kernel element")];
    };
    auto lift = [inst](const std::string& s) {
      return inst->projection.lift(vector_index(parse_vector(s), inst->p, inst->k, "quotient element"));
    };
    return {g, [=](const std::string& s) { return pair_designator(s, kernel, lift, g); }};
  }
  if (kind == "file") {
    std::ifstream in(args);
    if (!in) throw UsageError("cannot open group file '" + args + "'");
    auto g = read_table(in, designator);
    if (auto report = check_group_axioms(g); !report.ok) throw UsageError("group file invalid: " + report.message);
    return {g, [g](const std::string& s) { return checked_index(g, s); }};
  }
  throw UsageError("unknown group kind '" + kind + "'");
}

std::vector<Element> resolve_generators(const LoadedGroup& lg, const std::vector<std::string>& tokens,
                                        std::uint64_t seed) {
  if (tokens.empty()) throw UsageError("--gens is required");
  if (tokens.size() == 1 && tokens[0].rfind("random:", 0) == 0) {
    const auto m = parse_uint(tokens[0].substr(7));
    if (m == 0) throw UsageError("random:m needs m >= 1");
    const std::size_t order = lg.group.order();
    Rng rng(seed);
    std::vector<Element> out;
    for (std::uint64_t i = 0; i < m; ++i) {
      out.push_back(order > 1 ? static_cast<Element>(1 + rng.below(order - 1)) : 0);
    }
    return out;
  }
  std::vector<Element> out;
  for (const auto& t : tokens) out.push_back(lg.designate(t));
  return out;
}

/// Runs fn(i) for i in [0, n) on up to `jobs` threads. Results are stored
/// by index, so the thread count never changes the output.
template <class T, class F>
std::vector<T> parallel_map(std::size_t n, unsigned jobs, F fn) {
  std::vector<std::optional<T>> slots(n);
  std::vector<std::exception_ptr> errors(n);
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, std::max<std::size_t>(n, 1)));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < n;) {
      try {
        slots[i] = fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  std::vector<T> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    out.push_back(std::move(*slots[i]));
  }
  return out;
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(cfg.out_path);
  if (!out) throw UsageError("cannot write '" + cfg.out_path + "'");
  out << text;
}

void emit_json(const RunConfig& cfg, const nlohmann::json& j) { emit(cfg, dump(j)); }

// ---------------------------------------------------------------------------

int cmd_gap(const RunConfig& cfg, const std::string& designator, const std::vector<std::string>& gens) {
  const auto lg = load_group(designator);
  const auto s = resolve_generators(lg, gens, cfg.seed);
  const auto op = build_cayley(lg.group, s);
  auto report = best_gap(op, cfg.solver());
  report.group = designator;
  report.seed = cfg.seed;
  if (cfg.format == "text") {
    std::ostringstream os;
    os << "group " << designator << " order " << report.order << " degree " << report.degree << "\n"
       << "lambda2 " << round15(report.lambda2) << " beta " << round15(report.beta) << " avg_kazhdan "
       << round15(report.avg_kazhdan) << " method " << to_string(report.method)
       << (report.connected ? "" : " disconnected") << "\n";
    emit(cfg, os.str());
  } else if (cfg.format == "csv") {
    const auto j = to_json(report);
    std::ostringstream head, row;
    bool first = true;
    for (const auto& [key, value] : j.items()) {
      head << (first ? "" : ",") << key;
      row << (first ? "" : ",") << (value.is_string() ? value.get<std::string>() : value.dump());
      first = false;
    }
    emit(cfg, head.str() + "\n" + row.str() + "\n");
  } else {
    emit_json(cfg, to_json(report));
  }
  return report.connected ? kOk : kDisconnected;
}

struct VerifyParams {
  std::string suite;
  unsigned p = 3;
  unsigned n = 2;
  unsigned k = 2;
  std::size_t trials = 20;
  std::string variant = "both";
};

// Random non-zero distinct B of size 1..4 whose orbits generate F_p[C_p].
std::vector<GroupAlgebraElement> random_b(const MetabelianInstance& inst, Rng& rng) {
  const auto& alg = inst.algebra;
  const std::size_t want = 1 + rng.below(4);
  for (;;) {
    std::vector<Element> idx;
    while (idx.size() < want) {
      const auto x = static_cast<Element>(1 + rng.below(alg.additive.order() - 1));
      if (std::find(idx.begin(), idx.end(), x) == idx.end()) idx.push_back(x);
    }
    const auto orbit = orbit_closure(alg.additive, alg.acting, alg.translation, idx, OrbitMode::set);
    if (!subgroup_generated(alg.additive, orbit).is_whole()) continue;
    std::vector<GroupAlgebraElement> out;
    for (Element x : idx) out.push_back(GroupAlgebraElement::from_index(inst.p, x));
    return out;
  }
}

int verify_main(const RunConfig& cfg, const VerifyParams& vp) {
  std::optional<MetabelianInstance> split_inst, nonsplit_inst;
  const bool want_split = vp.variant != "nonsplit";
  const bool want_nonsplit = vp.variant != "split" && vp.n >= 2;
  if (!want_split && !want_nonsplit) throw UsageError("the non-split variant needs n >= 2");
  if (want_split) split_inst = build_split_metabelian(vp.p, vp.n);
  if (want_nonsplit) nonsplit_inst = build_nonsplit_metabelian(vp.p, vp.n);

  const auto reports = parallel_map<MainTheoremReport>(vp.trials, cfg.jobs, [&](std::size_t t) {
    const bool use_split = want_split && (!want_nonsplit || t % 2 == 0);
    const auto& inst = use_split ? *split_inst : *nonsplit_inst;
    Rng rng(cfg.seed + t);
    const auto b = random_b(inst, rng);
    const Element s[] = {1};
    return verify_main_theorem(inst, s, b, {}, cfg.solver());
  });
  nlohmann::json trials = nlohmann::json::array();
  std::size_t passed = 0;
  double min_ratio = std::numeric_limits<double>::infinity();
  for (const auto& r : reports) {
    trials.push_back(to_json(r));
    passed += r.pass ? 1 : 0;
    min_ratio = std::min(min_ratio, r.ratio);
  }
  const bool ok = passed == reports.size();
  emit_json(cfg, {{"suite", "main-theorem"}, {"passed", passed}, {"total", reports.size()},
                  {"min_ratio", round15(min_ratio)}, {"trials", trials}, {"pass", ok}});
  return ok ? kOk : kFailed;
}

// Random lifts of the standard generators of Gamma_{k,2}/phi_2, plus one
// extra random element.
std::vector<Element> random_lifted_set(const GammaK2Instance& inst, Rng& rng) {
  const auto& kernel = inst.projection.kernel.members();
  std::vector<Element> s;
  for (Element x : inst.generators) s.push_back(inst.group.mul(x, kernel[rng.below(kernel.size())]));
  s.push_back(static_cast<Element>(1 + rng.below(inst.group.order() - 1)));
  return s;
}

int verify_serre_suite(const RunConfig& cfg, const VerifyParams& vp) {
  const auto inst = build_gamma_k2(vp.p, vp.k);
  const auto a = commutator_subgroup(inst.group);
  const auto reports = parallel_map<SerreReport>(vp.trials, cfg.jobs, [&](std::size_t t) {
    Rng rng(cfg.seed + t);
    const auto s = random_lifted_set(inst, rng);
    return verify_serre(inst.group, a, s, cfg.solver());
  });
  nlohmann::json trials = nlohmann::json::array();
  std::size_t passed = 0;
  for (const auto& r : reports) {
    trials.push_back(to_json(r));
    passed += r.pass ? 1 : 0;
  }
  const bool ok = passed == reports.size();
  emit_json(cfg, {{"suite", "serre"}, {"passed", passed}, {"total", reports.size()}, {"trials", trials}, {"pass", ok}});
  return ok ? kOk : kFailed;
}

int verify_nonsplit_suite(const RunConfig& cfg, const VerifyParams& vp) {
  const auto split_report = verify_nonsplit(build_split_metabelian(vp.p, vp.n));
  const auto nonsplit_report = verify_nonsplit(build_nonsplit_metabelian(vp.p, vp.n));
  const bool ok = !split_report.nonsplit && nonsplit_report.nonsplit;
  emit_json(cfg, {{"suite", "nonsplit"}, {"split", to_json(split_report)},
                  {"nonsplit", to_json(nonsplit_report)}, {"pass", ok}});
  return ok ? kOk : kFailed;
}

int verify_gamma2_suite(const RunConfig& cfg, const VerifyParams& vp) {
  const auto report = verify_gamma_k2(build_gamma_k2(vp.p, vp.k));
  auto j = to_json(report);
  j["suite"] = "gamma2";
  emit_json(cfg, j);
  return report.ok() ? kOk : kFailed;
}

int verify_census_suite(const RunConfig& cfg, const VerifyParams& vp) {
  const auto census = rank_census(vp.p);
  bool ok = true;
  for (const auto& [k, count] : census) ok = ok && count == census_formula(vp.p, k);
  if (cfg.format == "csv") {
    std::ostringstream os;
    write_census_csv(os, vp.p, census);
    emit(cfg, os.str());
  } else {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& [k, count] : census) {
      rows.push_back({{"rank", k}, {"count", count}, {"formula_count", census_formula(vp.p, k)}});
    }
    emit_json(cfg, {{"suite", "census"}, {"p", vp.p}, {"rows", rows}, {"pass", ok}});
  }
  return ok ? kOk : kFailed;
}

int cmd_verify(const RunConfig& cfg, const VerifyParams& vp) {
  if (vp.suite == "main-theorem") return verify_main(cfg, vp);
  if (vp.suite == "serre") return verify_serre_suite(cfg, vp);
  if (vp.suite == "nonsplit") return verify_nonsplit_suite(cfg, vp);
  if (vp.suite == "gamma2") return verify_gamma2_suite(cfg, vp);
  if (vp.suite == "census") return verify_census_suite(cfg, vp);
  throw UsageError("unknown suite '" + vp.suite + "'");
}

struct BalanceParams {
  unsigned p = 5;
  unsigned n = 1;
  double delta = 0.25;
  double c = 2.0;
  std::size_t trials = 100;
  std::uint64_t s_cap = 10'000;
};

int cmd_balance(const RunConfig& cfg, const BalanceParams& bp) {
  if (!(bp.delta > 0.0 && bp.delta < 0.5)) throw UsageError("--delta must lie in (0, 1/2)");
  const auto s = required_s(bp.p, bp.delta, bp.c, bp.s_cap);
  const auto trials = parallel_map<BalanceTrial>(bp.trials, cfg.jobs, [&](std::size_t t) {
    const auto ms = sample_orbit_union(bp.p, bp.n, s, cfg.seed + t);
    const auto r = balance_defect(ms);
    return BalanceTrial{cfg.seed + t, s, bp.delta, r.delta_star, r.delta_star >= bp.delta};
  });
  const auto successes = static_cast<std::size_t>(
      std::count_if(trials.begin(), trials.end(), [](const BalanceTrial& t) { return t.success; }));
  const double rate = static_cast<double>(successes) / static_cast<double>(trials.size());
  if (cfg.format == "json") {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& t : trials) {
      rows.push_back({{"seed", t.seed}, {"s", t.s}, {"delta_target", round15(t.delta_target)},
                      {"delta_star", round15(t.delta_star)}, {"success", t.success}});
    }
    emit_json(cfg, {{"p", bp.p}, {"n", bp.n}, {"s", s}, {"trials", rows}, {"successes", successes},
                    {"success_rate", round15(rate)}});
  } else {
    std::ostringstream os;
    write_balance_csv(os, trials);
    emit(cfg, os.str());
    std::cerr << "success_rate " << successes << "/" << trials.size() << "\n";
  }
  return kOk;
}

int cmd_tame(const RunConfig& cfg, unsigned k_min, unsigned k_max, unsigned c_min, unsigned c_max) {
  if (k_max < k_min) k_max = k_min;
  if (c_max < c_min) throw UsageError("--c-max must be >= --c-min");
  std::vector<TameBoundEntry> rows;
  for (unsigned k = k_min; k <= k_max; ++k) {
    for (unsigned c = c_min; c <= c_max; ++c) rows.push_back(tame_kazhdan_bound(k, c));
  }
  if (cfg.format == "json") {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& e : rows) j.push_back(to_json(e));
    emit_json(cfg, j);
  } else {
    std::ostringstream os;
    write_tame_csv(os, rows);
    emit(cfg, os.str());
  }
  return kOk;
}

int cmd_geps(const RunConfig& cfg, const std::string& designator, double eps, std::size_t trials, std::size_t cap) {
  const auto lg = load_group(designator);
  auto report = g_epsilon_search(lg.group, eps, trials, cfg.seed, cap, cfg.solver());
  report.group = designator;
  emit_json(cfg, to_json(report));
  return kOk;
}

void add_common(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--seed", cfg.seed, "Random seed");
  cmd->add_option("--tol", cfg.tolerance, "Iterative solver tolerance")->check(CLI::PositiveNumber);
  cmd->add_option("--dense-threshold", cfg.dense_threshold, "Largest order solved densely")
      ->check(CLI::Range(std::size_t{1}, std::size_t{1} << 20));
  cmd->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
  cmd->add_option("--out", cfg.out_path, "Write output to this file instead of stdout");
  cmd->add_option("--jobs", cfg.jobs, "Worker threads for multi-trial commands (0: all cores)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral gaps and Kazhdan constants of finite group extensions"};
  app.require_subcommand(1);

  RunConfig cfg;

  std::string gap_spec;
  std::vector<std::string> gap_gens;
  auto* gap = app.add_subcommand("gap", "Spectral gap of a Cayley graph");
  gap->add_option("group", gap_spec, "cyclic:m | algebra:p | metabelian:p,n,split|nonsplit | gamma2:p,k | file:path")
      ->required();
  gap->add_option("--gens", gap_gens, "Element designators, or random:m")->required()->expected(1, -1);
  add_common(gap, cfg);

  VerifyParams vp;
  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("suite", vp.suite, "main-theorem | serre | nonsplit | gamma2 | census")
      ->required()
      ->check(CLI::IsMember({"main-theorem", "serre", "nonsplit", "gamma2", "census"}));
  verify->add_option("--p", vp.p, "Prime");
  verify->add_option("--n", vp.n, "Exponent of the cyclic quotient C_{p^n}");
  verify->add_option("--k", vp.k, "Rank of Gamma_{k,2}");
  verify->add_option("--trials", vp.trials, "Randomized trials")->check(CLI::PositiveNumber);
  verify->add_option("--variant", vp.variant, "Extension variant for main-theorem")
      ->check(CLI::IsMember({"split", "nonsplit", "both"}));
  add_common(verify, cfg);

  BalanceParams bp;
  auto* balance = app.add_subcommand("balance", "Balanced orbit-union experiment");
  balance->add_option("--p", bp.p, "Prime (<= 7)");
  balance->add_option("--n", bp.n, "Exponent of the acting C_{p^n}");
  balance->add_option("--delta", bp.delta, "Target balance delta in (0, 1/2)");
  balance->add_option("--c", bp.c, "Exponent c > 1 in the sample-size formula");
  balance->add_option("--trials", bp.trials, "Seeded trials")->check(CLI::PositiveNumber);
  balance->add_option("--s-cap", bp.s_cap, "Largest sample count s allowed");
  add_common(balance, cfg);

  unsigned k_min = 3, k_max = 0, c_min = 1, c_max = 10;
  auto* tame = app.add_subcommand("tame-table", "Kazhdan-constant bounds for tame automorphism groups");
  tame->add_option("--k", k_min, "k (or first k when --k-max is given)");
  tame->add_option("--k-max", k_max, "Last k");
  tame->add_option("--c-min", c_min, "First c");
  tame->add_option("--c-max", c_max, "Last c");
  add_common(tame, cfg);

  std::string geps_spec;
  double eps = 0.5;
  std::size_t geps_trials = 20, geps_cap = 0;
  auto* geps = app.add_subcommand("geps", "Randomized upper bound on g_eps");
  geps->add_option("group", geps_spec, "Group designator as for gap")->required();
  geps->add_option("--eps", eps, "Target average Kazhdan constant")->required()->check(CLI::PositiveNumber);
  geps->add_option("--trials", geps_trials, "Samples per set size")->check(CLI::PositiveNumber);
  geps->add_option("--cap", geps_cap, "Largest set size tried (0: 2 ceil(log2 |G|) + 2)");
  add_common(geps, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  if (cfg.format.empty()) cfg.format = (*balance || *tame) ? "csv" : "json";

  try {
    if (*gap) return cmd_gap(cfg, gap_spec, gap_gens);
    if (*verify) return cmd_verify(cfg, vp);
    if (*balance) return cmd_balance(cfg, bp);
    if (*tame) return cmd_tame(cfg, k_min, k_max, c_min, c_max);
    if (*geps) return cmd_geps(cfg, geps_spec, eps, geps_trials, geps_cap);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const SizeGuardError& e) {
    std::cerr << "size guard: " << e.what() << "\n";
    return kSizeGuard;
  } catch (const SearchCapError& e) {
    std::cerr << "search cap: " << e.what() << " (best avg_kazhdan " << round15(e.best_value()) << " at size "
              << e.best_size() << ")\n";
    return kSearchCap;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition: " << e.what() << "\n";
    return kUsage;
  } catch (const ConvergenceError& e) {
    std::cerr << "solver: " << e.what() << " (residual " << e.last_residual() << " after " << e.iterations()
              << " iterations)\n";
    return kFailed;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailed;
  }
  return kUsage;
}
