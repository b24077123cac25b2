#include "kazhdan/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>

namespace kazhdan {
namespace {

std::string fmt15(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

}  // namespace

double round15(double x) {
  if (!std::isfinite(x)) return x;
  return std::strtod(fmt15(x).c_str(), nullptr);
}

nlohmann::json to_json(const SpectralReport& r) {
  nlohmann::json j;
  j["group"] = r.group;
  j["order"] = r.order;
  j["degree"] = r.degree;
  j["lambda2"] = round15(r.lambda2);
  j["beta"] = round15(r.beta);
  j["avg_kazhdan"] = round15(r.avg_kazhdan);
  j["method"] = to_string(r.method);
  j["tolerance"] = round15(r.tolerance);
  j["iterations"] = r.iterations;
  j["connected"] = r.connected;
  j["vacuous"] = r.vacuous;
  j["seed"] = r.seed;
  return j;
}

nlohmann::json to_json(const MainTheoremReport& r) {
  return {{"p", r.p},
          {"n", r.n},
          {"split", r.split},
          {"sizeS", r.size_s},
          {"sizeB", r.size_b},
          {"eps_H", round15(r.eps_h)},
          {"eps_A", round15(r.eps_a)},
          {"eps_Gamma", round15(r.eps_gamma)},
          {"bound", round15(r.bound)},
          {"ratio", round15(r.ratio)},
          {"pass", r.pass}};
}

nlohmann::json to_json(const SerreReport& r) {
  nlohmann::json j = {{"group", r.group},
                      {"order", r.order},
                      {"sizeS", r.size_s},
                      {"eps2_quotient", round15(r.eps2_quotient)},
                      {"relative_avg", round15(r.relative_avg)},
                      {"avg_bound", round15(r.avg_bound)},
                      {"avg_pass", r.avg_pass},
                      {"vacuous", r.vacuous},
                      {"quotient_abelian", r.quotient_abelian},
                      {"pass", r.pass}};
  if (r.quotient_abelian) {
    j["eps1_quotient"] = round15(r.eps1_quotient);
    j["max_bound"] = round15(r.max_bound);
    j["max_lower"] = round15(r.max_lower);
    j["max_certified"] = r.max_certified;
  }
  return j;
}

nlohmann::json to_json(const NonsplitReport& r) {
  nlohmann::json orders = nlohmann::json::object();
  for (const auto& [ord, count] : r.lifting_orders) orders[std::to_string(ord)] = count;
  nlohmann::json j = {{"nonsplit", r.nonsplit}, {"target_order", r.target_order}, {"lifting_orders", orders}};
  j["witness"] = r.witness ? nlohmann::json(*r.witness) : nlohmann::json(nullptr);
  return j;
}

nlohmann::json to_json(const GammaK2Report& r) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
  return {{"checks", checks}, {"pass", r.ok()}};
}

nlohmann::json to_json(const GEpsilonReport& r) {
  nlohmann::json best = nlohmann::json::array();
  for (double v : r.best_by_size) best.push_back(round15(v));
  return {{"group", r.group},   {"order", r.order},
          {"eps", round15(r.eps)}, {"m", r.m},
          {"witness", r.witness}, {"avg_kazhdan", round15(r.avg_kazhdan)},
          {"verified_avg", round15(r.verified_avg)}, {"trials", r.trials},
          {"cap", r.cap},       {"best_by_size", best}};
}

nlohmann::json to_json(const BalancedReport& r) {
  return {{"delta_star", round15(r.delta_star)}, {"witness", r.witness.coeffs}, {"multiset_size", r.multiset_size}};
}

nlohmann::json to_json(const TameBoundEntry& e) {
  return {{"k", e.k},
          {"c", e.c},
          {"case", to_string(e.case_label)},
          {"bound", round15(e.bound)},
          {"nielsen_size", e.nielsen_size}};
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

std::uint64_t census_formula(unsigned p, unsigned k) {
  return k == 0 ? 1 : (p - 1) * ipow(p, k - 1);
}

void write_census_csv(std::ostream& out, unsigned p, const std::map<unsigned, std::uint64_t>& census) {
  out << "rank,count,formula_count\n";
  for (const auto& [k, count] : census) out << k << ',' << count << ',' << census_formula(p, k) << '\n';
}

void write_balance_csv(std::ostream& out, std::span<const BalanceTrial> trials) {
  out << "seed,s,delta_target,delta_star,success\n";
  for (const auto& t : trials) {
    out << t.seed << ',' << t.s << ',' << fmt15(t.delta_target) << ',' << fmt15(t.delta_star) << ','
        << (t.success ? 1 : 0) << '\n';
  }
}

void write_tame_csv(std::ostream& out, std::span<const TameBoundEntry> rows) {
  out << "k,c,case,bound,nielsen_size\n";
  for (const auto& e : rows) {
    out << e.k << ',' << e.c << ',' << to_string(e.case_label) << ',' << fmt15(e.bound) << ','
        << e.nielsen_size << '\n';
  }
}

}  // namespace kazhdan
