#pragma once

#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "kazhdan/balanced.hpp"
#include "kazhdan/lab.hpp"
#include "kazhdan/spectra.hpp"

namespace kazhdan {

/// x rounded to 15 significant digits; serialized reports use this so
/// output does not depend on the last bits of a floating-point sum.
double round15(double x);

nlohmann::json to_json(const SpectralReport& r);
nlohmann::json to_json(const MainTheoremReport& r);
nlohmann::json to_json(const SerreReport& r);
nlohmann::json to_json(const NonsplitReport& r);
nlohmann::json to_json(const GammaK2Report& r);
nlohmann::json to_json(const GEpsilonReport& r);
nlohmann::json to_json(const BalancedReport& r);
nlohmann::json to_json(const TameBoundEntry& e);

/// Two-space indented JSON followed by a newline.
std::string dump(const nlohmann::json& j);

/// rank,count,formula_count
void write_census_csv(std::ostream& out, unsigned p, const std::map<unsigned, std::uint64_t>& census);

struct BalanceTrial {
  std::uint64_t seed = 0;
  std::uint64_t s = 0;
  double delta_target = 0.0;
  double delta_star = 0.0;
  bool success = false;
};
/// seed,s,delta_target,delta_star,success
void write_balance_csv(std::ostream& out, std::span<const BalanceTrial> trials);

/// k,c,case,bound,nielsen_size
void write_tame_csv(std::ostream& out, std::span<const TameBoundEntry> rows);

/// (p - 1) p^(k - 1) for k >= 1, 1 for k = 0.
std::uint64_t census_formula(unsigned p, unsigned k);

}  // namespace kazhdan
