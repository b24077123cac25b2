#include <doctest.h>

#include <sstream>

#include "kazhdan/report_io.hpp"

using namespace kazhdan;

TEST_CASE("round15") {
  CHECK(round15(0.1 + 0.2) == 0.3);
  CHECK(round15(1.0 / 3.0) == 0.333333333333333);
  CHECK(round15(0.0) == 0.0);
}

TEST_CASE("spectral report schema") {
  const Element s[] = {1};
  auto r = abelian_gap_characters(build_cayley(make_cyclic(3), s));
  r.seed = 9;
  const auto j = to_json(r);
  for (const char* key : {"group", "order", "degree", "lambda2", "beta", "avg_kazhdan", "method", "tolerance",
                          "iterations", "connected", "seed"}) {
    CHECK(j.contains(key));
  }
  CHECK(j["method"] == "characters");
  CHECK(j["beta"].get<double>() == 1.5);
  CHECK(j["seed"] == 9);
  CHECK(dump(j) == dump(to_json(r)));
  CHECK(dump(j).back() == '\n');
}

TEST_CASE("main theorem schema") {
  MainTheoremReport r;
  r.p = 3;
  r.n = 2;
  const auto j = to_json(r);
  for (const char* key : {"p", "n", "split", "sizeS", "sizeB", "eps_H", "eps_A", "eps_Gamma", "bound", "ratio", "pass"}) {
    CHECK(j.contains(key));
  }
  CHECK(j.size() == 11);
}

TEST_CASE("csv writers") {
  std::ostringstream census;
  write_census_csv(census, 3, rank_census(3));
  CHECK(census.str() == "rank,count,formula_count\n0,1,1\n1,2,2\n2,6,6\n3,18,18\n");

  std::ostringstream tame;
  const TameBoundEntry rows[] = {tame_kazhdan_bound(3, 1), tame_kazhdan_bound(3, 7)};
  write_tame_csv(tame, rows);
  const auto text = tame.str();
  CHECK(text.rfind("k,c,case,bound,nielsen_size\n3,1,small_c,", 0) == 0);
  CHECK(text.find("\n3,7,c=2kl+1,") != std::string::npos);

  std::ostringstream bal;
  const BalanceTrial trials[] = {{4, 52, 0.25, 0.5, true}};
  write_balance_csv(bal, trials);
  CHECK(bal.str() == "seed,s,delta_target,delta_star,success\n4,52,0.25,0.5,1\n");
}
