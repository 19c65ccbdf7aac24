#include "fixtures.hpp"

#include "leibniz/compatibility.hpp"
#include "leibniz/error.hpp"

#include <doctest.h>

using namespace leibniz;
using leibniz::testing::shipped_catalog;

TEST_CASE("mixed residual of a table with itself is twice its residual") {
  AlgebraTable one("one", 1);
  one.set(0, 0, 0, RatExpr(1));
  for (const AlgebraTable *t : {static_cast<const AlgebraTable *>(&one), &shipped_catalog().literal("L4"),
                                &shipped_catalog().literal("L13")}) {
    ResidualTensor m = mixed_residual(*t, *t), r = leibniz_residual(*t);
    const std::size_t n = t->dim();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
          for (std::size_t q = 0; q < n; ++q)
            CHECK(m.at(i, j, k, q) == RatExpr(2) * r.at(i, j, k, q));
  }
}

TEST_CASE("diagonal and abelian pairs") {
  const auto &cat = shipped_catalog();
  for (const auto &name : cat.names()) {
    const AlgebraTable &t = cat.effective(name);
    CHECK(is_compatible(t, t));
    CHECK(mixed_residual(t, abelian_table(4)).is_zero());
    CHECK(mixed_residual(cat.literal(name), abelian_table(4)).is_zero());
  }
  CHECK_THROWS_AS(mixed_residual(abelian_table(3), abelian_table(4)), Error);
}

TEST_CASE("claimed compatible pairs") {
  const auto &cat = shipped_catalog();
  CHECK(mixed_residual(cat.literal("L1"), cat.literal("L3")).is_zero());
  CHECK(is_compatible(cat.literal("L1"), cat.literal("L3")));
  auto [a, b] = pair_tables(cat, "L14", "L16");
  CHECK(is_compatible(a, b));
  CHECK(b.variables().empty());
  auto [c, d] = pair_tables(cat, "L13", "L14");
  CHECK(d.variables() == std::set<std::string>{"mu_b"});
}

TEST_CASE("compatibility is symmetric") {
  const auto &cat = shipped_catalog();
  auto names = cat.names();
  for (std::size_t i = 0; i < names.size(); ++i)
    for (std::size_t j = i + 1; j < names.size(); j += 3) {
      auto [a, b] = pair_tables(cat, names[i], names[j]);
      CHECK(is_compatible(a, b) == is_compatible(b, a));
    }
}

TEST_CASE("failing pair yields a combined-bracket witness") {
  ScanOptions opts;
  opts.lambda_trials = 5;
  PairOutcome o = compat_pair(shipped_catalog(), "L1", "L2", {}, opts);
  CHECK_FALSE(o.compatible);
  REQUIRE(o.check.witness);
  REQUIRE(o.combined_witness);
  AlgebraTable sum = combined_bracket(shipped_catalog().literal("L1"),
                                      shipped_catalog().literal("L2"), RatExpr(1), RatExpr(1));
  auto w = leibniz_residual(sum).first_nonzero();
  REQUIRE(w);
  CHECK((*o.combined_witness)[0] == w->i + 1);

  PairOutcome ok = compat_pair(shipped_catalog(), "L1", "L3", {}, opts);
  CHECK(ok.compatible);
  CHECK(ok.lambda_checks == 5);
  CHECK(ok.lambda_failures == 0);
}

TEST_CASE("scan flags unmatchable claims and partitions the pairs") {
  std::vector<NamePair> claims{{"L1", "L3"}, {"L12", "L23"}, {"L3", "L1"}, {"L2", "L1"}};
  ScanOptions opts;
  opts.lambda_trials = 2;
  PairReport rep = compat_scan(shipped_catalog(), claims, opts);
  CHECK(rep.diagonal.size() == 21);
  CHECK(rep.pairs.size() == 210);
  REQUIRE(rep.unmatchable_claims.size() == 1);
  CHECK(rep.unmatchable_claims[0] == NamePair{"L12", "L23"});
  CHECK(std::find(rep.claimed_but_failing.begin(), rep.claimed_but_failing.end(),
                  NamePair{"L1", "L2"}) != rep.claimed_but_failing.end());
  CHECK(std::find(rep.compatible.begin(), rep.compatible.end(), NamePair{"L14", "L16"}) !=
        rep.compatible.end());
  std::size_t compatible = 0;
  for (const auto &p : rep.pairs) {
    compatible += p.compatible;
    CHECK(p.symmetric);
    if (p.compatible)
      CHECK(p.lambda_failures == 0);
  }
  CHECK(compatible == rep.compatible.size());
  CHECK(rep.passing_but_unclaimed.size() + 1 == rep.compatible.size());
}

TEST_CASE("claims schema") {
  CHECK(parse_claims(R"([["L1","L3"]])").size() == 1);
  CHECK_THROWS_AS(parse_claims(R"([["L1"]])"), Error);
  CHECK_THROWS_AS(parse_claims(R"({"a":1})"), Error);
}
