#include "fixtures.hpp"

#include "leibniz/error.hpp"
#include "leibniz/fp_oracle.hpp"

#include <algorithm>
#include <doctest.h>

using namespace leibniz;
using leibniz::testing::shipped_catalog;
using leibniz::testing::shipped_family;
using leibniz::testing::shipped_families;

namespace {

FpMatrix from_rows(std::uint32_t p, std::vector<std::vector<std::uint32_t>> rows) {
  FpMatrix m(p, rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows.size(); ++c)
      m.at(r, c) = rows[r][c];
  return m;
}

bool contains(const std::vector<FpMatrix> &v, const FpMatrix &m) {
  return std::find(v.begin(), v.end(), m) != v.end();
}

} // namespace

TEST_CASE("enumeration order is the little-endian digit counter") {
  FpMatrix m = matrix_at_index(1 + 2 * 3 + 1 * 27, 3, 2);
  CHECK(m.at(0, 0) == 1);
  CHECK(m.at(0, 1) == 2);
  CHECK(m.at(1, 0) == 0);
  CHECK(m.at(1, 1) == 1);
  CHECK(m.to_string() == "1 2;0 1");
}

TEST_CASE("zero and identity are yielded") {
  const AlgebraTable &l1 = shipped_catalog().literal("L1");
  FpMatrix zero(2, 4), id = from_rows(2, {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}});
  auto nij = enumerate_solutions(l1, OperatorKind::nijenhuis(), 2, {});
  CHECK(nij.scanned == 65536);
  CHECK(nij.solutions.front() == zero);
  CHECK(contains(nij.solutions, id));
  for (const auto &kind : {OperatorKind::rota_baxter(RatExpr(0)), OperatorKind::reynolds(),
                           OperatorKind::averaging()})
    CHECK(enumerate_solutions(l1, kind, 2, {}).solutions.front() == zero);
}

TEST_CASE("compiled and direct paths agree on L17 rota-baxter") {
  const AlgebraTable &l17 = shipped_catalog().literal("L17");
  auto kind = OperatorKind::rota_baxter(RatExpr(0));
  auto compiled = enumerate_solutions(l17, kind, 2, {}, EvalPath::Compiled);
  auto direct = enumerate_solutions(l17, kind, 2, {}, EvalPath::Direct);
  CHECK(compiled.solutions.size() == direct.solutions.size());
  CHECK(compiled.solutions == direct.solutions);
  DualPathResult dual = dual_path_check(l17, kind, 2, {});
  CHECK(dual.agree());
  CHECK(dual.compiled_solutions == compiled.solutions.size());
}

TEST_CASE("sharding does not change the result") {
  const AlgebraTable &l3 = shipped_catalog().literal("L3");
  auto one = enumerate_solutions(l3, OperatorKind::averaging(), 2, {.budget = 1 << 20, .workers = 1});
  auto four = enumerate_solutions(l3, OperatorKind::averaging(), 2, {.budget = 1 << 20, .workers = 4});
  CHECK(one.solutions == four.solutions);
}

TEST_CASE("yields lift to exact solutions") {
  std::mt19937_64 rng(5);
  for (const char *name : {"L17", "L1", "L9"})
    for (const auto &kind : {OperatorKind::rota_baxter(RatExpr(0)), OperatorKind::nijenhuis(),
                             OperatorKind::reynolds(), OperatorKind::averaging()}) {
      const AlgebraTable &a = shipped_catalog().literal(name);
      auto sols = enumerate_solutions(a, kind, 2, {}).solutions;
      std::uniform_int_distribution<std::size_t> pick(0, sols.size() - 1);
      for (int k = 0; k < 100; ++k)
        CHECK(lifted_residual_vanishes(a, kind, sols[pick(rng)]));
    }
}

TEST_CASE("budget refuses large sweeps") {
  const AlgebraTable &l1 = shipped_catalog().literal("L1");
  try {
    enumerate_solutions(l1, OperatorKind::nijenhuis(), 3, {});
    FAIL("expected RefusedSize");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::RefusedSize);
  }
}

TEST_CASE("abelian algebra: every matrix solves") {
  auto r = enumerate_solutions(abelian_table(4), OperatorKind::reynolds(), 2, {});
  CHECK(r.solutions.size() == 65536);
  CoverageReport rep = coverage(abelian_table(4), OperatorKind::reynolds(), 2, {}, {}, {}, 10);
  CHECK(rep.total == 65536);
  CHECK(rep.covered == 0);
  CHECK(rep.uncovered.size() == 10);
}

TEST_CASE("chart membership examples") {
  const OperatorFamily &first = shipped_family("L1 rota-baxter #1");
  FpMatrix zero(2, 4);
  CHECK(chart_membership(first, zero));
  FpMatrix corner = zero;
  corner.at(0, 0) = 1;
  CHECK_FALSE(chart_membership(first, corner));

  const OperatorFamily &third = shipped_family("L1 rota-baxter #3");
  // r22 = 1, r32 = 1, r43 = 1 gives (4,4) = -1 = 1.
  FpMatrix m = from_rows(2, {{0, 0, 0, 0}, {0, 1, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 1}});
  CHECK(chart_membership(third, m));
  FpMatrix no_r32 = from_rows(2, {{0, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 0}, {0, 0, 1, 0}});
  CHECK_FALSE(chart_membership(third, no_r32));
  CHECK_FALSE(chart_membership(third, zero));
}

TEST_CASE("chart round trip on random admissible assignments") {
  std::mt19937_64 rng(17);
  for (const char *kind : {"rota-baxter", "nijenhuis"})
    for (const auto &fam : shipped_families(kind)) {
      if (fam.malformed || fam.algebra != "L1")
        continue;
      auto chart = FpChart::compile(fam, 2, {}, nullptr);
      REQUIRE(chart);
      for (int k = 0; k < 100; ++k) {
        auto x = chart->random_admissible(rng);
        if (!x)
          break;
        auto m = chart->evaluate(*x);
        REQUIRE(m);
        CHECK(chart->contains(*m));
      }
    }
}

TEST_CASE("coverage is independent of family order") {
  const AlgebraTable &l17 = shipped_catalog().literal("L17");
  std::vector<const OperatorFamily *> fams;
  for (const auto &f : shipped_families("nijenhuis"))
    if (f.algebra == "L17")
      fams.push_back(&f);
  REQUIRE(fams.size() > 1);
  CoverageReport a = coverage(l17, OperatorKind::nijenhuis(), 2, fams, {}, {});
  std::mt19937_64 rng(3);
  std::shuffle(fams.begin(), fams.end(), rng);
  CoverageReport b = coverage(l17, OperatorKind::nijenhuis(), 2, fams, {}, {});
  CHECK(a.total == b.total);
  CHECK(a.covered == b.covered);
  CHECK(a.uncovered == b.uncovered);
  CHECK(a.covered <= a.total);
  CHECK(a.uncovered.size() == std::min<std::uint64_t>(a.total - a.covered, a.cap));
}

TEST_CASE("charts that do not reduce are skipped") {
  OperatorFamily f;
  f.algebra = "L1";
  f.kind = OperatorKind::nijenhuis();
  f.chart = OperatorMatrix(4);
  f.chart.at(0, 0) = RatExpr(Poly(1), Poly(2));
  std::string why;
  CHECK_FALSE(FpChart::compile(f, 2, {}, &why));
  CHECK_FALSE(why.empty());
  CHECK(FpChart::compile(f, 3, {}, &why));
}
