#include "fixtures.hpp"

#include "leibniz/error.hpp"
#include "leibniz/expr_parser.hpp"

#include <doctest.h>

using namespace leibniz;
using leibniz::testing::shipped_catalog;
using leibniz::testing::shipped_family;

namespace {

const OperatorKind kAllKinds[] = {OperatorKind::rota_baxter(RatExpr(0)),
                                  OperatorKind::nijenhuis(), OperatorKind::reynolds(),
                                  OperatorKind::averaging()};

OperatorFamily constant_family(const std::string &alg, OperatorKind kind, OperatorMatrix m) {
  OperatorFamily f;
  f.algebra = alg;
  f.kind = std::move(kind);
  f.label = alg + " constant";
  f.chart = std::move(m);
  return f;
}

} // namespace

TEST_CASE("zero operator solves every kind on every algebra") {
  for (const auto &t : shipped_catalog().tables())
    for (const auto &kind : kAllKinds)
      CHECK(operator_residual(t, kind, OperatorMatrix(4)).is_zero());
}

TEST_CASE("identity solves nijenhuis, reynolds and weight -1 rota-baxter") {
  OperatorMatrix id = OperatorMatrix::identity(4);
  for (const auto &t : shipped_catalog().tables()) {
    CHECK(operator_residual(t, OperatorKind::nijenhuis(), id).is_zero());
    CHECK(operator_residual(t, OperatorKind::reynolds(), id).is_zero());
    CHECK(operator_residual(t, OperatorKind::rota_baxter(RatExpr(-1)), id).is_zero());
  }
}

TEST_CASE("identity fails weight-0 rota-baxter on L1 at (1,1)") {
  const AlgebraTable &l1 = shipped_catalog().literal("L1");
  Verdict v = verify_family(
      l1, constant_family("L1", OperatorKind::rota_baxter(RatExpr(0)), OperatorMatrix::identity(4)));
  CHECK_FALSE(v.holds);
  REQUIRE(v.witness);
  CHECK(v.witness->i == 0);
  CHECK(v.witness->j == 0);
  CHECK(v.witness->q == 1);
  CHECK(v.witness->value == Poly(-1));
}

TEST_CASE("zero chart verifies with dimension zero") {
  for (const auto &kind : kAllKinds) {
    OperatorFamily f = constant_family("L5", kind, OperatorMatrix(4));
    CHECK(verify_family(shipped_catalog().literal("L5"), f).holds);
    CHECK(family_dimension(f) == 0);
  }
}

TEST_CASE("scaling a rota-baxter operator scales its weight") {
  // residual(cT, c*lambda) = c^2 residual(T, lambda) identically, so c*T
  // solves weight c*lambda whenever T solves weight lambda.
  RatExpr c = parse_expr("c"), lambda = parse_expr("lambda");
  OperatorMatrix t = OperatorMatrix::unknowns(4, "r");
  for (const char *name : {"L1", "L13", "L21"}) {
    const AlgebraTable &a = shipped_catalog().literal(name);
    OperatorResidual base = operator_residual(a, OperatorKind::rota_baxter(lambda), t);
    OperatorResidual scaled =
        operator_residual(a, OperatorKind::rota_baxter(c * lambda), t.scaled(c));
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j)
        for (std::size_t q = 0; q < 4; ++q)
          CHECK(scaled.at(i, j, q) == c * c * base.at(i, j, q));
  }
}

TEST_CASE("equation system and direct residual agree on charts") {
  const auto &cat = shipped_catalog();
  for (const char *label : {"L1 rota-baxter #3", "L1 nijenhuis #1", "L17 nijenhuis #2",
                            "L20 reynolds #1", "L13 averaging #1", "L4 nijenhuis #1"}) {
    const OperatorFamily &fam = shipped_family(label);
    const AlgebraTable &a = cat.effective(fam.algebra);
    EquationSystem sys = build_system(a, fam.kind);
    Bindings chart;
    for (std::size_t r = 0; r < 4; ++r)
      for (std::size_t col = 0; col < 4; ++col)
        chart[sys.unknowns[r * 4 + col]] = fam.chart.at(r, col);
    OperatorResidual direct = operator_residual(a, fam.kind, fam.chart);
    for (const auto &eq : sys.equations)
      CHECK(RatExpr(eq.poly, eq.multiplier).substitute(chart) == direct.at(eq.i, eq.j, eq.q));
  }
}

TEST_CASE("equation degrees stay within the bounds") {
  unsigned nij = 0, rey = 0;
  for (const auto &t : shipped_catalog().tables()) {
    CHECK(build_system(t, OperatorKind::rota_baxter(RatExpr(0))).max_degree_in_unknowns() <= 2);
    CHECK(build_system(t, OperatorKind::averaging()).max_degree_in_unknowns() <= 2);
    nij = std::max(nij, build_system(t, OperatorKind::nijenhuis()).max_degree_in_unknowns());
    rey = std::max(rey, build_system(t, OperatorKind::reynolds()).max_degree_in_unknowns());
  }
  CHECK(nij <= 3);
  CHECK(rey <= 3);
  MESSAGE("max degree nijenhuis " << nij << ", reynolds " << rey);
}

TEST_CASE("abelian systems are identically zero") {
  for (const auto &kind : kAllKinds)
    CHECK(build_system(abelian_table(4), kind).nonzero_count() == 0);
}

TEST_CASE("L21 rota-baxter equation at (3,3) on e4") {
  EquationSystem sys =
      build_system(shipped_catalog().literal("L21"), OperatorKind::rota_baxter(RatExpr(0)));
  CHECK(sys.equations.size() == 64);
  const Equation *eq = nullptr;
  for (const auto &e : sys.equations)
    if (e.i == 2 && e.j == 2 && e.q == 3)
      eq = &e;
  REQUIRE(eq);
  CHECK_FALSE(eq->poly.is_zero());
  // T = E33 (T e3 = e3): [e3,e3] = e4 while T kills e4.
  std::map<std::string, Poly> only_r33;
  for (const auto &u : sys.unknowns)
    only_r33[u] = Poly(u == "r33" ? 1 : 0);
  CHECK(eq->poly.substitute(only_r33) == Poly(1));
}

TEST_CASE("shipped families that verify") {
  const auto &cat = shipped_catalog();
  CHECK(verify_family(cat.literal("L1"), shipped_family("L1 rota-baxter #1")).holds);
  CHECK(verify_family(cat.literal("L1"), shipped_family("L1 nijenhuis #2")).holds);
  CHECK(verify_family(cat.literal("L1"), shipped_family("L1 rota-baxter #3")).holds);
}

TEST_CASE("L1 nijenhuis first matrix fails unless k43 = 0 or k21 = k32") {
  // By hand at x = y = e1: [Ne1,Ne1] = 0 and N([Ne1,e1] - N[e1,e1]) has e4
  // coefficient (k21 - k32) k43.
  const AlgebraTable &l1 = shipped_catalog().literal("L1");
  Verdict v = verify_family(l1, shipped_family("L1 nijenhuis #1"));
  CHECK_FALSE(v.holds);
  REQUIRE(v.witness);
  CHECK(v.witness->i == 0);
  CHECK(v.witness->j == 0);
  CHECK(v.witness->q == 3);
  CHECK(v.witness->value == parse_expr("(k32-k21)*k43").num());
}

TEST_CASE("family dimensions") {
  CHECK(family_dimension(shipped_family("L1 rota-baxter #1")) == 6);
  CHECK(family_dimension(shipped_family("L6 nijenhuis #1")) == 7);
}

TEST_CASE("identically zero constraint is rejected") {
  OperatorFamily f = constant_family("L1", OperatorKind::nijenhuis(), OperatorMatrix(4));
  f.constraints.push_back(Poly());
  CHECK_THROWS_AS(verify_family(shipped_catalog().literal("L1"), f), Error);
}

TEST_CASE("family file schema") {
  CHECK_THROWS_AS(parse_families(R"([{"algebra":"L1","kind":"nope","chart":[],"free":[],
                                     "constraints":[],"malformed":false}])"),
                  Error);
  auto fams = parse_families(R"([{"algebra":"L1","kind":"nijenhuis","chart":[["0","0"],["0"]],
                                  "free":[],"constraints":[],"malformed":true}])");
  CHECK(fams.at(0).malformed);
  CHECK_THROWS_AS(parse_families(R"([{"algebra":"L1","kind":"nijenhuis","chart":[["0","0"],["0"]],
                                       "free":[],"constraints":[],"malformed":false}])"),
                  Error);
}
