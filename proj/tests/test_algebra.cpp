#include "fixtures.hpp"
#include "generators.hpp"

#include "leibniz/error.hpp"
#include "leibniz/expr_parser.hpp"

#include <doctest.h>

using namespace leibniz;
using leibniz::testing::random_vector;
using leibniz::testing::shipped_catalog;

namespace {

Vector e(std::size_t n, std::size_t i) { return basis_vector(n, i - 1); }

// Residual computed straight from the definition with the bracket as the
// only primitive.
ResidualTensor naive_residual(const AlgebraTable &a) {
  const std::size_t n = a.dim();
  ResidualTensor r(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        Vector x = basis_vector(n, i), y = basis_vector(n, j), z = basis_vector(n, k);
        Vector lhs = bracket(a, x, bracket(a, y, z));
        Vector t1 = bracket(a, bracket(a, x, y), z);
        Vector t2 = bracket(a, bracket(a, x, z), y);
        for (std::size_t q = 0; q < n; ++q)
          r.at(i, j, k, q) = lhs[q] - t1[q] + t2[q];
      }
  return r;
}

} // namespace

TEST_CASE("bracket examples") {
  const auto &cat = shipped_catalog();
  CHECK(bracket(cat.literal("L1"), e(4, 1), e(4, 1)) == e(4, 2));
  CHECK(bracket(cat.literal("L17"), e(4, 1), e(4, 2)) == e(4, 3));
  CHECK(bracket(cat.literal("L17"), e(4, 2), e(4, 1)) == e(4, 4));
  Vector zero(4);
  for (const auto &t : cat.tables())
    CHECK(bracket(t, zero, e(4, 3)) == zero);
  CHECK_THROWS_AS(bracket(cat.literal("L1"), e(3, 1), e(4, 1)), Error);
}

TEST_CASE("bracket is bilinear") {
  std::mt19937_64 rng(11);
  const auto &cat = shipped_catalog();
  for (const char *name : {"L1", "L13", "L20"}) {
    const AlgebraTable &a = cat.literal(name);
    for (int trial = 0; trial < 10; ++trial) {
      Vector u = random_vector(rng, 4), v = random_vector(rng, 4), w = random_vector(rng, 4);
      RatExpr c(testing::random_scalar(rng));
      Vector uc(4), uw(4);
      for (std::size_t k = 0; k < 4; ++k) {
        uc[k] = c * u[k];
        uw[k] = u[k] + w[k];
      }
      Vector lhs = bracket(a, uw, v), a1 = bracket(a, u, v), a2 = bracket(a, w, v);
      Vector sc = bracket(a, uc, v), plain = bracket(a, v, u);
      Vector sc2 = bracket(a, v, uc);
      for (std::size_t k = 0; k < 4; ++k) {
        CHECK(lhs[k] == a1[k] + a2[k]);
        CHECK(sc[k] == c * a1[k]);
        CHECK(sc2[k] == c * plain[k]);
      }
    }
  }
}

TEST_CASE("leibniz residual examples") {
  const auto &cat = shipped_catalog();
  CHECK(leibniz_residual(cat.literal("L1")).is_zero());
  CHECK(leibniz_residual(abelian_table(4)).is_zero());

  AlgebraTable one("one", 1);
  one.set(0, 0, 0, RatExpr(1));
  ResidualTensor r = leibniz_residual(one);
  CHECK_FALSE(r.is_zero());
  CHECK(r.at(0, 0, 0, 0) == RatExpr(1));
  auto w = r.first_nonzero();
  REQUIRE(w);
  CHECK(w->i == 0);
  CHECK(w->q == 0);
}

TEST_CASE("residual agrees with the naive oracle on the catalog") {
  for (const auto &t : shipped_catalog().tables()) {
    ResidualTensor fast = leibniz_residual(t), slow = naive_residual(t);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j)
        for (std::size_t k = 0; k < 4; ++k)
          for (std::size_t q = 0; q < 4; ++q)
            CHECK(fast.at(i, j, k, q) == slow.at(i, j, k, q));
  }
}

TEST_CASE("printed L4 fails and the errata reading passes") {
  const auto &cat = shipped_catalog();
  auto w = leibniz_residual(cat.literal("L4")).first_nonzero();
  REQUIRE(w);
  const ErrataEntry *err = cat.errata_for("L4");
  REQUIRE(err);
  REQUIRE(err->failing);
  CHECK((*err->failing)[0] == w->i + 1);
  CHECK((*err->failing)[1] == w->j + 1);
  CHECK((*err->failing)[2] == w->k + 1);
  CHECK(leibniz_residual(cat.effective("L4")).is_zero());
}

TEST_CASE("lower central series examples") {
  const auto &cat = shipped_catalog();
  CHECK(lower_central_series(cat.literal("L1")) == std::vector<std::size_t>{4, 3, 2, 1, 0});
  CHECK(lower_central_series(abelian_table(4)) == std::vector<std::size_t>{4, 0});
  CHECK(lower_central_series(cat.literal("L17")) == std::vector<std::size_t>{4, 2, 0});
  CHECK_THROWS_AS(lower_central_series(cat.literal("L20")), Error);
  Bindings mu2{{"mu", RatExpr(2)}};
  CHECK(is_nilpotent(lower_central_series(cat.literal("L20"), mu2)));
}

TEST_CASE("catalog contents") {
  const auto &cat = shipped_catalog();
  CHECK(cat.names().size() == 21);
  const AlgebraTable &l20 = cat.literal("L20");
  CHECK(l20.at(1, 0, 3) == parse_expr("(1+mu)/(1-mu)"));
  const ParamDecl *mu = cat.literal("L4").find_param("mu");
  REQUIRE(mu);
  CHECK(mu->admissible.is_finite());
  CHECK(mu->admissible.values() == std::vector<Scalar>{Scalar(0), Scalar(1)});
  CHECK(cat.literal("L20").sample_bindings(default_param_samples()).size() == 3);
}

TEST_CASE("combined bracket") {
  const auto &cat = shipped_catalog();
  const AlgebraTable &l1 = cat.literal("L1"), &l3 = cat.literal("L3");
  AlgebraTable first = combined_bracket(l1, l3, RatExpr(1), RatExpr(0));
  AlgebraTable doubled = combined_bracket(l1, l1, RatExpr(1), RatExpr(1));
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      for (std::size_t k = 0; k < 4; ++k) {
        CHECK(first.at(i, j, k) == l1.at(i, j, k));
        CHECK(doubled.at(i, j, k) == RatExpr(2) * l1.at(i, j, k));
      }
  CHECK(leibniz_residual(combined_bracket(l1, l3, RatExpr(1), RatExpr(1))).is_zero());
  CHECK_THROWS_AS(combined_bracket(l1, abelian_table(3), RatExpr(1), RatExpr(1)), Error);
}

TEST_CASE("combined residual expands into the two residuals and the mixed term") {
  // R(l1 A + l2 B) = l1^2 R(A) + l2^2 R(B) + l1 l2 (C(A,B) + C(B,A)),
  // checked with symbolic l1, l2.
  const auto &cat = shipped_catalog();
  RatExpr l1 = parse_expr("l1"), l2 = parse_expr("l2");
  for (auto [x, y] : {std::pair{"L1", "L3"}, std::pair{"L2", "L9"}, std::pair{"L17", "L18"}}) {
    const AlgebraTable &a = cat.literal(x), &b = cat.literal(y);
    ResidualTensor total = leibniz_residual(combined_bracket(a, b, l1, l2));
    ResidualTensor ra = leibniz_residual(a), rb = leibniz_residual(b);
    ResidualTensor ab = composed_residual(a, b), ba = composed_residual(b, a);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j)
        for (std::size_t k = 0; k < 4; ++k)
          for (std::size_t q = 0; q < 4; ++q)
            CHECK(total.at(i, j, k, q) ==
                  l1 * l1 * ra.at(i, j, k, q) + l2 * l2 * rb.at(i, j, k, q) +
                      l1 * l2 * (ab.at(i, j, k, q) + ba.at(i, j, k, q)));
  }
}

TEST_CASE("catalog schema errors name the offending pointer") {
  auto message = [](const char *text) {
    try {
      parse_catalog(text);
    } catch (const Error &e) {
      CHECK(e.code() == ErrorCode::Schema);
      return std::string(e.what());
    }
    FAIL("expected a schema error");
    return std::string();
  };
  CHECK(message(R"([{"name":"X","dim":2,"params":[],"entries":[[1,1,3,"1"]]}])")
            .find("/0/entries/0") != std::string::npos);
  CHECK(message(R"([{"name":"X","dim":2,"params":[],"entries":[[1,1,1,"mu"]]}])")
            .find("/0/entries/0") != std::string::npos);
  CHECK(message(R"([{"name":"X","params":[],"entries":[]}])").find("/0") !=
        std::string::npos);
  CHECK(message(R"([{"name":"X","dim":2,"params":[],"entries":[[1,1,1,"1+"]]}])")
            .find("/0/entries/0") != std::string::npos);
}
