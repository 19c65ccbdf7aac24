#include "generators.hpp"

#include "leibniz/error.hpp"
#include "leibniz/expr_parser.hpp"
#include "leibniz/mod_p.hpp"

#include <doctest.h>

using namespace leibniz;
using leibniz::testing::random_poly;
using leibniz::testing::random_ratexpr;
using leibniz::testing::random_scalar;

namespace {

ErrorCode code_of(auto &&fn) {
  try {
    fn();
  } catch (const Error &e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::Usage;
}

} // namespace

TEST_CASE("scalar arithmetic stays canonical") {
  Scalar a(mpq_class(2, 4));
  CHECK(a.re().get_num() == 1);
  CHECK(a.re().get_den() == 2);
  Scalar i = Scalar::imaginary_unit();
  CHECK(i * i == Scalar(-1));
  CHECK((Scalar(1) + i) / (Scalar(1) - i) == i);
  CHECK(Scalar(mpq_class(-6, 4)).to_string() == "-3/2");
  CHECK(code_of([] { Scalar(1) / Scalar(0); }) == ErrorCode::DenominatorVanishes);
}

TEST_CASE("parse_expr examples") {
  RatExpr zero = parse_expr("0");
  CHECK(zero.is_zero());
  CHECK(zero.den() == Poly(1));

  RatExpr q = parse_expr("-r22*r43/r32");
  CHECK(q.num() == -(Poly::var("r22") * Poly::var("r43")));
  CHECK(q.den() == Poly::var("r32"));

  RatExpr l20 = parse_expr("(1+mu)/(1-mu)");
  CHECK(l20.num() == Poly(1) + Poly::var("mu"));
  CHECK(l20.den() == Poly(1) - Poly::var("mu"));

  CHECK(parse_expr("3/4") == RatExpr(Scalar(mpq_class(3, 4))));
  CHECK(parse_expr("i^2") == RatExpr(-1));
  CHECK(parse_expr("x^-2") == RatExpr(Poly(1), Poly::var("x").pow(2)));
  CHECK(parse_expr("2*(a+b)^2 - 2*a^2 - 4*a*b") == parse_expr("2*b^2"));
  CHECK(parse_expr("  r_1 + R2 ") == RatExpr::var("r_1") + RatExpr::var("R2"));
}

TEST_CASE("parse_expr rejects malformed input with a byte offset") {
  for (const char *bad : {"", "1+", "(a", "a)", "2**3", "x^y", "μ", "1 2", "a^"}) {
    CAPTURE(bad);
    CHECK(code_of([&] { parse_expr(bad); }) == ErrorCode::Parse);
  }
  try {
    parse_expr("a + $");
    FAIL("no throw");
  } catch (const Error &e) {
    CHECK(std::string(e.what()).find("byte 4") != std::string::npos);
  }
  CHECK(code_of([] { parse_expr("1/0"); }) == ErrorCode::Parse);
  CHECK(code_of([] { parse_expr("x/(y-y)"); }) == ErrorCode::Parse);
}

TEST_CASE("substitute examples") {
  RatExpr l20 = parse_expr("(1+mu)/(1-mu)");
  CHECK(l20.substitute({{"mu", RatExpr(0)}}) == RatExpr(1));
  CHECK(code_of([&] { l20.substitute({{"mu", RatExpr(1)}}); }) ==
        ErrorCode::DenominatorVanishes);
  RatExpr partial = parse_expr("r11 + r22").substitute({{"r11", RatExpr(3)}});
  CHECK(partial == parse_expr("3 + r22"));
  CHECK(partial.variables() == std::set<std::string>{"r22"});
  // bindings for absent parameters are ignored
  CHECK(parse_expr("x").substitute({{"y", RatExpr(2)}}) == RatExpr::var("x"));
}

TEST_CASE("reduce_mod_p examples") {
  CHECK(reduce_mod_p(parse_expr("1/2"), 5) == 3);
  CHECK(reduce_mod_p(parse_expr("-1"), 2) == 1);
  CHECK(code_of([] { reduce_mod_p(parse_expr("3/4"), 2); }) ==
        ErrorCode::NonInvertibleDenominator);
  CHECK(code_of([] { reduce_mod_p(parse_expr("1+i"), 3); }) == ErrorCode::NonRealValue);
  CHECK(code_of([] { reduce_mod_p(parse_expr("x"), 3); }) == ErrorCode::UnboundParameter);
  CHECK(code_of([] { reduce_mod_p(parse_expr("1"), 4); }) == ErrorCode::Usage);
}

TEST_CASE("ring axioms hold exactly for random polynomials") {
  std::mt19937_64 rng(1);
  const std::vector<std::string> vars{"x", "y", "z"};
  for (int trial = 0; trial < 200; ++trial) {
    Poly a = random_poly(rng, vars), b = random_poly(rng, vars), c = random_poly(rng, vars);
    CHECK((a + b) + c == a + (b + c));
    CHECK(a + b == b + a);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * b == b * a);
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a - a).is_zero());
    CHECK(a * Poly(1) == a);
  }
}

TEST_CASE("rational expression field identities") {
  std::mt19937_64 rng(2);
  const std::vector<std::string> vars{"x", "y"};
  for (int trial = 0; trial < 100; ++trial) {
    RatExpr a = random_ratexpr(rng, vars), b = random_ratexpr(rng, vars),
            c = random_ratexpr(rng, vars);
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a + b) - b == a);
    if (!b.is_zero())
      CHECK((a / b) * b == a);
  }
}

TEST_CASE("print then parse is a fixed point") {
  std::mt19937_64 rng(3);
  const std::vector<std::string> vars{"mu", "r21", "k3"};
  for (int trial = 0; trial < 200; ++trial) {
    RatExpr e = random_ratexpr(rng, vars);
    std::string text = e.to_string();
    CAPTURE(text);
    RatExpr back = parse_expr(text);
    CHECK(back == e);
    CHECK(back.to_string() == text);
  }
}

TEST_CASE("substitute commutes with arithmetic") {
  std::mt19937_64 rng(4);
  const std::vector<std::string> vars{"x", "y"};
  for (int trial = 0; trial < 100; ++trial) {
    RatExpr a = random_ratexpr(rng, vars), b = random_ratexpr(rng, vars);
    Bindings bind{{"x", RatExpr(random_scalar(rng)) + RatExpr::var("y")}};
    try {
      RatExpr lhs = (a * b).substitute(bind);
      RatExpr rhs = a.substitute(bind) * b.substitute(bind);
      CHECK(lhs == rhs);
      CHECK((a + b).substitute(bind) == a.substitute(bind) + b.substitute(bind));
    } catch (const Error &e) {
      CHECK(e.code() == ErrorCode::DenominatorVanishes);
    }
  }
}

TEST_CASE("reduce_mod_p is a ring homomorphism") {
  std::mt19937_64 rng(5);
  for (std::uint32_t p : {3u, 5u, 7u, 11u}) {
    PrimeField f(p);
    for (int trial = 0; trial < 100; ++trial) {
      RatExpr a(random_scalar(rng, false)), b(random_scalar(rng, false));
      std::uint32_t ra, rb;
      try {
        ra = reduce_mod_p(a, p);
        rb = reduce_mod_p(b, p);
      } catch (const Error &e) {
        CHECK(e.code() == ErrorCode::NonInvertibleDenominator);
        continue;
      }
      CHECK(reduce_mod_p(a + b, p) == f.add(ra, rb));
      CHECK(reduce_mod_p(a * b, p) == f.mul(ra, rb));
      CHECK(reduce_mod_p(-a, p) == f.neg(ra));
    }
  }
}

TEST_CASE("polynomial degree and variables") {
  Poly p = parse_expr("x^2*y + 3*y - 1").num();
  CHECK(p.total_degree() == 3);
  CHECK(p.degree_in({"y"}) == 1);
  CHECK(p.variables() == std::set<std::string>{"x", "y"});
  CHECK(Poly().total_degree() == 0);
  CHECK(Poly(5).is_constant());
}
