#pragma once

// Hand-rolled random generators for property tests. Seeds are fixed so
// failures reproduce.

#include "leibniz/algebra.hpp"
#include "leibniz/rat_expr.hpp"

#include <random>
#include <string>
#include <vector>

namespace leibniz::testing {

inline Scalar random_scalar(std::mt19937_64 &rng, bool complex = true) {
  std::uniform_int_distribution<long> num(-6, 6), den(1, 4), coin(0, 3);
  mpq_class re(num(rng), den(rng));
  mpq_class im = 0;
  if (complex && coin(rng) == 0)
    im = mpq_class(num(rng), den(rng));
  return Scalar(re, im);
}

inline Poly random_poly(std::mt19937_64 &rng, const std::vector<std::string> &vars,
                        int max_terms = 4, unsigned max_exp = 2, bool complex = true) {
  std::uniform_int_distribution<int> terms(0, max_terms);
  std::uniform_int_distribution<unsigned> exp(0, max_exp);
  Poly p;
  for (int t = terms(rng); t > 0; --t) {
    Monomial m;
    for (const auto &v : vars)
      m = m * Monomial::var(v, exp(rng));
    p += Poly::term(random_scalar(rng, complex), m);
  }
  return p;
}

inline RatExpr random_ratexpr(std::mt19937_64 &rng, const std::vector<std::string> &vars) {
  Poly den = random_poly(rng, vars, 2, 1, false);
  if (den.is_zero())
    den = Poly(1);
  return RatExpr(random_poly(rng, vars), den);
}

inline Vector random_vector(std::mt19937_64 &rng, std::size_t n) {
  Vector v(n);
  for (auto &x : v)
    x = RatExpr(random_scalar(rng));
  return v;
}

} // namespace leibniz::testing
