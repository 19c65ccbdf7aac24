#pragma once

#include "leibniz/rat_expr.hpp"

#include <cstdint>

namespace leibniz {

// Arithmetic in F_p for small primes.
struct PrimeField {
  std::uint32_t p;

  explicit PrimeField(std::uint32_t prime);

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return (a + b) % p; }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return (a + p - b) % p; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    return static_cast<std::uint32_t>(std::uint64_t(a) * b % p);
  }
  std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : p - a; }
  // Requires a != 0.
  std::uint32_t inv(std::uint32_t a) const;
  std::uint32_t pow(std::uint32_t a, unsigned e) const;

  // Image of an exact scalar. Throws NonRealValue for nonzero imaginary part
  // and NonInvertibleDenominator when p divides the denominator.
  std::uint32_t reduce(const Scalar &s) const;
  std::uint32_t reduce(const mpq_class &q) const;
};

bool is_prime(std::uint32_t n);

// Image of a parameter-free expression in F_p. Throws UnboundParameter if a
// parameter remains.
std::uint32_t reduce_mod_p(const RatExpr &e, std::uint32_t p);

} // namespace leibniz
