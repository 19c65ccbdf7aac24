#include "leibniz/mod_p.hpp"

#include "leibniz/error.hpp"

namespace leibniz {

bool is_prime(std::uint32_t n) {
  if (n < 2)
    return false;
  for (std::uint32_t d = 2; std::uint64_t(d) * d <= n; ++d)
    if (n % d == 0)
      return false;
  return true;
}

PrimeField::PrimeField(std::uint32_t prime) : p(prime) {
  if (!is_prime(prime))
    throw Error(ErrorCode::Usage, std::to_string(prime) + " is not prime");
}

std::uint32_t PrimeField::pow(std::uint32_t a, unsigned e) const {
  std::uint32_t r = 1 % p;
  while (e) {
    if (e & 1)
      r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

std::uint32_t PrimeField::inv(std::uint32_t a) const { return pow(a, p - 2); }

std::uint32_t PrimeField::reduce(const mpq_class &q) const {
  mpz_class num = q.get_num() % p;
  if (num < 0)
    num += p;
  mpz_class den = q.get_den() % p;
  if (den == 0)
    throw Error(ErrorCode::NonInvertibleDenominator,
                "denominator of " + q.get_str() + " is not invertible mod " +
                    std::to_string(p));
  return mul(static_cast<std::uint32_t>(num.get_ui()),
             inv(static_cast<std::uint32_t>(den.get_ui())));
}

std::uint32_t PrimeField::reduce(const Scalar &s) const {
  if (!s.is_real())
    throw Error(ErrorCode::NonRealValue,
                "value " + s.to_string() + " has a nonzero imaginary part");
  return reduce(s.re());
}

std::uint32_t reduce_mod_p(const RatExpr &e, std::uint32_t p) {
  if (!e.is_constant())
    throw Error(ErrorCode::UnboundParameter,
                "expression " + e.to_string() + " still contains parameters");
  PrimeField f(p);
  std::uint32_t num = f.reduce(e.num().constant_term());
  std::uint32_t den = f.reduce(e.den().constant_term());
  if (den == 0)
    throw Error(ErrorCode::NonInvertibleDenominator,
                "denominator " + e.den().to_string() + " vanishes mod " + std::to_string(p));
  return f.mul(num, f.inv(den));
}

} // namespace leibniz
