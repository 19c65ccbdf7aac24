#pragma once

#include "leibniz/poly.hpp"

#include <map>
#include <set>
#include <string>

namespace leibniz {

// Quotient of polynomials, kept unreduced. Equality and zero tests go
// through cross-multiplication, so no polynomial GCD is needed.
class RatExpr {
public:
  RatExpr() : den_(1) {}
  RatExpr(const Poly &num) : num_(num), den_(1) {}
  RatExpr(const Scalar &c) : num_(c), den_(1) {}
  RatExpr(long c) : num_(c), den_(1) {}
  // Throws DenominatorVanishes if den is the zero polynomial.
  RatExpr(Poly num, Poly den);

  static RatExpr var(const std::string &name) { return RatExpr(Poly::var(name)); }

  const Poly &num() const { return num_; }
  const Poly &den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  // Value of a parameter-free expression.
  Scalar constant_value() const;
  std::set<std::string> variables() const;

  RatExpr operator-() const { return RatExpr(-num_, den_, Unchecked{}); }
  RatExpr &operator+=(const RatExpr &o);
  RatExpr &operator-=(const RatExpr &o);
  RatExpr &operator*=(const RatExpr &o);
  RatExpr &operator/=(const RatExpr &o);
  RatExpr pow(int e) const;

  friend RatExpr operator+(RatExpr a, const RatExpr &b) { return a += b; }
  friend RatExpr operator-(RatExpr a, const RatExpr &b) { return a -= b; }
  friend RatExpr operator*(RatExpr a, const RatExpr &b) { return a *= b; }
  friend RatExpr operator/(RatExpr a, const RatExpr &b) { return a /= b; }
  // a/b == c/d iff a*d - c*b is the zero polynomial.
  friend bool operator==(const RatExpr &a, const RatExpr &b);

  // Throws DenominatorVanishes when the substituted denominator is
  // identically zero.
  RatExpr substitute(const std::map<std::string, RatExpr> &bindings) const;

  std::string to_string() const;

private:
  struct Unchecked {};
  RatExpr(Poly num, Poly den, Unchecked)
      : num_(std::move(num)), den_(std::move(den)) {}
  void normalize();

  Poly num_;
  Poly den_;
};

using Bindings = std::map<std::string, RatExpr>;

} // namespace leibniz
