#pragma once

#include "leibniz/scalar.hpp"

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace leibniz {

// Product of named parameters with positive exponents, sorted by name.
class Monomial {
public:
  using Factor = std::pair<std::string, unsigned>;

  Monomial() = default;
  static Monomial var(const std::string &name, unsigned exponent = 1);

  const std::vector<Factor> &factors() const { return factors_; }
  bool is_one() const { return factors_.empty(); }
  unsigned total_degree() const;
  unsigned degree_in(const std::set<std::string> &names) const;

  friend Monomial operator*(const Monomial &a, const Monomial &b);
  friend bool operator==(const Monomial &, const Monomial &) = default;
  friend bool operator<(const Monomial &a, const Monomial &b) {
    return a.factors_ < b.factors_;
  }

  std::string to_string() const;

private:
  std::vector<Factor> factors_;
};

// Sparse multivariate polynomial over Scalar. Zero coefficients are never
// stored and terms are kept in Monomial order, so equal polynomials compare
// equal structurally.
class Poly {
public:
  using Terms = std::map<Monomial, Scalar>;

  Poly() = default;
  Poly(const Scalar &c);
  Poly(long c) : Poly(Scalar(c)) {}
  static Poly var(const std::string &name);
  static Poly term(const Scalar &c, const Monomial &m);

  const Terms &terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  // Coefficient of the empty monomial.
  Scalar constant_term() const;
  std::size_t size() const { return terms_.size(); }

  unsigned total_degree() const;
  unsigned degree_in(const std::set<std::string> &names) const;
  std::set<std::string> variables() const;
  bool is_real() const;

  Poly operator-() const;
  Poly &operator+=(const Poly &o);
  Poly &operator-=(const Poly &o);
  Poly &operator*=(const Poly &o);
  Poly &operator*=(const Scalar &c);
  Poly pow(unsigned e) const;

  friend Poly operator+(Poly a, const Poly &b) { return a += b; }
  friend Poly operator-(Poly a, const Poly &b) { return a -= b; }
  friend Poly operator*(const Poly &a, const Poly &b);
  friend Poly operator*(Poly a, const Scalar &c) { return a *= c; }
  friend bool operator==(const Poly &, const Poly &) = default;

  // Polynomial substitution; unbound variables are kept.
  Poly substitute(const std::map<std::string, Poly> &bindings) const;

  // Re-parses to an equal Poly.
  std::string to_string() const;

private:
  void add_term(const Monomial &m, const Scalar &c);

  Terms terms_;
};

} // namespace leibniz
