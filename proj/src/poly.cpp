#include "leibniz/poly.hpp"

#include <algorithm>

namespace leibniz {

Monomial Monomial::var(const std::string &name, unsigned exponent) {
  Monomial m;
  if (exponent > 0)
    m.factors_.emplace_back(name, exponent);
  return m;
}

unsigned Monomial::total_degree() const {
  unsigned d = 0;
  for (const auto &f : factors_)
    d += f.second;
  return d;
}

unsigned Monomial::degree_in(const std::set<std::string> &names) const {
  unsigned d = 0;
  for (const auto &f : factors_)
    if (names.count(f.first))
      d += f.second;
  return d;
}

Monomial operator*(const Monomial &a, const Monomial &b) {
  Monomial out;
  auto &f = out.factors_;
  f.reserve(a.factors_.size() + b.factors_.size());
  auto ia = a.factors_.begin(), ib = b.factors_.begin();
  while (ia != a.factors_.end() && ib != b.factors_.end()) {
    if (ia->first < ib->first)
      f.push_back(*ia++);
    else if (ib->first < ia->first)
      f.push_back(*ib++);
    else {
      f.emplace_back(ia->first, ia->second + ib->second);
      ++ia;
      ++ib;
    }
  }
  f.insert(f.end(), ia, a.factors_.end());
  f.insert(f.end(), ib, b.factors_.end());
  return out;
}

std::string Monomial::to_string() const {
  std::string out;
  for (const auto &[name, e] : factors_) {
    if (!out.empty())
      out += "*";
    out += name;
    if (e != 1)
      out += "^" + std::to_string(e);
  }
  return out;
}

Poly::Poly(const Scalar &c) {
  if (!c.is_zero())
    terms_.emplace(Monomial(), c);
}

Poly Poly::var(const std::string &name) {
  return term(Scalar(1), Monomial::var(name));
}

Poly Poly::term(const Scalar &c, const Monomial &m) {
  Poly p;
  if (!c.is_zero())
    p.terms_.emplace(m, c);
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() ||
         (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Scalar Poly::constant_term() const {
  auto it = terms_.find(Monomial());
  return it == terms_.end() ? Scalar() : it->second;
}

unsigned Poly::total_degree() const {
  unsigned d = 0;
  for (const auto &t : terms_)
    d = std::max(d, t.first.total_degree());
  return d;
}

unsigned Poly::degree_in(const std::set<std::string> &names) const {
  unsigned d = 0;
  for (const auto &t : terms_)
    d = std::max(d, t.first.degree_in(names));
  return d;
}

std::set<std::string> Poly::variables() const {
  std::set<std::string> out;
  for (const auto &t : terms_)
    for (const auto &f : t.first.factors())
      out.insert(f.first);
  return out;
}

bool Poly::is_real() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const auto &t) { return t.second.is_real(); });
}

void Poly::add_term(const Monomial &m, const Scalar &c) {
  if (c.is_zero())
    return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero())
      terms_.erase(it);
  }
}

Poly Poly::operator-() const {
  Poly out(*this);
  for (auto &t : out.terms_)
    t.second = -t.second;
  return out;
}

Poly &Poly::operator+=(const Poly &o) {
  for (const auto &[m, c] : o.terms_)
    add_term(m, c);
  return *this;
}

Poly &Poly::operator-=(const Poly &o) {
  for (const auto &[m, c] : o.terms_)
    add_term(m, -c);
  return *this;
}

Poly operator*(const Poly &a, const Poly &b) {
  Poly out;
  for (const auto &[ma, ca] : a.terms_)
    for (const auto &[mb, cb] : b.terms_)
      out.add_term(ma * mb, ca * cb);
  return out;
}

Poly &Poly::operator*=(const Poly &o) { return *this = *this * o; }

Poly &Poly::operator*=(const Scalar &c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto &t : terms_)
    t.second *= c;
  return *this;
}

Poly Poly::pow(unsigned e) const {
  Poly result(1), base(*this);
  while (e > 0) {
    if (e & 1)
      result *= base;
    e >>= 1;
    if (e)
      base *= base;
  }
  return result;
}

Poly Poly::substitute(const std::map<std::string, Poly> &bindings) const {
  Poly out;
  for (const auto &[m, c] : terms_) {
    Poly t(c);
    Monomial rest;
    for (const auto &[name, e] : m.factors()) {
      auto it = bindings.find(name);
      if (it == bindings.end())
        rest = rest * Monomial::var(name, e);
      else
        t *= it->second.pow(e);
    }
    if (!rest.is_one())
      t *= Poly::term(Scalar(1), rest);
    out += t;
  }
  return out;
}

std::string Poly::to_string() const {
  if (terms_.empty())
    return "0";
  std::string out;
  for (const auto &[m, c] : terms_) {
    bool negative = c.is_real() && sgn(c.re()) < 0;
    Scalar mag = negative ? -c : c;
    std::string body;
    if (m.is_one())
      body = mag.is_single_part() && mag.is_real() ? mag.to_string()
                                                   : "(" + mag.to_string() + ")";
    else if (mag.is_one())
      body = m.to_string();
    else if (mag.is_real())
      body = mag.to_string() + "*" + m.to_string();
    else
      body = (mag.is_single_part() && sgn(mag.im()) > 0
                  ? mag.to_string()
                  : "(" + mag.to_string() + ")") +
             "*" + m.to_string();
    if (out.empty())
      out = negative ? "-" + body : body;
    else
      out += (negative ? "-" : "+") + body;
  }
  return out;
}

} // namespace leibniz
