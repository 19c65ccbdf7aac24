#include "leibniz/rat_expr.hpp"

#include "leibniz/error.hpp"

namespace leibniz {

RatExpr::RatExpr(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero())
    throw Error(ErrorCode::DenominatorVanishes,
                "denominator is the zero polynomial");
  normalize();
}

// Constant denominators are folded into the numerator and a zero numerator
// resets the denominator, which keeps most expressions polynomial.
void RatExpr::normalize() {
  if (num_.is_zero()) {
    den_ = Poly(1);
    return;
  }
  if (den_.is_constant()) {
    Scalar d = den_.constant_term();
    if (!d.is_one()) {
      num_ *= Scalar(1) / d;
      den_ = Poly(1);
    }
    return;
  }
  if (num_ == den_) {
    num_ = Poly(1);
    den_ = Poly(1);
  }
}

Scalar RatExpr::constant_value() const {
  if (!is_constant())
    throw Error(ErrorCode::UnboundParameter,
                "expression " + to_string() + " still contains parameters");
  return num_.constant_term() / den_.constant_term();
}

std::set<std::string> RatExpr::variables() const {
  auto v = num_.variables();
  auto d = den_.variables();
  v.insert(d.begin(), d.end());
  return v;
}

RatExpr &RatExpr::operator+=(const RatExpr &o) {
  if (o.num_.is_zero())
    return *this;
  if (num_.is_zero())
    return *this = o;
  if (den_ == o.den_) {
    num_ += o.num_;
  } else {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ = den_ * o.den_;
  }
  normalize();
  return *this;
}

RatExpr &RatExpr::operator-=(const RatExpr &o) { return *this += -o; }

RatExpr &RatExpr::operator*=(const RatExpr &o) {
  if (num_.is_zero())
    return *this;
  if (o.num_.is_zero())
    return *this = RatExpr();
  // Cancel a numerator against an equal denominator before multiplying.
  if (num_ == o.den_) {
    num_ = o.num_;
  } else if (o.num_ == den_) {
    den_ = o.den_;
  } else {
    num_ *= o.num_;
    if (!o.den_.is_constant() || !o.den_.constant_term().is_one())
      den_ *= o.den_;
  }
  normalize();
  return *this;
}

RatExpr &RatExpr::operator/=(const RatExpr &o) {
  if (o.num_.is_zero())
    throw Error(ErrorCode::DenominatorVanishes, "division by zero expression");
  return *this *= RatExpr(o.den_, o.num_, Unchecked{});
}

RatExpr RatExpr::pow(int e) const {
  if (e < 0) {
    if (num_.is_zero())
      throw Error(ErrorCode::DenominatorVanishes, "zero raised to a negative power");
    RatExpr out(den_.pow(-e), num_.pow(-e), Unchecked{});
    out.normalize();
    return out;
  }
  RatExpr out(num_.pow(e), den_.pow(e), Unchecked{});
  out.normalize();
  return out;
}

bool operator==(const RatExpr &a, const RatExpr &b) {
  if (a.den_ == b.den_)
    return a.num_ == b.num_;
  return (a.num_ * b.den_ - b.num_ * a.den_).is_zero();
}

namespace {

RatExpr substitute_poly(const Poly &p, const Bindings &bindings,
                        std::map<std::pair<std::string, unsigned>, RatExpr> &powers) {
  RatExpr out;
  for (const auto &[m, c] : p.terms()) {
    RatExpr t(c);
    Monomial rest;
    for (const auto &[name, e] : m.factors()) {
      auto it = bindings.find(name);
      if (it == bindings.end()) {
        rest = rest * Monomial::var(name, e);
        continue;
      }
      auto key = std::make_pair(name, e);
      auto pw = powers.find(key);
      if (pw == powers.end())
        pw = powers.emplace(key, it->second.pow(static_cast<int>(e))).first;
      t *= pw->second;
    }
    if (!rest.is_one())
      t *= RatExpr(Poly::term(Scalar(1), rest));
    out += t;
  }
  return out;
}

} // namespace

RatExpr RatExpr::substitute(const Bindings &bindings) const {
  std::map<std::pair<std::string, unsigned>, RatExpr> powers;
  RatExpr num = substitute_poly(num_, bindings, powers);
  RatExpr den = substitute_poly(den_, bindings, powers);
  if (den.is_zero())
    throw Error(ErrorCode::DenominatorVanishes,
                "denominator " + den_.to_string() + " vanishes under substitution");
  return num / den;
}

std::string RatExpr::to_string() const {
  if (den_.is_constant())
    return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

} // namespace leibniz
