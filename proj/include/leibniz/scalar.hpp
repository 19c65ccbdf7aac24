#pragma once

#include <gmpxx.h>

#include <string>

namespace leibniz {

// Exact Gaussian rational re + im*i. mpq_class keeps both parts in lowest
// terms with positive denominators.
class Scalar {
public:
  Scalar() = default;
  Scalar(long v) : re_(v) {}
  Scalar(mpq_class re, mpq_class im = 0);

  static Scalar imaginary_unit() { return Scalar(0, 1); }
  // Accepts "a" or "a/b" for the real part.
  static Scalar from_rational_string(const std::string &text);

  const mpq_class &re() const { return re_; }
  const mpq_class &im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_one() const { return re_ == 1 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  Scalar operator-() const { return Scalar(-re_, -im_); }
  Scalar &operator+=(const Scalar &o);
  Scalar &operator-=(const Scalar &o);
  Scalar &operator*=(const Scalar &o);
  // Throws DenominatorVanishes on division by zero.
  Scalar &operator/=(const Scalar &o);

  friend Scalar operator+(Scalar a, const Scalar &b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar &b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar &b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar &b) { return a /= b; }
  friend bool operator==(const Scalar &a, const Scalar &b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  // Total order (real part, then imaginary part); only used for canonical
  // containers, not a field order.
  friend bool operator<(const Scalar &a, const Scalar &b) {
    if (a.re_ != b.re_)
      return a.re_ < b.re_;
    return a.im_ < b.im_;
  }

  // "3/4", "-2*i", "(1/2+3*i)". Parses back through parse_expr.
  std::string to_string() const;
  // Same, but never wrapped in parentheses when the value is a single part.
  bool is_single_part() const { return sgn(re_) == 0 || sgn(im_) == 0; }

private:
  mpq_class re_{0};
  mpq_class im_{0};
};

} // namespace leibniz
