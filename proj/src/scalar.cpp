#include "leibniz/scalar.hpp"

#include "leibniz/error.hpp"

namespace leibniz {

const char *error_code_name(ErrorCode code) {
  switch (code) {
  case ErrorCode::Parse:
    return "ParseError";
  case ErrorCode::DenominatorVanishes:
    return "DenominatorVanishes";
  case ErrorCode::NonInvertibleDenominator:
    return "NonInvertibleDenominator";
  case ErrorCode::NonRealValue:
    return "NonRealValue";
  case ErrorCode::DimensionMismatch:
    return "DimensionMismatch";
  case ErrorCode::Schema:
    return "SchemaViolation";
  case ErrorCode::UnknownAlgebra:
    return "UnknownAlgebra";
  case ErrorCode::UnboundParameter:
    return "UnboundParameter";
  case ErrorCode::RefusedSize:
    return "RefusedSize";
  case ErrorCode::Io:
    return "IoError";
  case ErrorCode::Usage:
    return "UsageError";
  }
  return "Unknown";
}

Scalar::Scalar(mpq_class re, mpq_class im)
    : re_(std::move(re)), im_(std::move(im)) {
  re_.canonicalize();
  im_.canonicalize();
}

Scalar Scalar::from_rational_string(const std::string &text) {
  mpq_class q;
  if (q.set_str(text, 10) != 0 || q.get_den() == 0)
    throw Error(ErrorCode::Parse, "not a rational literal: " + text);
  q.canonicalize();
  return Scalar(q);
}

Scalar &Scalar::operator+=(const Scalar &o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

Scalar &Scalar::operator-=(const Scalar &o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

Scalar &Scalar::operator*=(const Scalar &o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  mpq_class re = re_ * o.re_ - im_ * o.im_;
  mpq_class im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

Scalar &Scalar::operator/=(const Scalar &o) {
  if (o.is_zero())
    throw Error(ErrorCode::DenominatorVanishes, "division by zero scalar");
  if (sgn(o.im_) == 0) {
    re_ /= o.re_;
    im_ /= o.re_;
    return *this;
  }
  // (a+bi)/(c+di) = (a+bi)(c-di)/(c^2+d^2)
  mpq_class norm = o.re_ * o.re_ + o.im_ * o.im_;
  mpq_class re = (re_ * o.re_ + im_ * o.im_) / norm;
  mpq_class im = (im_ * o.re_ - re_ * o.im_) / norm;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

std::string Scalar::to_string() const {
  if (sgn(im_) == 0)
    return re_.get_str();
  std::string im_part;
  if (im_ == 1)
    im_part = "i";
  else if (im_ == -1)
    im_part = "-i";
  else
    im_part = im_.get_str() + "*i";
  if (sgn(re_) == 0)
    return im_part;
  std::string out = "(" + re_.get_str();
  if (sgn(im_) > 0)
    out += "+";
  return out + im_part + ")";
}

} // namespace leibniz
