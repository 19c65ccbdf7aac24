#include "leibniz/expr_parser.hpp"

#include "leibniz/error.hpp"

#include <cctype>

namespace leibniz {

namespace {

class Parser {
public:
  explicit Parser(std::string_view text) : text_(text) {}

  RatExpr parse() {
    RatExpr e = expr();
    skip_space();
    if (pos_ != text_.size())
      fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

private:
  [[noreturn]] void fail(const std::string &msg) const {
    throw Error(ErrorCode::Parse, "syntax error at byte " + std::to_string(pos_) +
                                      ": " + msg);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  RatExpr expr() {
    RatExpr e = term();
    for (;;) {
      if (accept('+'))
        e += term();
      else if (accept('-'))
        e -= term();
      else
        return e;
    }
  }

  RatExpr term() {
    RatExpr e = unary();
    for (;;) {
      if (accept('*')) {
        e *= unary();
      } else if (accept('/')) {
        std::size_t at = pos_;
        RatExpr d = unary();
        if (d.is_zero()) {
          pos_ = at;
          fail("division by zero");
        }
        e /= d;
      } else {
        return e;
      }
    }
  }

  RatExpr unary() {
    if (accept('-'))
      return -unary();
    return power();
  }

  RatExpr power() {
    RatExpr base = primary();
    if (!accept('^'))
      return base;
    bool negative = accept('-');
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    if (start == pos_)
      fail("expected integer exponent");
    if (pos_ - start > 6)
      fail("exponent too large");
    int e = std::stoi(std::string(text_.substr(start, pos_ - start)));
    if (negative && base.is_zero())
      fail("zero raised to a negative power");
    return base.pow(negative ? -e : e);
  }

  RatExpr primary() {
    skip_space();
    if (pos_ >= text_.size())
      fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      RatExpr e = expr();
      if (!accept(')'))
        fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
        ++pos_;
      mpq_class v(mpz_class(std::string(text_.substr(start, pos_ - start))));
      return RatExpr(Scalar(v));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      if (name == "i")
        return RatExpr(Scalar::imaginary_unit());
      return RatExpr::var(name);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

} // namespace

RatExpr parse_expr(std::string_view text) { return Parser(text).parse(); }

} // namespace leibniz
