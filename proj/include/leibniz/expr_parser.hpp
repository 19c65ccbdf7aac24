#pragma once

#include "leibniz/rat_expr.hpp"

#include <string_view>

namespace leibniz {

// Grammar (whitespace between tokens is ignored):
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' '-'? integer)?
//   primary := integer | identifier | 'i' | '(' expr ')'
//
// identifier is [A-Za-z_][A-Za-z0-9_]*; the bare identifier "i" is the
// imaginary unit. Rational literals are written as integer divisions.
//
// Throws Error(Parse) with the byte offset on malformed input, and on
// division by an expression that is identically zero.
RatExpr parse_expr(std::string_view text);

} // namespace leibniz
