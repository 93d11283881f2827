#ifndef BCOV_EXPR_HPP
#define BCOV_EXPR_HPP

#include <string>

#include "bcov/poly.hpp"

namespace bcov {

// Parses a closed-form rational expression in one variable into a reduced
// RationalFunction. Grammar (whitespace ignored):
//
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := atom ('^' integer)?
//   atom   := integer | <var> | '(' expr ')'
//
// Integers are arbitrary precision; '^' takes an integer exponent, which
// may be negative on a nonzero atom.
RationalFunction parse_rational_expr(const std::string& text, char var = 'x');

}  // namespace bcov

#endif
