#pragma once

// Expression parser for coordinates and curve equations.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' '-'? integer)?
//   primary := integer | 't' | 'x' integer | '(' expr ')'
//
// Integer literals are reduced mod p.  Division and negative exponents are
// only allowed on a single nonzero term.

#include "retset/laurent.hpp"

#include <string_view>

namespace retset {

class ParseError : public InputError {
 public:
  ParseError(const std::string& message, std::size_t position);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

LaurentPoly parse_laurent(std::string_view text, std::uint32_t p, std::size_t nvars);

// An element of F_p(t); any x variable is an error.
FpRational parse_function(std::string_view text, std::uint32_t p);

}  // namespace retset
