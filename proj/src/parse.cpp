#include "retset/parse.hpp"

#include <cctype>

namespace retset {

ParseError::ParseError(const std::string& message, std::size_t position)
    : InputError(message + " at position " + std::to_string(position)), position_(position) {}

namespace {

class Parser {
 public:
  Parser(std::string_view text, std::uint32_t p, std::size_t nvars)
      : text_(text), p_(p), nvars_(nvars), field_(p) {}

  LaurentPoly run() {
    LaurentPoly r = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, pos_); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  BigInt integer() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer");
    return BigInt(std::string(text_.substr(start, pos_ - start)));
  }

  LaurentPoly constant(std::uint32_t c) const {
    return LaurentPoly::constant(nvars_, FpRational::constant(p_, c));
  }

  LaurentPoly expr() {
    LaurentPoly acc = term();
    while (true) {
      if (accept('+')) {
        acc = acc + term();
      } else if (accept('-')) {
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  LaurentPoly term() {
    LaurentPoly acc = unary();
    while (true) {
      if (accept('*')) {
        acc = acc * unary();
      } else if (accept('/')) {
        const std::size_t at = pos_;
        LaurentPoly d = unary();
        if (d.is_zero()) throw ParseError("division by zero", at);
        if (!d.is_single_term()) throw ParseError("division by a multi-term expression", at);
        acc = acc * d.inverse();
      } else {
        return acc;
      }
    }
  }

  LaurentPoly unary() {
    if (accept('-')) return -unary();
    return power();
  }

  LaurentPoly power() {
    LaurentPoly base = primary();
    if (!accept('^')) return base;
    const bool negative = accept('-');
    const std::size_t at = pos_;
    BigInt e = integer();
    if (!e.fits_slong_p()) throw ParseError("exponent too large", at);
    const long n = negative ? -e.get_si() : e.get_si();
    if (n < 0) {
      if (base.is_zero()) throw ParseError("zero raised to a negative power", at);
      if (!base.is_single_term()) throw ParseError("negative exponent on a multi-term base", at);
    }
    try {
      return pow(base, n);
    } catch (const DegreeCapExceeded& e) {
      throw ParseError(e.what(), at);
    }
  }

  LaurentPoly primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      LaurentPoly inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return constant(field_.reduce(integer()));
    if (c == 't') {
      ++pos_;
      return LaurentPoly::constant(nvars_, FpRational(FpPoly::variable(p_)));
    }
    if (c == 'x') {
      const std::size_t at = pos_;
      ++pos_;
      if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
        fail("expected a variable index after 'x'");
      BigInt index = integer();
      if (index < 1 || index > nvars_)
        throw ParseError("variable x" + index.get_str() + " out of range (N = " +
                             std::to_string(nvars_) + ")",
                         at);
      return LaurentPoly::variable(p_, nvars_, index.get_ui() - 1);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  std::uint32_t p_;
  std::size_t nvars_;
  PrimeField field_;
  std::size_t pos_ = 0;
};

}  // namespace

LaurentPoly parse_laurent(std::string_view text, std::uint32_t p, std::size_t nvars) {
  return Parser(text, p, nvars).run();
}

FpRational parse_function(std::string_view text, std::uint32_t p) {
  return parse_laurent(text, p, 0).constant_value();
}

}  // namespace retset
