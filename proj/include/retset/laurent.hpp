#pragma once

// Laurent polynomials in x1..xN with coefficients in F_p(t).

#include "retset/fp_poly.hpp"

#include <map>
#include <string>
#include <vector>

namespace retset {

using Exponent = std::vector<long>;
using TorusPoint = std::vector<FpRational>;

class LaurentPoly {
 public:
  LaurentPoly(std::uint32_t p, std::size_t nvars) : p_(p), nvars_(nvars) {}

  static LaurentPoly constant(std::size_t nvars, const FpRational& c);
  static LaurentPoly variable(std::uint32_t p, std::size_t nvars, std::size_t index);
  static LaurentPoly monomial(std::size_t nvars, const FpRational& c, Exponent e);

  std::uint32_t p() const { return p_; }
  std::size_t nvars() const { return nvars_; }
  const std::map<Exponent, FpRational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_single_term() const { return terms_.size() == 1; }
  // Zero or a lone term with the zero exponent.
  bool is_constant() const;
  FpRational constant_value() const;  // requires is_constant()

  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;
  friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator-(const LaurentPoly& a);
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);

  // Single-term inverse; throws DivisionByZero otherwise.
  LaurentPoly inverse() const;

  FpRational evaluate(const TorusPoint& x) const;

 private:
  void add_term(const Exponent& e, const FpRational& c);
  void check_compatible(const LaurentPoly& other) const;

  std::uint32_t p_;
  std::size_t nvars_;
  std::map<Exponent, FpRational> terms_;
};

// Negative exponents require a single-term base.
LaurentPoly pow(const LaurentPoly& a, long e);

// Terms by ascending total degree, then x1 before x2; e.g.
// "1 + t*x1 + (t + 1)*x2".
std::string format(const LaurentPoly& f);

}  // namespace retset
