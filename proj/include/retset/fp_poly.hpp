#pragma once

// Arithmetic in F_p, F_p[t] and F_p(t).
//
// FpPoly is an immutable dense polynomial.  For p = 2 the coefficients are
// bit-packed into 64-bit words; for odd p each coefficient takes a 32-bit
// slot.  Odd primes must stay below 2^16 so that products accumulate in
// 64 bits without intermediate reduction.

#include "retset/numeric.hpp"

#include <compare>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace retset {

// Largest polynomial degree any exact computation may produce.
inline constexpr long kDegreeCap = 1L << 25;

class DegreeCapExceeded : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public Error {
 public:
  using Error::Error;
};

// An element of F_p.
struct FpElement {
  std::uint32_t value = 0;
  std::uint32_t p = 2;

  friend bool operator==(const FpElement&, const FpElement&) = default;
};

// Scalar arithmetic mod a small prime.
class PrimeField {
 public:
  explicit PrimeField(std::uint32_t p);

  std::uint32_t p() const { return p_; }
  std::uint32_t reduce(const BigInt& x) const;
  std::uint32_t reduce(std::int64_t x) const;
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return (a + b) % p_; }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return (a + p_ - b) % p_; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    return static_cast<std::uint32_t>((static_cast<std::uint64_t>(a) * b) % p_);
  }
  std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : p_ - a; }
  std::uint32_t inv(std::uint32_t a) const;
  std::uint32_t pow(std::uint32_t a, const BigInt& e) const;

  // Smallest generator of F_p^*.
  std::uint32_t primitive_root() const;
  // Discrete log of a != 0 with respect to `generator`, by exhaustive search.
  std::uint32_t dlog(std::uint32_t a, std::uint32_t generator) const;

 private:
  std::uint32_t p_;
};

class FpPoly {
 public:
  FpPoly() : FpPoly(2) {}
  explicit FpPoly(std::uint32_t p);
  // Coefficients indexed by degree; each is reduced mod p.
  FpPoly(std::uint32_t p, const std::vector<std::uint32_t>& coeffs);

  static FpPoly constant(std::uint32_t p, std::uint32_t c);
  static FpPoly monomial(std::uint32_t p, std::uint32_t c, long degree);
  static FpPoly variable(std::uint32_t p) { return monomial(p, 1, 1); }

  std::uint32_t p() const { return p_; }
  long degree() const { return static_cast<long>(len_) - 1; }
  bool is_zero() const { return len_ == 0; }
  bool is_one() const { return len_ == 1 && (*this)[0] == 1; }
  bool is_constant() const { return len_ <= 1; }
  std::uint32_t operator[](std::size_t i) const;
  std::uint32_t lead() const { return is_zero() ? 0 : (*this)[len_ - 1]; }
  std::size_t nonzero_terms() const;
  std::vector<std::uint32_t> coefficients() const;

  friend bool operator==(const FpPoly& a, const FpPoly& b);
  // Canonical order: degree first, then coefficient sequence from t^0 upward.
  friend std::strong_ordering operator<=>(const FpPoly& a, const FpPoly& b);

  friend FpPoly operator+(const FpPoly& a, const FpPoly& b);
  friend FpPoly operator-(const FpPoly& a, const FpPoly& b);
  friend FpPoly operator-(const FpPoly& a);
  friend FpPoly operator*(const FpPoly& a, const FpPoly& b);
  friend FpPoly scale(const FpPoly& a, std::uint32_t c);
  friend FpPoly shift_up(const FpPoly& a, std::size_t k);
  friend FpPoly stretch(const FpPoly& a, std::size_t q);
  friend std::pair<FpPoly, FpPoly> divmod(const FpPoly& a, const FpPoly& b);

 private:
  void trim();
  void check_same_field(const FpPoly& other) const;

  std::uint32_t p_;
  std::size_t len_ = 0;
  std::vector<std::uint64_t> bits_;    // p == 2
  std::vector<std::uint32_t> coeffs_;  // p > 2
};

FpPoly operator/(const FpPoly& a, const FpPoly& b);
FpPoly operator%(const FpPoly& a, const FpPoly& b);

FpPoly monic(const FpPoly& a);
FpPoly derivative(const FpPoly& a);
FpPoly gcd(FpPoly a, FpPoly b);
// Inverse of a modulo m, if gcd(a, m) = 1.
std::optional<FpPoly> inverse_mod(const FpPoly& a, const FpPoly& m);
std::uint32_t evaluate(const FpPoly& a, std::uint32_t x);

// a^e for e >= 0.  Uses the base-p digits of e and the Frobenius identity
// f(t)^(p^i) = f(t^(p^i)), so the cost is dominated by sparse-times-dense
// products.  Throws DegreeCapExceeded beyond kDegreeCap.
FpPoly pow(const FpPoly& a, const BigInt& e);

// base^e mod m by square-and-multiply; e >= 0, deg m >= 1.
FpPoly powmod(const FpPoly& base, const BigInt& e, const FpPoly& m);

bool is_irreducible(const FpPoly& f);
// Number of monic irreducible polynomials of degree d over F_p.
BigInt count_irreducible(std::uint32_t p, unsigned d);
FpPoly random_monic(std::uint32_t p, unsigned degree, std::mt19937_64& rng);
FpPoly random_irreducible(std::uint32_t p, unsigned degree, std::mt19937_64& rng);

// "2*t^3 + t + 1"; the zero polynomial prints as "0".
std::string format(const FpPoly& a);

// Element of F_p(t) in lowest terms with a monic denominator.
class FpRational {
 public:
  FpRational() : FpRational(FpPoly(2)) {}
  explicit FpRational(FpPoly num);
  FpRational(FpPoly num, FpPoly den);  // throws DivisionByZero on den == 0

  static FpRational constant(std::uint32_t p, std::uint32_t c) {
    return FpRational(FpPoly::constant(p, c));
  }

  std::uint32_t p() const { return num_.p(); }
  const FpPoly& num() const { return num_; }
  const FpPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_polynomial() const { return den_.is_one(); }

  FpRational inverse() const;

  friend bool operator==(const FpRational& a, const FpRational& b) = default;
  friend FpRational operator+(const FpRational& a, const FpRational& b);
  friend FpRational operator-(const FpRational& a, const FpRational& b);
  friend FpRational operator-(const FpRational& a);
  friend FpRational operator*(const FpRational& a, const FpRational& b);
  friend FpRational operator/(const FpRational& a, const FpRational& b);

 private:
  FpPoly num_;
  FpPoly den_;
};

FpRational pow(const FpRational& a, const BigInt& e);  // negative e inverts
std::string format(const FpRational& a);

struct Factorization {
  std::uint32_t unit = 1;
  std::vector<std::pair<FpPoly, unsigned long>> factors;  // canonical order
};

// Complete factorisation into monic irreducibles (squarefree,
// distinct-degree, then Cantor-Zassenhaus equal-degree splitting driven by
// `seed`).  Throws InputError on the zero polynomial.
Factorization factor(const FpPoly& f, std::uint64_t seed = 0);
FpPoly expand(const Factorization& fac, std::uint32_t p);

}  // namespace retset
