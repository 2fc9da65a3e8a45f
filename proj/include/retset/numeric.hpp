#pragma once

// Arbitrary-precision scalars and the dense Eigen types built on them.
//
// Exponent matrices, lattice bases and recurrence state all live in
// Matrix<BigInt> / Matrix<Rational>.  GMP supplies the arithmetic; the
// NumTraits specialisations below are what Eigen needs to treat the gmpxx
// classes as ordinary scalars.

#include <gmpxx.h>

#include <Eigen/Core>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace Eigen {

template <>
struct NumTraits<mpz_class> : GenericNumTraits<mpz_class> {
  typedef mpz_class Real;
  typedef mpz_class NonInteger;
  typedef mpz_class Nested;
  typedef mpz_class Literal;
  enum {
    IsComplex = 0,
    IsInteger = 1,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 150,
    MulCost = 100
  };
};

template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
  typedef mpq_class Real;
  typedef mpq_class NonInteger;
  typedef mpq_class Nested;
  typedef mpq_class Literal;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 300,
    MulCost = 300
  };
};

}  // namespace Eigen

namespace retset {

using BigInt = mpz_class;
using Rational = mpq_class;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using IntMatrix = Matrix<BigInt>;
using IntVector = Vector<BigInt>;
using RatMatrix = Matrix<Rational>;
using RatVector = Vector<Rational>;

// Base class for every error the library reports.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InputError : public Error {
 public:
  using Error::Error;
};

BigInt ipow(const BigInt& base, unsigned long exponent);
Rational rpow(const Rational& base, long exponent);

// Residue in [0, m) for m > 0.
BigInt floor_mod(const BigInt& x, const BigInt& m);
BigInt floor_div(const BigInt& x, const BigInt& m);
BigInt ceil_div(const BigInt& x, const BigInt& m);

// p-adic valuation; x must be nonzero.
long valuation(const BigInt& x, unsigned long p);
long valuation(const Rational& x, unsigned long p);

// Removes every factor p from |x| and returns the cofactor (keeps the sign).
BigInt strip_prime(const BigInt& x, unsigned long p);

bool is_integer(const Rational& x);
bool is_prime(unsigned long n);
std::vector<unsigned long> prime_factors(unsigned long n);

// Multiplicative order of a modulo m (gcd(a, m) = 1, m >= 1).
BigInt multiplicative_order(const BigInt& a, const BigInt& m);

// Exact integer d-th root of x >= 0 when it exists.
std::optional<BigInt> exact_root(const BigInt& x, unsigned long d);
std::optional<Rational> exact_root(const Rational& x, unsigned long d);

// If x = p^e for some e in Z, returns e.  x must be positive.
std::optional<long> exact_log(const Rational& x, unsigned long p);

// Accepts "7", "-3", "1/3", "-2/6" (normalised).
Rational parse_rational(std::string_view text);
BigInt parse_bigint(std::string_view text);
std::string to_string(const BigInt& x);
std::string to_string(const Rational& x);

// Fits in a signed 64-bit integer.
bool fits_int64(const BigInt& x);
std::int64_t to_int64(const BigInt& x);

// Approximate log2(|x|) for x != 0, valid far beyond the double range.
double log2_abs(const BigInt& x);

template <typename Scalar>
Matrix<Scalar> matrix_power(Matrix<Scalar> base, BigInt exponent) {
  Matrix<Scalar> result = Matrix<Scalar>::Identity(base.rows(), base.cols());
  while (exponent > 0) {
    if (mpz_odd_p(exponent.get_mpz_t())) result = (result * base).eval();
    exponent >>= 1;
    if (exponent > 0) base = (base * base).eval();
  }
  return result;
}

}  // namespace retset
