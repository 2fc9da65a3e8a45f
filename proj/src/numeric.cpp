#include "retset/numeric.hpp"

#include <cmath>

namespace retset {

BigInt ipow(const BigInt& base, unsigned long exponent) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
  return r;
}

Rational rpow(const Rational& base, long exponent) {
  if (exponent < 0) {
    if (base == 0) throw Error("rpow: zero to a negative power");
    Rational inv = 1 / base;
    return rpow(inv, -exponent);
  }
  Rational r(ipow(base.get_num(), static_cast<unsigned long>(exponent)),
             ipow(base.get_den(), static_cast<unsigned long>(exponent)));
  r.canonicalize();
  return r;
}

BigInt floor_mod(const BigInt& x, const BigInt& m) {
  BigInt r;
  mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
  return r;
}

BigInt floor_div(const BigInt& x, const BigInt& m) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
  return q;
}

BigInt ceil_div(const BigInt& x, const BigInt& m) {
  BigInt q;
  mpz_cdiv_q(q.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
  return q;
}

long valuation(const BigInt& x, unsigned long p) {
  if (x == 0) throw Error("valuation of zero");
  BigInt y = abs(x);
  BigInt pp = p;
  long v = static_cast<long>(mpz_remove(y.get_mpz_t(), y.get_mpz_t(), pp.get_mpz_t()));
  return v;
}

long valuation(const Rational& x, unsigned long p) {
  if (x == 0) throw Error("valuation of zero");
  return valuation(x.get_num(), p) - valuation(x.get_den(), p);
}

BigInt strip_prime(const BigInt& x, unsigned long p) {
  if (x == 0) return 0;
  BigInt y;
  BigInt pp = p;
  mpz_remove(y.get_mpz_t(), x.get_mpz_t(), pp.get_mpz_t());
  return y;
}

bool is_integer(const Rational& x) { return x.get_den() == 1; }

bool is_prime(unsigned long n) {
  if (n < 2) return false;
  for (unsigned long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<unsigned long> prime_factors(unsigned long n) {
  std::vector<unsigned long> out;
  for (unsigned long d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

BigInt multiplicative_order(const BigInt& a, const BigInt& m) {
  if (m <= 1) return 1;
  BigInt g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  if (g != 1) throw Error("multiplicative_order: base not invertible");
  BigInt base = floor_mod(a, m);
  BigInt x = base;
  BigInt order = 1;
  while (x != 1) {
    x = (x * base) % m;
    ++order;
  }
  return order;
}

std::optional<BigInt> exact_root(const BigInt& x, unsigned long d) {
  if (x < 0) return std::nullopt;
  BigInt r;
  if (mpz_root(r.get_mpz_t(), x.get_mpz_t(), d) == 0) return std::nullopt;
  return r;
}

std::optional<Rational> exact_root(const Rational& x, unsigned long d) {
  auto n = exact_root(x.get_num(), d);
  auto m = exact_root(x.get_den(), d);
  if (!n || !m) return std::nullopt;
  Rational r(*n, *m);
  r.canonicalize();
  return r;
}

std::optional<long> exact_log(const Rational& x, unsigned long p) {
  if (x <= 0) return std::nullopt;
  long v = valuation(x, p);
  Rational rest = x;
  if (v > 0) rest /= Rational(ipow(p, static_cast<unsigned long>(v)));
  if (v < 0) rest *= Rational(ipow(p, static_cast<unsigned long>(-v)));
  if (rest != 1) return std::nullopt;
  return v;
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && s.front() == ' ') s.erase(s.begin());
  while (!s.empty() && s.back() == ' ') s.pop_back();
  if (s.empty()) throw InputError("empty rational literal");
  if (s.front() == '+') s.erase(s.begin());
  Rational r;
  if (mpq_set_str(r.get_mpq_t(), s.c_str(), 10) != 0)
    throw InputError("malformed rational literal '" + std::string(text) + "'");
  if (r.get_den() == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
  r.canonicalize();
  return r;
}

BigInt parse_bigint(std::string_view text) {
  Rational r = parse_rational(text);
  if (!is_integer(r)) throw InputError("expected an integer, got '" + std::string(text) + "'");
  return r.get_num();
}

std::string to_string(const BigInt& x) { return x.get_str(); }

std::string to_string(const Rational& x) { return x.get_str(); }

bool fits_int64(const BigInt& x) {
  static const BigInt lo("-9223372036854775808");
  static const BigInt hi("9223372036854775807");
  return x >= lo && x <= hi;
}

std::int64_t to_int64(const BigInt& x) {
  if (!fits_int64(x)) throw Error("integer does not fit in 64 bits: " + x.get_str());
  if (x.fits_slong_p()) return x.get_si();
  // long is 64-bit on the supported platforms; this path is unreachable there.
  return static_cast<std::int64_t>(std::stoll(x.get_str()));
}

double log2_abs(const BigInt& x) {
  if (x == 0) throw Error("log2 of zero");
  long e = 0;
  double m = mpz_get_d_2exp(&e, x.get_mpz_t());
  return std::log2(std::fabs(m)) + static_cast<double>(e);
}

}  // namespace retset
