#pragma once

// Univariate polynomials over Q and the root-location tools built on them.

#include "retset/numeric.hpp"

#include <utility>

namespace retset {

class QPoly {
 public:
  QPoly() = default;
  explicit QPoly(std::vector<Rational> coeffs);  // index = degree
  static QPoly constant(const Rational& c) { return QPoly({c}); }
  static QPoly x() { return QPoly({0, 1}); }
  // (x - r)
  static QPoly linear_root(const Rational& r) { return QPoly({-r, 1}); }

  long degree() const { return static_cast<long>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational operator[](std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
  Rational lead() const { return c_.empty() ? Rational(0) : c_.back(); }

  friend bool operator==(const QPoly&, const QPoly&) = default;
  friend QPoly operator+(const QPoly& a, const QPoly& b);
  friend QPoly operator-(const QPoly& a, const QPoly& b);
  friend QPoly operator-(const QPoly& a);
  friend QPoly operator*(const QPoly& a, const QPoly& b);
  friend QPoly operator*(const Rational& c, const QPoly& a);

 private:
  void trim();
  std::vector<Rational> c_;
};

std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b);
QPoly operator/(const QPoly& a, const QPoly& b);
QPoly operator%(const QPoly& a, const QPoly& b);
QPoly monic(const QPoly& a);
QPoly gcd(QPoly a, QPoly b);  // monic, gcd(0, 0) = 0
QPoly derivative(const QPoly& a);
QPoly pow(const QPoly& a, unsigned long e);
// f / gcd(f, f'), monic.
QPoly squarefree_part(const QPoly& f);
Rational evaluate(const QPoly& f, const Rational& x);
// f(c * x)
QPoly scale_argument(const QPoly& f, const Rational& c);
// f(x + c)
QPoly shift_argument(const QPoly& f, const Rational& c);
std::string format(const QPoly& f);
// Unique polynomial of degree < xs.size() through the points (xs[i], ys[i]).
QPoly interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys);

unsigned long euler_phi(unsigned long m);
const QPoly& cyclotomic(unsigned long m);

struct CyclotomicSplit {
  unsigned long x_power = 0;                                // multiplicity of x
  std::vector<std::pair<unsigned long, unsigned long>> factors;  // (m, multiplicity)
  QPoly residual;                                           // no x, no cyclotomic factors
};
// Removes powers of x and every cyclotomic factor Phi_m with phi(m) <= deg f.
CyclotomicSplit split_cyclotomic(const QPoly& f);

Rational resultant(const QPoly& f, const QPoly& g);

// Number of distinct real roots of f in the half-open interval (a, b].
long count_real_roots(const QPoly& f, const Rational& a, const Rational& b);
// Disjoint isolating intervals (lo, hi] of the distinct real roots, each of
// width at most `width`, in increasing order.
std::vector<std::pair<Rational, Rational>> isolate_real_roots(const QPoly& f, const Rational& width);
// Cauchy bound: every complex root has |z| < bound.
Rational root_bound(const QPoly& f);
// Distinct integer roots of f.
std::vector<BigInt> integer_roots(const QPoly& f);

// Number of roots (with multiplicity) strictly inside the unit disk, by the
// Schur-Cohn recursion.  nullopt when the recursion hits a singular step
// (roots on the unit circle or a symmetric configuration).
std::optional<long> roots_inside_unit_disk(const QPoly& f);

// Closed rational interval with outward dyadic rounding after each operation.
struct Interval {
  Rational lo;
  Rational hi;

  static Interval point(const Rational& x) { return {x, x}; }
  Rational magnitude() const;  // max(|lo|, |hi|)
};
Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator*(const Interval& a, const Interval& b);
Interval inverse(const Interval& a);  // 0 must not lie in a
Interval round_out(const Interval& a, unsigned bits);

}  // namespace retset
