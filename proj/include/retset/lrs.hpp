#pragma once

// Linear recurrence sequences over Q and the equation solvers built on them.

#include "retset/qpoly.hpp"
#include "retset/seq_algebra.hpp"

#include <string>
#include <utility>

namespace retset {

// u_{n+m} + c_{m-1} u_{n+m-1} + ... + c_0 u_n = 0
struct Lrs {
  std::vector<Rational> coeffs;  // c_0 .. c_{m-1}
  std::vector<Rational> init;    // u_0 .. u_{m-1}

  std::size_t order() const { return coeffs.size(); }
  void validate() const;
};

// x^m + c_{m-1} x^{m-1} + ... + c_0
QPoly characteristic_polynomial(const Lrs& u);
Lrs from_polynomial(const QPoly& monic_poly, std::vector<Rational> init);

Rational eval(const Lrs& u, const BigInt& n);
// u_0 .. u_{count-1}
std::vector<Rational> terms(const Lrs& u, std::size_t count);
// n -> u_{n + shift}
Lrs shifted(const Lrs& u, std::size_t shift);

// Shortest recurrence generating the given terms (Berlekamp-Massey over Q).
Lrs berlekamp_massey(const std::vector<Rational>& seq);
// Shortest recurrence of u itself.
Lrs minimal(const Lrs& u);
bool is_integer_valued(const Lrs& u);

// Minimal (preperiod, period) of u_n mod M; u must be integer-valued.
std::pair<BigInt, BigInt> period_mod(const Lrs& u, const BigInt& M);

struct Section {
  enum class Kind { zero, polynomial, dominant_root, general };
  unsigned long offset = 0;  // l in n -> u_{nM + l}
  Lrs seq;                   // minimal recurrence of the section
  Kind kind = Kind::general;
};
std::string to_string(Section::Kind kind);

struct NonDegSplit {
  unsigned long M = 1;
  std::vector<Section> sections;
};

// Stride at which every section is non-degenerate: the lcm of the orders of
// roots of unity among the characteristic roots and their ratios.
unsigned long degeneracy_stride(const QPoly& f);
// Res_y(f(y), f(x y)): its roots are the ratios of roots of f.
QPoly ratio_polynomial(const QPoly& f);
NonDegSplit decompose_nondeg(const Lrs& u);

// Strictly dominant simple real root r of h (no root at 0), with every other
// root of absolute value below sigma < |r|.
struct DominantRoot {
  Interval root;
  Rational sigma;
};
std::optional<DominantRoot> dominant_root(const QPoly& h);

struct CertStatus {
  enum class Kind { proved, verified_to_bound };
  Kind kind = Kind::proved;
  BigInt bound;                    // search bound on n when verified_to_bound
  std::vector<std::string> notes;  // why the answer is not proved

  bool proved() const { return kind == Kind::proved; }
  static CertStatus verified(const BigInt& bound, std::string note);
};
CertStatus combine(const CertStatus& x, const CertStatus& y);
std::string to_string(const CertStatus& s);

struct Solution {
  IndexSet set;
  CertStatus status;
};

struct SearchBounds {
  long n = 10000;
  long m = 60;
};

// {n : u_n = c}
Solution solve_eq_const(const Lrs& u, const Rational& c, const SearchBounds& bounds = {});
// {n >= 0 : P(n) = a p^(k m) + b for some m >= 0}
Solution poly_power_form(const QPoly& P, const Rational& a, const Rational& b, unsigned long k, unsigned long p,
                         const SearchBounds& bounds = {});
// {n : u_n = a p^(k m) + b for some m >= 0}
Solution solve_eq_parith(const Lrs& u, const Rational& a, const Rational& b, unsigned long k, unsigned long p,
                         const SearchBounds& bounds = {});

std::string format(const Lrs& u);

}  // namespace retset
