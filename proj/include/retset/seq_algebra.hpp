#pragma once

// Sets of nonnegative integers built from arithmetic progressions
// {m k + l} and p-arithmetic sequences {a p^(k n) + b}, closed under
// union and intersection.

#include "retset/numeric.hpp"

#include <set>
#include <string>

namespace retset {

// {m k + l : k >= 0}; m = 0 is the singleton {l}.
struct ArithProg {
  BigInt m;
  BigInt l;

  friend bool operator==(const ArithProg&, const ArithProg&) = default;
};

// {a p^(k n) + b : n >= 0}; a singleton when a = 0 or k = 0.  Values need
// not be integers.
struct PArithSeq {
  Rational a;
  Rational b;
  unsigned long k = 0;
  unsigned long p = 2;

  bool is_singleton() const { return a == 0 || k == 0; }
  Rational value(unsigned long n) const;

  friend bool operator==(const PArithSeq&, const PArithSeq&) = default;
};

// Finite union; every element lies in N_0.  The parith components are kept
// infinite, increasing and integer-valued (a > 0, k > 0).
struct IndexSet {
  std::set<BigInt> finite;
  std::vector<ArithProg> aps;
  std::vector<PArithSeq> parith;

  bool empty() const { return finite.empty() && aps.empty() && parith.empty(); }
  bool is_finite() const { return aps.empty() && parith.empty(); }

  static IndexSet all() { return of(ArithProg{1, 0}); }
  static IndexSet of(const ArithProg& ap);
  static IndexSet of_finite(std::set<BigInt> values);

  friend bool operator==(const IndexSet&, const IndexSet&) = default;
};

bool member(const ArithProg& A, const BigInt& x);
bool member(const PArithSeq& P, const BigInt& x);
bool member(const IndexSet& S, const BigInt& x);

IndexSet clip_to_naturals(const PArithSeq& P);
IndexSet intersect(const ArithProg& A, const ArithProg& B);
IndexSet intersect_ap_parith(const ArithProg& A, const PArithSeq& P);
IndexSet intersect_parith(const PArithSeq& P1, const PArithSeq& P2);

IndexSet unite(const IndexSet& X, const IndexSet& Y);
IndexSet intersect(const IndexSet& X, const IndexSet& Y);

// Drops singleton components, components contained in others, absorbs
// finite elements that extend a progression backwards, and sorts.
IndexSet canonicalize(IndexSet S);

// {scale * x + shift : x in S} for scale >= 1, shift >= 0.
IndexSet affine_image(const IndexSet& S, const BigInt& scale, const BigInt& shift);

// Sorted elements of S in [0, bound].
std::vector<BigInt> elements_upto(const IndexSet& S, const BigInt& bound);
bool equality_up_to(const IndexSet& X, const IndexSet& Y, const BigInt& bound);

bool contains(const ArithProg& outer, const ArithProg& inner);
bool contains(const ArithProg& outer, const PArithSeq& inner);
bool contains(const PArithSeq& outer, const PArithSeq& inner);

std::string format(const ArithProg& A);
std::string format(const PArithSeq& P);
std::string format(const IndexSet& S);

}  // namespace retset
