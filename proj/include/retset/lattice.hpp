#pragma once

// The finitely generated group of torus points, written additively.
//
// A point of G_m^N(F_p(t)) whose coordinates factor over a finite set of
// monic irreducibles q_1..q_s is stored as
//   x_i = g^{tors_i} * prod_j q_j^{expo(i, j)},
// with g the smallest primitive root mod p.  Multiplication of points is
// addition of representations.

#include "retset/laurent.hpp"
#include "retset/linalg.hpp"

#include <map>

namespace retset {

class SupportBasis {
 public:
  explicit SupportBasis(std::uint32_t p);

  std::uint32_t p() const { return field_.p(); }
  std::uint32_t torsion_generator() const { return generator_; }
  const PrimeField& field() const { return field_; }
  const std::vector<FpPoly>& primes() const { return primes_; }
  std::size_t size() const { return primes_.size(); }

  std::optional<std::size_t> index_of(const FpPoly& q) const;
  // Index of q, appending it when new.  q must be monic irreducible.
  std::size_t add(const FpPoly& q);

 private:
  PrimeField field_;
  std::uint32_t generator_;
  std::vector<FpPoly> primes_;
  std::map<FpPoly, std::size_t> index_;
};

struct PointRep {
  IntVector tors;  // length N, entries mod p - 1
  IntMatrix expo;  // N x s

  std::size_t dim() const { return static_cast<std::size_t>(tors.size()); }
  std::size_t width() const { return static_cast<std::size_t>(expo.cols()); }
};

PointRep zero_rep(std::size_t n, std::size_t s);
// Pads the exponent matrix with zero columns up to width s.
PointRep widen(const PointRep& v, std::size_t s);
// Reduces torsion entries into [0, p - 1).
PointRep normalize(const PointRep& v, std::uint32_t p);
PointRep operator+(const PointRep& a, const PointRep& b);
PointRep operator-(const PointRep& a, const PointRep& b);
PointRep operator*(const BigInt& c, const PointRep& a);
// Equality of group elements (torsion compared mod p - 1).
bool same_point(const PointRep& a, const PointRep& b, std::uint32_t p);

// Image under the monomial map x -> x^A (row i of A gives coordinate i).
PointRep apply_matrix(const IntMatrix& A, const PointRep& v);

// Factors every coordinate, extending the basis with new irreducibles.
// Throws InputError on a zero coordinate.
PointRep encode(const TorusPoint& point, SupportBasis& basis);
// Encodes a single nonzero function as (tors, exponent row).
std::pair<BigInt, IntVector> encode_value(const FpRational& value, SupportBasis& basis);

TorusPoint decode(const PointRep& v, const SupportBasis& basis);
FpRational decode_value(const BigInt& tors, const IntVector& expo, const SupportBasis& basis);

// [tors; expo row by row], the vector used for lattice membership.
IntVector flatten(const PointRep& v);

// A subgroup of the point group, with the Smith form of the lattice spanned
// by its generators together with the torsion relations (p - 1) e_i.
class Subgroup {
 public:
  Subgroup(std::vector<PointRep> generators, std::size_t n, std::size_t s, std::uint32_t p);

  const std::vector<PointRep>& generators() const { return generators_; }
  std::size_t dim() const { return n_; }
  std::size_t width() const { return s_; }
  const SmithForm& smith() const { return smith_; }

  // w lies in the subgroup iff E w = 0 and c . w == 0 mod m for each
  // congruence (c, m); w is a flattened representation.
  struct Conditions {
    std::vector<IntVector> equalities;
    std::vector<std::pair<IntVector, BigInt>> congruences;
  };
  Conditions conditions() const;

 private:
  std::vector<PointRep> generators_;
  std::size_t n_;
  std::size_t s_;
  std::uint32_t p_;
  SmithForm smith_;
};

// Witness c with v - R = sum c_j generators_j (mod torsion), if one exists.
std::optional<IntVector> member_coset(const PointRep& v, const PointRep& R, const Subgroup& H);

}  // namespace retset
