#pragma once

// Monomial-affine self-maps Phi(x) = y * x^A of the torus, their orbits,
// and membership of orbit points in a curve.

#include "retset/lattice.hpp"
#include "retset/laurent.hpp"

#include <cstdint>
#include <string>

namespace retset {

struct MonomialAffineMap {
  IntMatrix A;   // coordinate i of x^A is prod_j x_j^A(i, j)
  TorusPoint y;  // translation
};

struct Curve {
  std::vector<LaurentPoly> equations;
};

TorusPoint apply_map(const MonomialAffineMap& phi, const TorusPoint& x);
// Phi^n(alpha) by repeated application; throws DegreeCapExceeded.
TorusPoint iterate_exact(const MonomialAffineMap& phi, TorusPoint alpha, long n);
bool on_curve_exact(const Curve& V, const TorusPoint& x);

// The map in additive coordinates: X -> A X + Y.
struct EncodedMap {
  IntMatrix A;
  PointRep y;
  std::uint32_t p;
};

PointRep step(const EncodedMap& phi, const PointRep& x);
// Phi^n(alpha) = A^n alpha + (sum_{i<n} A^i) y via one power of the block
// matrix [[A, I], [0, I]].
PointRep iterate_lattice(const EncodedMap& phi, const PointRep& alpha, const BigInt& n);

struct ModularParams {
  unsigned degree = 16;
  unsigned trials = 3;
  std::uint64_t seed = 0;
};

struct ModularResult {
  bool hit = false;
  BigInt numerator_degree;       // D: degree bound of the evaluated numerators
  BigInt irreducible_count;      // I_d
  double log10_error_bound = 0;  // log10 of min(1, (D / I_d)^T); meaningful for hits
  std::vector<FpPoly> moduli;
};

// A curve with its coefficients factored over a shared basis, so it can be
// evaluated at points given by their additive representation.
class CurveEvaluator {
 public:
  CurveEvaluator(const Curve& V, SupportBasis& basis);

  // Exact test by common-denominator evaluation of the factored terms;
  // throws DegreeCapExceeded when the numerator would exceed the cap.
  bool on_curve(const PointRep& x) const;
  // Degree bound D of the numerator on_curve would expand.
  BigInt numerator_degree(const PointRep& x) const;
  ModularResult on_curve_modular(const PointRep& x, const ModularParams& params) const;

 private:
  struct Term {
    Exponent e;
    BigInt tors;
    IntVector expo;
  };
  struct FactoredValue {
    std::vector<BigInt> tors;
    std::vector<IntVector> expo;  // one row per term, width s
  };
  FactoredValue factored(std::size_t equation, const PointRep& x) const;

  const SupportBasis* basis_;
  std::vector<std::vector<Term>> equations_;
};

// Minimal polynomial of A: Phi_0^l + sum c_i Phi_0^i = 0.
struct CayleyRelation {
  std::size_t ell = 0;
  std::vector<BigInt> c;  // c_0 .. c_{l-1}
};
CayleyRelation cayley_recurrence(const IntMatrix& A);

struct OrbitClassification {
  enum class Kind { preperiodic, infinite_certified, unknown_to_bound };
  Kind kind = Kind::unknown_to_bound;
  long preperiod = 0;
  long period = 0;
  long bound = 0;
  std::string certificate;
};
std::string to_string(OrbitClassification::Kind kind);

OrbitClassification classify_orbit(const EncodedMap& phi, const PointRep& alpha, long bound);

}  // namespace retset
