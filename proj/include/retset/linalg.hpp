#pragma once

// Exact linear algebra over Z and Q.

#include "retset/numeric.hpp"

#include <functional>
#include <optional>

namespace retset {

// U * A * V = D with U, V unimodular and D diagonal; diag[i] > 0 and
// diag[i] divides diag[i + 1] for i < rank.
struct SmithForm {
  IntMatrix U;
  IntMatrix V;
  std::vector<BigInt> diag;
  Eigen::Index rank = 0;
};

SmithForm smith_normal_form(const IntMatrix& A);

// Integer solution of A x = b, if any.
std::optional<IntVector> solve_integer(const SmithForm& snf, const IntVector& b);

// Row-echelon basis of a growing set of vectors in Q^n.  `add` returns the
// coefficients expressing a dependent vector in terms of the vectors added
// so far (and then discards it), or nullopt after adding an independent one.
class RationalSpan {
 public:
  explicit RationalSpan(Eigen::Index dim) : dim_(dim) {}

  std::optional<RatVector> add(const RatVector& v);
  std::size_t size() const { return count_; }

 private:
  Eigen::Index dim_;
  std::size_t count_ = 0;
  std::vector<RatVector> rows_;      // reduced vectors
  std::vector<RatVector> combos_;    // rows_[i] = sum combos_[i][j] * input_j
  std::vector<Eigen::Index> pivots_;
};

// Minimal annihilating polynomial of the sequence v, next(v), next(next(v)), ...
// as coefficients c_0..c_{k-1} of x^k + c_{k-1} x^{k-1} + ... + c_0.
std::vector<Rational> krylov_relation(const RatVector& start,
                                      const std::function<RatVector(const RatVector&)>& next);

// Coefficients of the minimal polynomial of a square integer matrix.
std::vector<BigInt> minimal_polynomial(const IntMatrix& A);

RatMatrix to_rational(const IntMatrix& A);
RatVector to_rational(const IntVector& v);

Rational determinant(RatMatrix M);

}  // namespace retset
