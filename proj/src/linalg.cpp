#include "retset/linalg.hpp"

namespace retset {

namespace {

using Index = Eigen::Index;

// Position of the smallest nonzero |entry| in D[t:, t:], if any.
std::optional<std::pair<Index, Index>> smallest_entry(const IntMatrix& D, Index t) {
  std::optional<std::pair<Index, Index>> best;
  BigInt best_abs;
  for (Index i = t; i < D.rows(); ++i) {
    for (Index j = t; j < D.cols(); ++j) {
      if (D(i, j) == 0) continue;
      BigInt a = abs(D(i, j));
      if (!best || a < best_abs) {
        best = {i, j};
        best_abs = a;
      }
    }
  }
  return best;
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& A) {
  const Index m = A.rows(), n = A.cols();
  IntMatrix D = A;
  SmithForm s;
  s.U = IntMatrix::Identity(m, m);
  s.V = IntMatrix::Identity(n, n);
  Index t = 0;
  for (; t < std::min(m, n); ++t) {
    auto pos = smallest_entry(D, t);
    if (!pos) break;
    while (true) {
      auto [pi, pj] = *pos;
      D.row(t).swap(D.row(pi));
      s.U.row(t).swap(s.U.row(pi));
      D.col(t).swap(D.col(pj));
      s.V.col(t).swap(s.V.col(pj));

      bool clean = true;
      for (Index i = t + 1; i < m; ++i) {
        if (D(i, t) == 0) continue;
        BigInt q = D(i, t) / D(t, t);
        D.row(i) -= q * D.row(t);
        s.U.row(i) -= q * s.U.row(t);
        if (D(i, t) != 0) clean = false;
      }
      for (Index j = t + 1; j < n; ++j) {
        if (D(t, j) == 0) continue;
        BigInt q = D(t, j) / D(t, t);
        D.col(j) -= q * D.col(t);
        s.V.col(j) -= q * s.V.col(t);
        if (D(t, j) != 0) clean = false;
      }
      if (!clean) {
        // Remainders are smaller than the pivot; move the smallest in.
        BigInt best = abs(D(t, t));
        pos = std::make_pair(t, t);
        for (Index i = t + 1; i < m; ++i)
          if (D(i, t) != 0 && abs(D(i, t)) < best) best = abs(D(i, t)), pos = std::make_pair(i, t);
        for (Index j = t + 1; j < n; ++j)
          if (D(t, j) != 0 && abs(D(t, j)) < best) best = abs(D(t, j)), pos = std::make_pair(t, j);
        continue;
      }
      std::optional<Index> bad_row;
      for (Index i = t + 1; i < m && !bad_row; ++i)
        for (Index j = t + 1; j < n; ++j)
          if (D(i, j) % D(t, t) != 0) {
            bad_row = i;
            break;
          }
      if (!bad_row) break;
      D.row(t) += D.row(*bad_row);
      s.U.row(t) += s.U.row(*bad_row);
      pos = std::make_pair(t, t);
    }
    if (D(t, t) < 0) {
      D.row(t) = -D.row(t);
      s.U.row(t) = -s.U.row(t);
    }
    s.diag.push_back(D(t, t));
  }
  s.rank = t;
  return s;
}

std::optional<IntVector> solve_integer(const SmithForm& snf, const IntVector& b) {
  IntVector z = snf.U * b;
  IntVector y = IntVector::Zero(snf.V.rows());
  for (Index i = 0; i < z.size(); ++i) {
    if (i < snf.rank) {
      if (z(i) % snf.diag[static_cast<std::size_t>(i)] != 0) return std::nullopt;
      y(i) = z(i) / snf.diag[static_cast<std::size_t>(i)];
    } else if (z(i) != 0) {
      return std::nullopt;
    }
  }
  return IntVector(snf.V * y);
}

std::optional<RatVector> RationalSpan::add(const RatVector& v) {
  if (v.size() != dim_) throw Error("vector dimension mismatch");
  const std::size_t k = count_;
  RatVector r = v;
  RatVector combo = RatVector::Zero(static_cast<Index>(k + 1));
  combo(static_cast<Index>(k)) = 1;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const Rational f = r(pivots_[i]);
    if (f == 0) continue;
    r -= f * rows_[i];
    RatVector c = combos_[i];
    c.conservativeResize(static_cast<Index>(k + 1));
    c(static_cast<Index>(k)) = 0;
    combo -= f * c;
  }
  Index pivot = -1;
  for (Index j = 0; j < r.size(); ++j)
    if (r(j) != 0) {
      pivot = j;
      break;
    }
  if (pivot < 0) {
    // 0 = combo . inputs, so v = -sum combo_j input_j over the earlier inputs.
    RatVector out(static_cast<Index>(k));
    for (std::size_t j = 0; j < k; ++j) out(static_cast<Index>(j)) = -combo(static_cast<Index>(j));
    return out;
  }
  const Rational inv = 1 / r(pivot);
  r *= inv;
  combo *= inv;
  // Keep earlier rows reduced against the new pivot.
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const Rational f = rows_[i](pivot);
    if (f == 0) continue;
    rows_[i] -= f * r;
    RatVector c = combos_[i];
    c.conservativeResize(static_cast<Index>(k + 1));
    c(static_cast<Index>(k)) = 0;
    combos_[i] = c - f * combo;
  }
  for (auto& c : combos_) {
    if (c.size() < static_cast<Index>(k + 1)) {
      const Index old = c.size();
      c.conservativeResize(static_cast<Index>(k + 1));
      for (Index j = old; j < c.size(); ++j) c(j) = 0;
    }
  }
  rows_.push_back(r);
  combos_.push_back(combo);
  pivots_.push_back(pivot);
  ++count_;
  return std::nullopt;
}

std::vector<Rational> krylov_relation(const RatVector& start,
                                      const std::function<RatVector(const RatVector&)>& next) {
  RationalSpan span(start.size());
  RatVector v = start;
  while (true) {
    auto rel = span.add(v);
    if (rel) {
      std::vector<Rational> c(static_cast<std::size_t>(rel->size()));
      for (Index i = 0; i < rel->size(); ++i) c[static_cast<std::size_t>(i)] = -(*rel)(i);
      return c;
    }
    if (static_cast<Index>(span.size()) > start.size())
      throw Error("Krylov sequence failed to become dependent");
    v = next(v);
  }
}

std::vector<BigInt> minimal_polynomial(const IntMatrix& A) {
  if (A.rows() != A.cols()) throw Error("minimal polynomial of a non-square matrix");
  const Index n = A.rows();
  const RatMatrix Aq = to_rational(A);
  RatVector start(n * n);
  const RatMatrix I = RatMatrix::Identity(n, n);
  for (Index i = 0; i < n * n; ++i) start(i) = I(i % n, i / n);
  auto next = [&](const RatVector& v) {
    RatMatrix M(n, n);
    for (Index i = 0; i < n * n; ++i) M(i % n, i / n) = v(i);
    RatMatrix P = Aq * M;
    RatVector out(n * n);
    for (Index i = 0; i < n * n; ++i) out(i) = P(i % n, i / n);
    return out;
  };
  std::vector<BigInt> out;
  for (const auto& c : krylov_relation(start, next)) {
    if (!is_integer(c)) throw Error("minimal polynomial of an integer matrix is not integral");
    out.push_back(c.get_num());
  }
  return out;
}

RatMatrix to_rational(const IntMatrix& A) {
  RatMatrix R(A.rows(), A.cols());
  for (Index i = 0; i < A.rows(); ++i)
    for (Index j = 0; j < A.cols(); ++j) R(i, j) = Rational(A(i, j));
  return R;
}

RatVector to_rational(const IntVector& v) {
  RatVector r(v.size());
  for (Index i = 0; i < v.size(); ++i) r(i) = Rational(v(i));
  return r;
}

Rational determinant(RatMatrix M) {
  const Index n = M.rows();
  Rational det = 1;
  for (Index c = 0; c < n; ++c) {
    Index piv = c;
    while (piv < n && M(piv, c) == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      M.row(piv).swap(M.row(c));
      det = -det;
    }
    det *= M(c, c);
    for (Index r = c + 1; r < n; ++r) {
      if (M(r, c) == 0) continue;
      const Rational f = M(r, c) / M(c, c);
      M.row(r) -= f * M.row(c);
    }
  }
  return det;
}

}  // namespace retset
