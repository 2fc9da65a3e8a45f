#include "retset/dynamics.hpp"

#include "retset/qpoly.hpp"

#include <cmath>
#include <limits>
#include <map>

namespace retset {

using Index = Eigen::Index;

TorusPoint apply_map(const MonomialAffineMap& phi, const TorusPoint& x) {
  const Index n = phi.A.rows();
  if (phi.A.cols() != n || static_cast<Index>(x.size()) != n || static_cast<Index>(phi.y.size()) != n)
    throw Error("map and point dimensions disagree");
  TorusPoint out;
  for (Index i = 0; i < n; ++i) {
    FpRational v = phi.y[static_cast<std::size_t>(i)];
    for (Index j = 0; j < n; ++j)
      if (phi.A(i, j) != 0) v = v * pow(x[static_cast<std::size_t>(j)], phi.A(i, j));
    out.push_back(v);
  }
  return out;
}

TorusPoint iterate_exact(const MonomialAffineMap& phi, TorusPoint alpha, long n) {
  for (long i = 0; i < n; ++i) alpha = apply_map(phi, alpha);
  return alpha;
}

bool on_curve_exact(const Curve& V, const TorusPoint& x) {
  for (const auto& eq : V.equations)
    if (!eq.evaluate(x).is_zero()) return false;
  return true;
}

PointRep step(const EncodedMap& phi, const PointRep& x) {
  return normalize(apply_matrix(phi.A, x) + phi.y, phi.p);
}

PointRep iterate_lattice(const EncodedMap& phi, const PointRep& alpha, const BigInt& n) {
  const Index N = phi.A.rows();
  const std::size_t s = std::max(alpha.width(), phi.y.width());
  const PointRep a = widen(alpha, s), y = widen(phi.y, s);
  IntMatrix block = IntMatrix::Zero(2 * N, 2 * N);
  block.topLeftCorner(N, N) = phi.A;
  block.topRightCorner(N, N) = IntMatrix::Identity(N, N);
  block.bottomRightCorner(N, N) = IntMatrix::Identity(N, N);
  const IntMatrix P = matrix_power(block, n);
  const IntMatrix An = P.topLeftCorner(N, N), Sn = P.topRightCorner(N, N);
  PointRep out{An * a.tors + Sn * y.tors, An * a.expo + Sn * y.expo};
  return normalize(out, phi.p);
}

CurveEvaluator::CurveEvaluator(const Curve& V, SupportBasis& basis) : basis_(&basis) {
  if (V.equations.empty()) throw InputError("a curve needs at least one equation");
  for (const auto& eq : V.equations) {
    if (eq.p() != basis.p()) throw InputError("curve equation over the wrong field");
    std::vector<Term> terms;
    for (const auto& [e, c] : eq.terms()) {
      auto [tors, row] = encode_value(c, basis);
      terms.push_back({e, tors, row});
    }
    equations_.push_back(std::move(terms));
  }
}

CurveEvaluator::FactoredValue CurveEvaluator::factored(std::size_t equation, const PointRep& x) const {
  const auto& terms = equations_[equation];
  std::size_t s = x.width();
  for (const auto& t : terms) s = std::max(s, static_cast<std::size_t>(t.expo.size()));
  const PointRep xs = widen(x, s);
  FactoredValue out;
  for (const auto& t : terms) {
    if (t.e.size() != x.dim()) throw Error("curve and point dimensions disagree");
    BigInt tors = t.tors;
    IntVector expo = IntVector::Zero(static_cast<Index>(s));
    expo.head(t.expo.size()) = t.expo;
    for (std::size_t i = 0; i < t.e.size(); ++i) {
      if (t.e[i] == 0) continue;
      tors += t.e[i] * xs.tors(static_cast<Index>(i));
      expo += BigInt(t.e[i]) * xs.expo.row(static_cast<Index>(i)).transpose();
    }
    out.tors.push_back(tors);
    out.expo.push_back(expo);
  }
  return out;
}

namespace {

// Exponent shift making every term of a sum a polynomial.
IntVector common_denominator(const std::vector<IntVector>& rows, Index s) {
  IntVector D = IntVector::Zero(s);
  for (const auto& r : rows)
    for (Index j = 0; j < s; ++j)
      if (-r(j) > D(j)) D(j) = -r(j);
  return D;
}

BigInt shifted_degree(const IntVector& row, const IntVector& D, const std::vector<FpPoly>& primes) {
  BigInt deg = 0;
  for (Index j = 0; j < row.size(); ++j)
    deg += (row(j) + D(j)) * primes[static_cast<std::size_t>(j)].degree();
  return deg;
}

}  // namespace

BigInt CurveEvaluator::numerator_degree(const PointRep& x) const {
  BigInt best = 0;
  for (std::size_t q = 0; q < equations_.size(); ++q) {
    const FactoredValue v = factored(q, x);
    if (v.expo.empty()) continue;
    const IntVector D = common_denominator(v.expo, v.expo.front().size());
    for (const auto& row : v.expo) best = std::max(best, shifted_degree(row, D, basis_->primes()));
  }
  return best;
}

bool CurveEvaluator::on_curve(const PointRep& x) const {
  const std::uint32_t p = basis_->p();
  const auto& primes = basis_->primes();
  for (std::size_t q = 0; q < equations_.size(); ++q) {
    const FactoredValue v = factored(q, x);
    if (v.expo.empty()) continue;
    const Index s = v.expo.front().size();
    const IntVector D = common_denominator(v.expo, s);
    for (const auto& row : v.expo)
      if (shifted_degree(row, D, primes) > kDegreeCap)
        throw DegreeCapExceeded("numerator degree " + shifted_degree(row, D, primes).get_str() +
                                " exceeds 2^25");
    FpPoly sum(p);
    for (std::size_t k = 0; k < v.expo.size(); ++k) {
      const std::uint32_t unit =
          basis_->field().pow(basis_->torsion_generator(), floor_mod(v.tors[k], BigInt(p - 1)));
      FpPoly term = FpPoly::constant(p, unit);
      for (Index j = 0; j < s; ++j) {
        const BigInt e = v.expo[k](j) + D(j);
        if (e != 0) term = term * pow(primes[static_cast<std::size_t>(j)], e);
      }
      sum = sum + term;
    }
    if (!sum.is_zero()) return false;
  }
  return true;
}

ModularResult CurveEvaluator::on_curve_modular(const PointRep& x, const ModularParams& params) const {
  const std::uint32_t p = basis_->p();
  const auto& primes = basis_->primes();
  if (params.degree == 0 || params.trials == 0) throw InputError("modular degree and trials must be positive");
  const BigInt order = ipow(BigInt(p), params.degree) - 1;
  ModularResult result;
  result.irreducible_count = count_irreducible(p, params.degree);
  std::vector<FactoredValue> values;
  for (std::size_t q = 0; q < equations_.size(); ++q) values.push_back(factored(q, x));

  for (unsigned trial = 0; trial < params.trials; ++trial) {
    std::seed_seq seq{static_cast<std::uint32_t>(params.seed), static_cast<std::uint32_t>(params.seed >> 32),
                      static_cast<std::uint32_t>(trial)};
    std::mt19937_64 rng(seq);
    FpPoly m(p);
    for (int attempt = 0;; ++attempt) {
      if (attempt == 64) throw Error("no modulus coprime to the support basis found");
      m = random_irreducible(p, params.degree, rng);
      if (!basis_->index_of(m)) break;
    }
    result.moduli.push_back(m);
    for (const auto& v : values) {
      FpPoly sum(p);
      for (std::size_t k = 0; k < v.expo.size(); ++k) {
        const std::uint32_t unit =
            basis_->field().pow(basis_->torsion_generator(), floor_mod(v.tors[k], BigInt(p - 1)));
        FpPoly term = FpPoly::constant(p, unit);
        for (Index j = 0; j < v.expo[k].size(); ++j) {
          const BigInt e = floor_mod(v.expo[k](j), order);
          if (e != 0) term = (term * powmod(primes[static_cast<std::size_t>(j)], e, m)) % m;
        }
        sum = sum + term;
      }
      if (!(sum % m).is_zero()) {
        result.hit = false;
        return result;
      }
    }
  }
  result.hit = true;
  result.numerator_degree = numerator_degree(x);
  if (result.numerator_degree == 0) {
    result.log10_error_bound = -std::numeric_limits<double>::infinity();
  } else {
    const double l = (log2_abs(result.numerator_degree) - log2_abs(result.irreducible_count)) / std::log2(10.0);
    result.log10_error_bound = std::min(0.0, l * params.trials);
  }
  return result;
}

CayleyRelation cayley_recurrence(const IntMatrix& A) {
  CayleyRelation r;
  r.c = minimal_polynomial(A);
  r.ell = r.c.size();
  return r;
}

std::string to_string(OrbitClassification::Kind kind) {
  switch (kind) {
    case OrbitClassification::Kind::preperiodic: return "preperiodic";
    case OrbitClassification::Kind::infinite_certified: return "infinite_certified";
    case OrbitClassification::Kind::unknown_to_bound: return "unknown_to_bound";
  }
  return "unknown";
}

namespace {

std::string describe_factor(unsigned long m, unsigned long mult) {
  std::string s = "Phi_" + std::to_string(m);
  if (mult > 1) s += "^" + std::to_string(mult);
  return s;
}

}  // namespace

OrbitClassification classify_orbit(const EncodedMap& phi, const PointRep& alpha, long bound) {
  OrbitClassification out;
  out.bound = bound;
  const std::size_t s = std::max(alpha.width(), phi.y.width());
  const PointRep a = widen(alpha, s), y = widen(phi.y, s);
  const Index N = phi.A.rows(), S = static_cast<Index>(s);

  // Minimal polynomial of the free part of the orbit, augmented by a constant
  // coordinate so that the affine step becomes linear.
  RatVector z0(N * S + 1);
  for (Index i = 0; i < N; ++i)
    for (Index j = 0; j < S; ++j) z0(i * S + j) = Rational(a.expo(i, j));
  z0(N * S) = 1;
  const RatMatrix Aq = to_rational(phi.A), Yq = to_rational(y.expo);
  auto next = [&](const RatVector& z) {
    RatMatrix E(N, S);
    for (Index i = 0; i < N; ++i)
      for (Index j = 0; j < S; ++j) E(i, j) = z(i * S + j);
    RatMatrix F = Aq * E + Yq;
    RatVector w(N * S + 1);
    for (Index i = 0; i < N; ++i)
      for (Index j = 0; j < S; ++j) w(i * S + j) = F(i, j);
    w(N * S) = 1;
    return w;
  };
  std::vector<Rational> rel = krylov_relation(z0, next);
  rel.push_back(1);
  const QPoly mu(rel);
  const CyclotomicSplit split = split_cyclotomic(mu);
  if (split.residual.degree() > 0) {
    out.kind = OrbitClassification::Kind::infinite_certified;
    out.certificate = "orbit minimal polynomial " + format(mu) + " has the non-cyclotomic factor " +
                      format(split.residual);
    return out;
  }
  for (const auto& [m, mult] : split.factors) {
    if (mult > 1) {
      out.kind = OrbitClassification::Kind::infinite_certified;
      out.certificate = "orbit minimal polynomial " + format(mu) + " has the repeated factor " +
                        describe_factor(m, mult);
      return out;
    }
  }

  std::map<std::vector<BigInt>, long> seen;
  PointRep x = normalize(a, phi.p);
  const EncodedMap map{phi.A, y, phi.p};
  for (long n = 0; n <= bound; ++n) {
    IntVector f = flatten(x);
    std::vector<BigInt> key(f.data(), f.data() + f.size());
    auto [it, inserted] = seen.emplace(std::move(key), n);
    if (!inserted) {
      out.kind = OrbitClassification::Kind::preperiodic;
      out.preperiod = it->second;
      out.period = n - it->second;
      out.certificate = "state at n = " + std::to_string(n) + " repeats n = " + std::to_string(it->second);
      return out;
    }
    x = step(map, x);
  }
  out.kind = OrbitClassification::Kind::unknown_to_bound;
  out.certificate = "no repetition up to n = " + std::to_string(bound);
  return out;
}

}  // namespace retset
