#include "retset/lattice.hpp"

namespace retset {

using Index = Eigen::Index;

SupportBasis::SupportBasis(std::uint32_t p) : field_(p), generator_(field_.primitive_root()) {}

std::optional<std::size_t> SupportBasis::index_of(const FpPoly& q) const {
  auto it = index_.find(q);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t SupportBasis::add(const FpPoly& q) {
  if (q.p() != p()) throw Error("prime over the wrong field");
  if (auto i = index_of(q)) return *i;
  primes_.push_back(q);
  index_.emplace(q, primes_.size() - 1);
  return primes_.size() - 1;
}

PointRep zero_rep(std::size_t n, std::size_t s) {
  return {IntVector::Zero(static_cast<Index>(n)),
          IntMatrix::Zero(static_cast<Index>(n), static_cast<Index>(s))};
}

PointRep widen(const PointRep& v, std::size_t s) {
  if (v.width() == s) return v;
  if (v.width() > s) throw Error("cannot narrow a point representation");
  PointRep r = zero_rep(v.dim(), s);
  r.tors = v.tors;
  r.expo.leftCols(v.expo.cols()) = v.expo;
  return r;
}

PointRep normalize(const PointRep& v, std::uint32_t p) {
  PointRep r = v;
  for (Index i = 0; i < r.tors.size(); ++i) r.tors(i) = floor_mod(r.tors(i), BigInt(p - 1));
  return r;
}

namespace {

std::pair<PointRep, PointRep> aligned(const PointRep& a, const PointRep& b) {
  if (a.dim() != b.dim()) throw Error("point dimension mismatch");
  const std::size_t s = std::max(a.width(), b.width());
  return {widen(a, s), widen(b, s)};
}

}  // namespace

PointRep operator+(const PointRep& a, const PointRep& b) {
  auto [x, y] = aligned(a, b);
  return {x.tors + y.tors, x.expo + y.expo};
}

PointRep operator-(const PointRep& a, const PointRep& b) {
  auto [x, y] = aligned(a, b);
  return {x.tors - y.tors, x.expo - y.expo};
}

PointRep operator*(const BigInt& c, const PointRep& a) { return {c * a.tors, c * a.expo}; }

bool same_point(const PointRep& a, const PointRep& b, std::uint32_t p) {
  auto [x, y] = aligned(normalize(a, p), normalize(b, p));
  return x.tors == y.tors && x.expo == y.expo;
}

PointRep apply_matrix(const IntMatrix& A, const PointRep& v) {
  if (A.cols() != static_cast<Index>(v.dim())) throw Error("matrix does not match point dimension");
  return {A * v.tors, A * v.expo};
}

std::pair<BigInt, IntVector> encode_value(const FpRational& value, SupportBasis& basis) {
  if (value.is_zero()) throw InputError("torus coordinates must be nonzero");
  if (value.p() != basis.p()) throw Error("coordinate over the wrong field");
  std::vector<std::pair<std::size_t, long>> parts;
  const Factorization num = factor(value.num());
  const Factorization den = factor(value.den());
  for (const auto& [q, e] : num.factors) parts.emplace_back(basis.add(q), static_cast<long>(e));
  for (const auto& [q, e] : den.factors) parts.emplace_back(basis.add(q), -static_cast<long>(e));
  IntVector row = IntVector::Zero(static_cast<Index>(basis.size()));
  for (const auto& [i, e] : parts) row(static_cast<Index>(i)) += e;
  // The denominator is monic, so the unit comes from the numerator.
  const std::uint32_t unit = num.unit;
  return {BigInt(basis.field().dlog(unit, basis.torsion_generator())), row};
}

PointRep encode(const TorusPoint& point, SupportBasis& basis) {
  std::vector<std::pair<BigInt, IntVector>> rows;
  for (const auto& x : point) rows.push_back(encode_value(x, basis));
  PointRep r = zero_rep(point.size(), basis.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    r.tors(static_cast<Index>(i)) = rows[i].first;
    const auto& row = rows[i].second;
    r.expo.row(static_cast<Index>(i)).head(row.size()) = row.transpose();
  }
  return r;
}

FpRational decode_value(const BigInt& tors, const IntVector& expo, const SupportBasis& basis) {
  const std::uint32_t p = basis.p();
  if (static_cast<std::size_t>(expo.size()) > basis.size())
    throw Error("representation wider than the support basis");
  const std::uint32_t unit = basis.field().pow(basis.torsion_generator(), floor_mod(tors, BigInt(p - 1)));
  FpPoly num = FpPoly::constant(p, unit), den = FpPoly::constant(p, 1);
  for (Index j = 0; j < expo.size(); ++j) {
    const BigInt& e = expo(j);
    if (e > 0) num = num * pow(basis.primes()[static_cast<std::size_t>(j)], e);
    if (e < 0) den = den * pow(basis.primes()[static_cast<std::size_t>(j)], -e);
  }
  return FpRational(num, den);
}

TorusPoint decode(const PointRep& v, const SupportBasis& basis) {
  TorusPoint out;
  for (std::size_t i = 0; i < v.dim(); ++i)
    out.push_back(decode_value(v.tors(static_cast<Index>(i)),
                               v.expo.row(static_cast<Index>(i)).transpose(), basis));
  return out;
}

IntVector flatten(const PointRep& v) {
  const Index n = static_cast<Index>(v.dim()), s = static_cast<Index>(v.width());
  IntVector w(n + n * s);
  w.head(n) = v.tors;
  for (Index i = 0; i < n; ++i) w.segment(n + i * s, s) = v.expo.row(i).transpose();
  return w;
}

Subgroup::Subgroup(std::vector<PointRep> generators, std::size_t n, std::size_t s, std::uint32_t p)
    : generators_(std::move(generators)), n_(n), s_(s), p_(p) {
  const Index rows = static_cast<Index>(n + n * s);
  const Index g = static_cast<Index>(generators_.size());
  IntMatrix M = IntMatrix::Zero(rows, g + static_cast<Index>(n));
  for (Index j = 0; j < g; ++j) {
    auto& gen = generators_[static_cast<std::size_t>(j)];
    if (gen.dim() != n) throw Error("generator dimension mismatch");
    gen = widen(gen, s);
    M.col(j) = flatten(gen);
  }
  for (Index i = 0; i < static_cast<Index>(n); ++i) M(i, g + i) = BigInt(p - 1);
  smith_ = smith_normal_form(M);
}

Subgroup::Conditions Subgroup::conditions() const {
  Conditions c;
  for (Index i = 0; i < smith_.U.rows(); ++i) {
    IntVector row = smith_.U.row(i).transpose();
    if (i >= smith_.rank) {
      c.equalities.push_back(row);
    } else if (smith_.diag[static_cast<std::size_t>(i)] != 1) {
      c.congruences.emplace_back(row, smith_.diag[static_cast<std::size_t>(i)]);
    }
  }
  return c;
}

std::optional<IntVector> member_coset(const PointRep& v, const PointRep& R, const Subgroup& H) {
  if (v.dim() != H.dim() || R.dim() != H.dim()) throw Error("basis mismatch: point dimension");
  if (v.width() > H.width() || R.width() > H.width())
    throw Error("basis mismatch: point uses primes outside the subgroup's basis");
  const IntVector w = flatten(widen(v, H.width()) - widen(R, H.width()));
  auto sol = solve_integer(H.smith(), w);
  if (!sol) return std::nullopt;
  return IntVector(sol->head(static_cast<Index>(H.generators().size())));
}

}  // namespace retset
