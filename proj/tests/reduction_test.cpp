#include "retset/reduction.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace retset;
using namespace retset::testing;

namespace retset {
void PrintTo(const IndexSet& S, std::ostream* os) { *os << format(S); }
}  // namespace retset

namespace {

Rational q(long n, long d = 1) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

struct Instance {
  std::unique_ptr<SupportBasis> basis;
  GroupContext ctx;
  OrbitSequences seqs;

  Instance(const MonomialAffineMap& phi, const TorusPoint& alpha)
      : basis(std::make_unique<SupportBasis>(alpha.front().p())) {
    ctx = make_context(phi, alpha, *basis);
    seqs = build_orbit_sequences(ctx);
  }

  PointRep rep(const TorusPoint& x) { return encode(x, *basis); }
  Subgroup subgroup(const std::vector<TorusPoint>& gens) {
    std::vector<PointRep> reps;
    for (const auto& g : gens) reps.push_back(rep(g));
    return Subgroup(reps, ctx.dim(), basis->size(), basis->p());
  }
};

struct Fixture {
  std::string name;
  MonomialAffineMap phi;
  TorusPoint alpha;
};

std::vector<Fixture> fixtures() {
  return {
      {"power_sums_p3", power_sums(), point(3, {"1", "1", "1"})},
      {"frobenius_line_p2", frobenius_line(2), point(2, {"1", "1"})},
      {"frobenius_line_p3", frobenius_line(3), point(3, {"1", "1"})},
      {"diagonal", {square({{1, 0}, {0, 1}}), point(3, {"t", "t"})}, point(3, {"1", "1"})},
      {"rotation", {square({{0, 1}, {-1, 0}}), point(3, {"1", "1"})}, point(3, {"t", "1"})},
  };
}

// Orbit points Phi^0(alpha) .. Phi^count(alpha) by direct stepping.
std::vector<PointRep> orbit(const Instance& s, long count) {
  std::vector<PointRep> out{s.ctx.alpha};
  for (long n = 1; n <= count; ++n) out.push_back(step(s.ctx.phi, out.back()));
  return out;
}

std::set<BigInt> coset_oracle(const Instance& s, const PointRep& R, const Subgroup& H, long bound) {
  std::set<BigInt> out;
  const auto pts = orbit(s, bound);
  for (long n = 0; n <= bound; ++n)
    if (member_coset(widen(pts[static_cast<std::size_t>(n)], H.width()), R, H)) out.insert(n);
  return out;
}

// Phi^n(alpha) - R1 = p^(k m) R2 for some m, by scanning m over the
// valuation range allowed by the exponent sizes.
std::set<BigInt> forbit_oracle(const Instance& s, const PointRep& R1, const PointRep& R2, unsigned long k, long bound) {
  std::set<BigInt> out;
  const std::size_t w = s.basis->size();
  const IntVector r2 = flatten(widen(R2, w));
  const std::uint32_t p = s.basis->p();
  const std::size_t n_dim = s.ctx.dim();
  const auto pts = orbit(s, bound);
  for (long n = 0; n <= bound; ++n) {
    const IntVector d = flatten(widen(pts[static_cast<std::size_t>(n)], w) - widen(R1, w));
    bool tors_ok = true;
    for (std::size_t i = 0; i < n_dim; ++i)
      tors_ok = tors_ok && floor_mod(d(static_cast<Eigen::Index>(i)) - r2(static_cast<Eigen::Index>(i)), BigInt(p - 1)) == 0;
    if (!tors_ok) continue;
    BigInt scale = 1;
    for (long m = 0; m < 4000; ++m) {
      bool eq = true, too_big = true;
      for (Eigen::Index j = static_cast<Eigen::Index>(n_dim); j < d.size(); ++j) {
        eq = eq && d(j) == scale * r2(j);
        if (r2(j) != 0 && abs(scale * r2(j)) <= abs(d(j))) too_big = false;
      }
      if (eq) {
        out.insert(n);
        break;
      }
      if (too_big || k == 0 || r2.tail(r2.size() - static_cast<Eigen::Index>(n_dim)).isZero()) break;
      scale *= ipow(BigInt(p), k);
    }
  }
  return out;
}

std::set<BigInt> as_set(const std::vector<BigInt>& v) { return {v.begin(), v.end()}; }

PointRep negate(const PointRep& v) { return BigInt(-1) * v; }

// (t^x, (1-t)^x)
std::vector<std::string> mono(long x) {
  const std::string e = std::to_string(x < 0 ? -x : x);
  if (x < 0) return {"1/t^" + e, "1/(1-t)^" + e};
  return {"t^" + e, "(1-t)^" + e};
}

}  // namespace

TEST(Reduction, OrbitSequencesOrderOne) {
  // l = 1, c0 = -lambda: v_0 = lambda^n, u_1 = (lambda^n - 1) / (lambda - 1).
  for (long lambda : {1L, 2L, 3L, -2L}) {
    Instance s({square({{lambda}}), point(3, {"t"})}, point(3, {"1+t"}));
    ASSERT_EQ(s.ctx.relation.ell, 1u);
    ASSERT_EQ(s.seqs.v.size(), 1u);
    ASSERT_EQ(s.seqs.u.size(), 1u);
    const auto v = terms(s.seqs.v[0], 12);
    const auto u = terms(s.seqs.u[0], 12);
    Rational power = 1, geometric = 0;
    for (std::size_t n = 0; n < 12; ++n) {
      EXPECT_EQ(v[n], power);
      EXPECT_EQ(u[n], geometric);
      geometric += power;
      power *= lambda;
    }
  }
}

TEST(Reduction, OrbitSequencesPowerSums) {
  Instance s(power_sums(), point(3, {"1", "1", "1"}));
  EXPECT_EQ(terms(s.seqs.v[0], 6), (std::vector<Rational>{1, 1, 1, 1, 1, 1}));
  EXPECT_EQ(terms(s.seqs.u[0], 6), (std::vector<Rational>{0, 1, 2, 3, 4, 5}));
}

TEST(Reduction, SolveCosetExamples) {
  MonomialAffineMap diag{square({{1, 0}, {0, 1}}), point(3, {"t", "t"})};
  {
    Instance s(diag, point(3, {"1", "1"}));
    Subgroup H = s.subgroup({point(3, {"t", "t"})});
    Solution r = solve_coset(s.ctx, s.seqs, s.rep(point(3, {"1", "1"})), H);
    EXPECT_EQ(r.set, IndexSet::all());
    EXPECT_TRUE(r.status.proved());
  }
  {
    Instance s(diag, point(3, {"t", "1"}));
    Subgroup H = s.subgroup({point(3, {"t", "t"})});
    Solution r = solve_coset(s.ctx, s.seqs, s.rep(point(3, {"1", "1"})), H);
    EXPECT_TRUE(r.set.empty());
    EXPECT_TRUE(r.status.proved());
  }
  {
    Instance s(power_sums(), point(3, {"1", "1", "1"}));
    PointRep R = s.rep(point(3, {"t", "1+t", "1-t"}));
    Subgroup H = s.subgroup({});
    Solution r = solve_coset(s.ctx, s.seqs, R, H);
    EXPECT_EQ(r.set, IndexSet::of_finite({1}));
    EXPECT_TRUE(r.status.proved());
  }
  {
    Instance s({square({{0, 1}, {-1, 0}}), point(3, {"1", "1"})}, point(3, {"t", "1"}));
    PointRep R = s.rep(point(3, {"1", "t"}));
    Solution r = solve_coset(s.ctx, s.seqs, R, s.subgroup({}));
    EXPECT_EQ(r.set, IndexSet::of({4, 3}));
  }
  {
    // Torsion enters through the coset representative: -t^n = -t only at n = 1.
    Instance s({square({{1}}), point(5, {"t"})}, point(5, {"1"}));
    Solution r = solve_coset(s.ctx, s.seqs, s.rep(point(5, {"-t"})), s.subgroup({point(5, {"t"})}));
    EXPECT_TRUE(r.set.empty());
    Solution all = solve_coset(s.ctx, s.seqs, s.rep(point(5, {"-1"})), s.subgroup({point(5, {"t"}), point(5, {"2"})}));
    EXPECT_EQ(all.set, IndexSet::all());
  }
}

TEST(Reduction, SolveForbitFrobeniusLine) {
  for (std::uint32_t p : {2u, 3u}) {
    Instance s(frobenius_line(p), point(p, {"1", "1"}));
    PointRep R1 = s.rep(point(p, {"1/t", "1/(1-t)"}));
    PointRep R2 = s.rep(point(p, {"t", "1-t"}));
    Solution r = solve_forbit(s.ctx, s.seqs, R1, R2, 2);
    const long d = static_cast<long>(p * p - 1);
    EXPECT_EQ(r.set, (IndexSet{{}, {}, {PArithSeq{q(1, d), q(-1, d), 2, p}}})) << "p = " << p;
    EXPECT_TRUE(r.status.proved());
  }
}

TEST(Reduction, SolveForbitTrivialGenerator) {
  Instance s(power_sums(), point(3, {"1", "1", "1"}));
  PointRep R1 = s.rep(point(3, {"t^4", "(1+t)^4", "(1-t)^4"}));
  PointRep id = s.rep(point(3, {"1", "1", "1"}));
  for (unsigned long k : {0ul, 1ul, 3ul}) {
    Solution f = solve_forbit(s.ctx, s.seqs, R1, id, k);
    Solution c = solve_coset(s.ctx, s.seqs, R1, s.subgroup({}));
    EXPECT_EQ(f.set, c.set);
    EXPECT_EQ(f.set, IndexSet::of_finite({4}));
  }
}

TEST(Reduction, SimplifyIfInfiniteAp) {
  ApHooks odd{[](const BigInt& n) { return floor_mod(n, 2) == 1; }, 1000000, 20};
  Solution all{IndexSet::all(), {}};
  EXPECT_EQ(simplify_if_infinite_ap(all, odd).set, IndexSet::all());

  Solution split{IndexSet{{1}, {ArithProg{4, 3}, ArithProg{4, 5}}, {}}, CertStatus::verified(500, "scan")};
  Solution merged = simplify_if_infinite_ap(split, odd);
  EXPECT_EQ(merged.set, IndexSet::of({2, 1}));
  EXPECT_FALSE(merged.status.proved());

  Solution finite{IndexSet::of_finite({3, 8}), {}};
  EXPECT_EQ(simplify_if_infinite_ap(finite, odd).set, finite.set);

  // A wrong extension is refused.
  ApHooks none{[](const BigInt& n) { return n < 10; }, 1000, 20};
  EXPECT_EQ(simplify_if_infinite_ap(split, none).set, split.set);
}

// Reconstruction identity on every fixture and on random maps.
TEST(ReductionProperty, ReconstructionMatchesIteration) {
  for (const auto& f : fixtures()) {
    Instance s(f.phi, f.alpha);
    const auto pts = orbit(s, 60);
    for (long n = 0; n <= 60; ++n)
      ASSERT_TRUE(same_point(reconstruct(s.ctx, s.seqs, n), pts[static_cast<std::size_t>(n)], s.basis->p()))
          << f.name << " n = " << n;
  }
  std::mt19937_64 rng(91);
  const std::vector<std::string> pieces{"t", "1+t", "t^2+1", "1/t", "(t+2)^2", "2*t", "t/(1+t)"};
  for (int it = 0; it < 25; ++it) {
    const std::uint32_t p = std::vector<std::uint32_t>{2, 3, 5}[rng() % 3];
    const std::size_t N = 1 + rng() % 3;
    IntMatrix A(static_cast<Eigen::Index>(N), static_cast<Eigen::Index>(N));
    for (Eigen::Index i = 0; i < A.rows(); ++i)
      for (Eigen::Index j = 0; j < A.cols(); ++j) A(i, j) = static_cast<long>(rng() % 5) - 2;
    std::vector<std::string> y, a;
    for (std::size_t i = 0; i < N; ++i) {
      y.push_back(pieces[rng() % pieces.size()]);
      a.push_back(pieces[rng() % pieces.size()]);
    }
    if (p == 2) {
      for (auto* v : {&y, &a})
        for (auto& c : *v)
          if (c == "(t+2)^2" || c == "2*t") c = "t^3";
    }
    Instance s({A, point(p, y)}, point(p, a));
    const auto pts = orbit(s, 60);
    for (long n = 0; n <= 60; ++n)
      ASSERT_TRUE(same_point(reconstruct(s.ctx, s.seqs, n), pts[static_cast<std::size_t>(n)], p))
          << "iteration " << it << " n = " << n;
  }
}

TEST(ReductionProperty, CosetMatchesOrbitScan) {
  struct Case {
    std::size_t fixture;
    std::vector<std::string> R;
    std::vector<std::vector<std::string>> H;
  };
  const std::vector<Case> cases{
      {0, {"t^2", "(1+t)^2", "(1-t)^2"}, {}},
      {0, {"1", "1", "1"}, {{"t", "1", "1"}}},
      {0, {"t^3", "1", "(1-t)^3"}, {{"1", "1+t", "1"}}},
      {0, {"1", "1", "1"}, {{"t", "1+t", "1"}, {"1", "1", "(1-t)^2"}}},
      {1, {"1", "1"}, {{"t^6", "(1+t)^6"}}},
      {2, {"t^8", "1"}, {{"1", "1-t"}, {"t^16", "1"}}},
      {2, {"-1", "-1"}, {{"t^8", "(1-t)^8"}}},
      {3, {"1", "1"}, {{"t", "t"}}},
      {3, {"t^3", "1"}, {{"1", "t^2"}}},
      {4, {"1", "t"}, {}},
      {4, {"t", "1"}, {{"t^2", "t^2"}}},
      {4, {"1", "1"}, {{"t", "1"}, {"1", "t"}}},
  };
  const auto fx = fixtures();
  for (const auto& c : cases) {
    const auto& f = fx[c.fixture];
    Instance s(f.phi, f.alpha);
    const std::uint32_t p = s.basis->p();
    PointRep R = s.rep(point(p, c.R));
    std::vector<TorusPoint> gens;
    for (const auto& g : c.H) gens.push_back(point(p, g));
    Subgroup H = s.subgroup(gens);
    Solution r = solve_coset(s.ctx, s.seqs, R, H);
    EXPECT_EQ(as_set(elements_upto(r.set, 500)), coset_oracle(s, R, H, 500)) << f.name << " -> " << format(r.set);
  }
}

TEST(ReductionProperty, ForbitMatchesOrbitScan) {
  std::mt19937_64 rng(92);
  const auto fx = fixtures();
  for (std::size_t fi : {1u, 2u}) {
    Instance s(fx[fi].phi, fx[fi].alpha);
    const std::uint32_t p = s.basis->p();
    PointRep R1 = s.rep(point(p, {"1/t", "1/(1-t)"}));
    PointRep R2 = s.rep(point(p, {"t", "1-t"}));
    Solution r = solve_forbit(s.ctx, s.seqs, R1, R2, 2);
    EXPECT_EQ(as_set(elements_upto(r.set, 500)), forbit_oracle(s, R1, R2, 2, 500)) << fx[fi].name;
  }
  int nonempty = 0;
  for (int it = 0; it < 30; ++it) {
    const std::uint32_t p = rng() % 2 ? 2 : 3;
    const long lambda = 1 + static_cast<long>(rng() % 2);
    const long a = 1 + static_cast<long>(rng() % 6), b = static_cast<long>(rng() % 4);
    const long c = static_cast<long>(rng() % 5) - 2, e = 1 + static_cast<long>(rng() % 2);
    const unsigned long k = rng() % 3;
    Instance s({square({{lambda, 0}, {0, lambda}}), point(p, mono(a))}, point(p, mono(b)));
    PointRep R1 = s.rep(point(p, mono(c)));
    PointRep R2 = s.rep(point(p, mono(e)));
    Solution r = solve_forbit(s.ctx, s.seqs, R1, R2, k);
    const long bound = lambda == 1 ? 500 : 60;
    if (!r.set.empty()) ++nonempty;
    EXPECT_EQ(as_set(elements_upto(r.set, bound)), forbit_oracle(s, R1, R2, k, bound))
        << "lambda=" << lambda << " a=" << a << " b=" << b << " c=" << c << " e=" << e << " k=" << k << " p=" << p
        << " -> " << format(r.set);
  }
  EXPECT_GE(nonempty, 8);
}

// Replacing every point by its inverse leaves the answer unchanged.
TEST(ReductionProperty, InverseInstanceAgrees) {
  std::mt19937_64 rng(93);
  for (int it = 0; it < 12; ++it) {
    const std::uint32_t p = rng() % 2 ? 2 : 3;
    const long a = 1 + static_cast<long>(rng() % 5), b = static_cast<long>(rng() % 3);
    const long c = static_cast<long>(rng() % 3) - 1, e = 1 + static_cast<long>(rng() % 2);
    Instance s({square({{1, 0}, {0, 1}}), point(p, mono(a))}, point(p, mono(b)));
    Instance inv({square({{1, 0}, {0, 1}}), point(p, mono(-a))}, point(p, mono(-b)));
    Solution x = solve_forbit(s.ctx, s.seqs, s.rep(point(p, mono(c))), s.rep(point(p, mono(e))), 1);
    Solution y = solve_forbit(inv.ctx, inv.seqs, negate(inv.rep(point(p, mono(c)))), negate(inv.rep(point(p, mono(e)))),
                              1);
    EXPECT_EQ(x.set, y.set);
  }
}
