#include "retset/lattice.hpp"
#include "retset/parse.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace retset;

namespace {

IntMatrix int_matrix(std::initializer_list<std::initializer_list<long>> rows) {
  IntMatrix M(static_cast<Eigen::Index>(rows.size()),
              static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& r : rows) {
    Eigen::Index j = 0;
    for (long x : r) M(i, j++) = x;
    ++i;
  }
  return M;
}

PointRep rep(std::vector<long> tors, std::initializer_list<std::initializer_list<long>> expo) {
  PointRep r;
  r.tors = IntVector(static_cast<Eigen::Index>(tors.size()));
  for (std::size_t i = 0; i < tors.size(); ++i) r.tors(static_cast<Eigen::Index>(i)) = tors[i];
  r.expo = int_matrix(expo);
  return r;
}

FpRational random_function(std::uint32_t p, std::mt19937_64& rng) {
  auto poly = [&] {
    while (true) {
      std::vector<std::uint32_t> c(1 + rng() % 7);
      for (auto& x : c) x = static_cast<std::uint32_t>(rng() % p);
      FpPoly f(p, c);
      if (!f.is_zero()) return f;
    }
  };
  return FpRational(poly(), poly());
}

}  // namespace

TEST(Lattice, EncodeExamples) {
  SupportBasis basis(3);
  basis.add(FpPoly::variable(3));
  basis.add(FpPoly(3, {2, 1}));
  EXPECT_EQ(basis.torsion_generator(), 2u);
  PointRep r = encode({parse_function("t/(1-t)", 3)}, basis);
  EXPECT_EQ(r.tors(0), 1);
  EXPECT_EQ(r.expo, int_matrix({{1, -1}}));
  EXPECT_EQ(decode(r, basis)[0], parse_function("t/(1-t)", 3));

  SupportBasis b2(2);
  PointRep one = encode({FpRational::constant(2, 1), FpRational::constant(2, 1)}, b2);
  EXPECT_TRUE(one.tors.isZero());
  EXPECT_EQ(one.expo.cols(), 0);
  PointRep tt = encode({parse_function("t", 2), parse_function("t^2", 2)}, b2);
  EXPECT_EQ(tt.expo, int_matrix({{1}, {2}}));
  EXPECT_EQ(decode(rep({0}, {{2}}), b2)[0], parse_function("t^2", 2));
  EXPECT_THROW(encode({FpRational::constant(2, 0)}, b2), InputError);
}

TEST(Lattice, MemberCosetExamples) {
  // Torsion-free part only: p = 2 has a trivial unit group.
  Subgroup H({rep({0, 0}, {{2}, {0}}), rep({0, 0}, {{0}, {3}})}, 2, 1, 2);
  auto w = member_coset(rep({0, 0}, {{4}, {6}}), zero_rep(2, 1), H);
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ((*w)(0), 2);
  EXPECT_EQ((*w)(1), 2);
  EXPECT_FALSE(member_coset(rep({0, 0}, {{1}, {0}}), zero_rep(2, 1), H));

  // p = 5: torsion projection {0, 2} mod 4.
  Subgroup T({rep({2}, {{0}})}, 1, 1, 5);
  EXPECT_FALSE(member_coset(rep({3}, {{0}}), zero_rep(1, 1), T));
  EXPECT_TRUE(member_coset(rep({6}, {{0}}), zero_rep(1, 1), T));
}

TEST(Lattice, SmithFormIsValid) {
  std::mt19937_64 rng(31);
  for (int it = 0; it < 200; ++it) {
    IntMatrix A(1 + rng() % 4, 1 + rng() % 4);
    for (Eigen::Index i = 0; i < A.size(); ++i) A(i) = static_cast<long>(rng() % 13) - 6;
    SmithForm s = smith_normal_form(A);
    IntMatrix D = s.U * A * s.V;
    for (Eigen::Index i = 0; i < D.rows(); ++i)
      for (Eigen::Index j = 0; j < D.cols(); ++j) {
        if (i == j && i < s.rank) {
          EXPECT_EQ(D(i, j), s.diag[static_cast<std::size_t>(i)]);
          EXPECT_GT(D(i, j), 0);
          if (i + 1 < s.rank) EXPECT_EQ(s.diag[i + 1] % s.diag[i], 0);
        } else {
          EXPECT_EQ(D(i, j), 0);
        }
      }
    EXPECT_EQ(abs(determinant(to_rational(s.U))), 1);
    EXPECT_EQ(abs(determinant(to_rational(s.V))), 1);
  }
}

TEST(LatticeProperty, EncodeDecodeRoundTripAndHomomorphism) {
  std::mt19937_64 rng(32);
  for (std::uint32_t p : {2u, 3u, 5u}) {
    SupportBasis basis(p);
    for (int it = 0; it < 170; ++it) {
      TorusPoint P{random_function(p, rng), random_function(p, rng)};
      TorusPoint Q{random_function(p, rng), random_function(p, rng)};
      PointRep a = encode(P, basis);
      EXPECT_EQ(decode(a, basis), P);
      PointRep b = encode(Q, basis);
      TorusPoint PQ{P[0] * Q[0], P[1] * Q[1]};
      PointRep c = encode(PQ, basis);
      EXPECT_TRUE(same_point(c, a + b, p));
    }
  }
}

TEST(LatticeProperty, MembershipAgreesWithEnumeration) {
  std::mt19937_64 rng(33);
  for (int it = 0; it < 60; ++it) {
    const std::uint32_t p = std::vector<std::uint32_t>{2, 3, 5, 7}[rng() % 4];
    const std::size_t n = 1 + rng() % 2, s = 1 + rng() % 2, g = 1 + rng() % 3;
    std::vector<PointRep> gens;
    for (std::size_t j = 0; j < g; ++j) {
      PointRep r = zero_rep(n, s);
      for (Eigen::Index i = 0; i < r.tors.size(); ++i) r.tors(i) = static_cast<long>(rng() % (p - 1));
      for (Eigen::Index i = 0; i < r.expo.size(); ++i) r.expo(i) = static_cast<long>(rng() % 7) - 3;
      gens.push_back(r);
    }
    Subgroup H(gens, n, s, p);
    // Oracle: all combinations with coefficients in [-8, 8], torsion reduced.
    std::set<std::vector<long>> members;
    std::vector<long> coef(g, -8);
    while (true) {
      PointRep sum = zero_rep(n, s);
      for (std::size_t j = 0; j < g; ++j) sum = sum + BigInt(coef[j]) * gens[j];
      sum = normalize(sum, p);
      IntVector f = flatten(sum);
      std::vector<long> key;
      for (Eigen::Index i = 0; i < f.size(); ++i) key.push_back(f(i).get_si());
      members.insert(key);
      std::size_t k = 0;
      while (k < g && ++coef[k] > 8) coef[k++] = -8;
      if (k == g) break;
    }
    for (int q = 0; q < 400; ++q) {
      PointRep v = zero_rep(n, s);
      for (Eigen::Index i = 0; i < v.tors.size(); ++i) v.tors(i) = static_cast<long>(rng() % (p - 1));
      for (Eigen::Index i = 0; i < v.expo.size(); ++i) v.expo(i) = static_cast<long>(rng() % 13) - 6;
      if (q % 2 == 0) {
        // Bias half the queries towards genuine members.
        auto it = members.begin();
        std::advance(it, static_cast<long>(rng() % members.size()));
        IntVector f(static_cast<Eigen::Index>(it->size()));
        for (std::size_t i = 0; i < it->size(); ++i) f(static_cast<Eigen::Index>(i)) = (*it)[i];
        v.tors = f.head(static_cast<Eigen::Index>(n));
        for (std::size_t i = 0; i < n; ++i)
          v.expo.row(static_cast<Eigen::Index>(i)) =
              f.segment(static_cast<Eigen::Index>(n + i * s), static_cast<Eigen::Index>(s)).transpose();
      }
      IntVector f = flatten(v);
      std::vector<long> key;
      for (Eigen::Index i = 0; i < f.size(); ++i) key.push_back(f(i).get_si());
      auto witness = member_coset(v, zero_rep(n, s), H);
      if (members.count(key)) {
        EXPECT_TRUE(witness.has_value());
      }
      if (witness) {
        PointRep sum = zero_rep(n, s);
        for (std::size_t j = 0; j < g; ++j) sum = sum + (*witness)(static_cast<Eigen::Index>(j)) * gens[j];
        EXPECT_TRUE(same_point(sum, v, p));
      }
    }
  }
}
