#include "retset/qpoly.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace retset;

namespace {

QPoly from_roots(const std::vector<Rational>& roots) {
  QPoly f = QPoly::constant(1);
  for (const auto& r : roots) f = f * QPoly::linear_root(r);
  return f;
}

Rational random_rational(std::mt19937_64& rng, long range, long den) {
  Rational r(static_cast<long>(rng() % (2 * range + 1)) - range, 1 + static_cast<long>(rng() % den));
  r.canonicalize();
  return r;
}

}  // namespace

TEST(QPoly, Cyclotomics) {
  EXPECT_EQ(cyclotomic(1), QPoly({-1, 1}));
  EXPECT_EQ(cyclotomic(2), QPoly({1, 1}));
  EXPECT_EQ(cyclotomic(4), QPoly({1, 0, 1}));
  EXPECT_EQ(cyclotomic(6), QPoly({1, -1, 1}));
  EXPECT_EQ(cyclotomic(12), QPoly({1, 0, -1, 0, 1}));
  for (unsigned long n = 1; n <= 40; ++n) {
    QPoly prod = QPoly::constant(1);
    for (unsigned long d = 1; d <= n; ++d)
      if (n % d == 0) prod = prod * cyclotomic(d);
    std::vector<Rational> c(n + 1);
    c[0] = -1;
    c[n] = 1;
    EXPECT_EQ(prod, QPoly(c));
    EXPECT_EQ(cyclotomic(n).degree(), static_cast<long>(euler_phi(n)));
  }
}

TEST(QPoly, CyclotomicSplit) {
  // x^2 (x - 1)^2 (x^2 + 1) (x - 3)
  QPoly f = QPoly::x() * QPoly::x() * pow(cyclotomic(1), 2) * cyclotomic(4) * QPoly::linear_root(3);
  auto s = split_cyclotomic(f);
  EXPECT_EQ(s.x_power, 2u);
  ASSERT_EQ(s.factors.size(), 2u);
  EXPECT_EQ(s.factors[0], std::make_pair(1ul, 2ul));
  EXPECT_EQ(s.factors[1], std::make_pair(4ul, 1ul));
  EXPECT_EQ(s.residual, QPoly::linear_root(3));
}

TEST(QPoly, RealRoots) {
  QPoly f = from_roots({1, 2, -3, Rational(1, 2)});
  EXPECT_EQ(count_real_roots(f, -10, 10), 4);
  EXPECT_EQ(count_real_roots(f, 0, 1), 2);  // 1/2 and 1 in (0, 1]
  auto iv = isolate_real_roots(f, Rational(1, 100));
  ASSERT_EQ(iv.size(), 4u);
  std::vector<Rational> roots{-3, Rational(1, 2), 1, 2};
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_LT(iv[i].first, roots[i]);
    EXPECT_GE(iv[i].second, roots[i]);
    EXPECT_LE(iv[i].second - iv[i].first, Rational(1, 100));
  }
  auto ints = integer_roots(f * QPoly({2, 0, 1}));
  EXPECT_EQ(ints, (std::vector<BigInt>{-3, 1, 2}));
}

TEST(QPolyProperty, SchurCohnMatchesRoots) {
  std::mt19937_64 rng(41);
  int decided = 0;
  for (int it = 0; it < 300; ++it) {
    std::vector<Rational> roots;
    const int n = 1 + static_cast<int>(rng() % 5);
    for (int i = 0; i < n; ++i) roots.push_back(random_rational(rng, 9, 4));
    QPoly f = from_roots(roots);
    // Add a complex pair a +- bi with |.|^2 = a^2 + b^2.
    Rational a = random_rational(rng, 3, 3), b2 = Rational(1 + static_cast<long>(rng() % 9), 4);
    f = f * QPoly({a * a + b2, -2 * a, 1});
    long expected = 0;
    bool on_circle = a * a + b2 == 1;
    for (const auto& r : roots) {
      if (abs(r) < 1) ++expected;
      if (abs(r) == 1) on_circle = true;
    }
    if (a * a + b2 < 1) expected += 2;
    auto got = roots_inside_unit_disk(f);
    if (on_circle) {
      EXPECT_FALSE(got.has_value());
    } else if (got) {
      ++decided;
      EXPECT_EQ(*got, expected);
    }
  }
  EXPECT_GT(decided, 150);
}

TEST(QPolyProperty, ResultantEvaluatesAtRoot) {
  std::mt19937_64 rng(42);
  for (int it = 0; it < 100; ++it) {
    Rational a = random_rational(rng, 5, 3);
    std::vector<Rational> c(1 + rng() % 5);
    for (auto& x : c) x = random_rational(rng, 5, 3);
    QPoly g(c);
    if (g.is_zero()) continue;
    EXPECT_EQ(resultant(QPoly::linear_root(a), g), evaluate(g, a));
  }
  // Product of (a^2 - 3) over the roots a of x^2 - 2 is (-1)^2.
  EXPECT_EQ(resultant(QPoly({-2, 0, 1}), QPoly({-3, 0, 1})), 1);
}

TEST(QPolyProperty, IntervalsEncloseExactValues) {
  std::mt19937_64 rng(43);
  for (int it = 0; it < 200; ++it) {
    Rational x = random_rational(rng, 20, 7), y = random_rational(rng, 20, 7);
    Interval X = round_out(Interval::point(x), 10), Y = round_out(Interval::point(y), 10);
    Interval P = round_out(X * Y, 10), S = round_out(X - Y, 10);
    EXPECT_LE(P.lo, x * y);
    EXPECT_GE(P.hi, x * y);
    EXPECT_LE(S.lo, x - y);
    EXPECT_GE(S.hi, x - y);
    if (y != 0 && (Y.lo > 0 || Y.hi < 0)) {
      Interval Q = inverse(Y);
      EXPECT_LE(Q.lo, 1 / y);
      EXPECT_GE(Q.hi, 1 / y);
    }
  }
}
