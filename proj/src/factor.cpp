#include "retset/fp_poly.hpp"

#include <algorithm>
#include <map>

namespace retset {

namespace {

// The p-th root of a polynomial whose derivative vanishes.
FpPoly pth_root(const FpPoly& f) {
  const std::uint32_t p = f.p();
  std::vector<std::uint32_t> v(static_cast<std::size_t>(f.degree()) / p + 1, 0);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = f[i * p];
  return FpPoly(p, v);
}

void squarefree(const FpPoly& f, unsigned long mult,
                std::vector<std::pair<FpPoly, unsigned long>>& out) {
  const std::uint32_t p = f.p();
  FpPoly c = gcd(f, derivative(f));
  FpPoly w = f / c;
  unsigned long i = 1;
  while (!w.is_one()) {
    FpPoly y = gcd(w, c);
    FpPoly fac = w / y;
    if (!fac.is_one()) out.emplace_back(monic(fac), i * mult);
    w = y;
    c = c / y;
    ++i;
  }
  if (c.degree() > 0) squarefree(monic(pth_root(c)), mult * p, out);
}

std::vector<std::pair<FpPoly, unsigned>> distinct_degree(FpPoly f) {
  const std::uint32_t p = f.p();
  std::vector<std::pair<FpPoly, unsigned>> out;
  const FpPoly x = FpPoly::variable(p);
  FpPoly h = x % f;
  for (unsigned i = 1; f.degree() >= 2 * static_cast<long>(i); ++i) {
    h = powmod(h, BigInt(p), f);
    FpPoly g = gcd(f, h - x);
    if (!g.is_one()) {
      out.emplace_back(g, i);
      f = f / g;
      h = h % f;
    }
  }
  if (f.degree() > 0) out.emplace_back(monic(f), static_cast<unsigned>(f.degree()));
  return out;
}

void equal_degree(const FpPoly& g, unsigned d, std::mt19937_64& rng, std::vector<FpPoly>& out) {
  if (g.degree() == static_cast<long>(d)) {
    out.push_back(g);
    return;
  }
  const std::uint32_t p = g.p();
  const BigInt half = (ipow(BigInt(p), d) - 1) / 2;
  while (true) {
    std::vector<std::uint32_t> v(static_cast<std::size_t>(g.degree()));
    for (auto& c : v) c = static_cast<std::uint32_t>(rng() % p);
    FpPoly a(p, v);
    if (a.degree() < 1) continue;
    FpPoly b(p);
    if (p == 2) {
      FpPoly term = a;
      for (unsigned i = 0; i < d; ++i) {
        b = b + term;
        term = (term * term) % g;
      }
    } else {
      b = powmod(a, half, g) - FpPoly::constant(p, 1);
    }
    FpPoly u = gcd(g, b);
    if (u.degree() > 0 && u.degree() < g.degree()) {
      equal_degree(u, d, rng, out);
      equal_degree(monic(g / u), d, rng, out);
      return;
    }
  }
}

}  // namespace

Factorization factor(const FpPoly& f, std::uint64_t seed) {
  if (f.is_zero()) throw InputError("cannot factor the zero polynomial");
  Factorization result;
  result.unit = f.lead();
  if (f.degree() == 0) return result;
  std::mt19937_64 rng(seed);
  std::vector<std::pair<FpPoly, unsigned long>> parts;
  squarefree(monic(f), 1, parts);
  std::map<FpPoly, unsigned long> merged;
  for (const auto& [part, mult] : parts) {
    for (const auto& [g, d] : distinct_degree(part)) {
      std::vector<FpPoly> irreducibles;
      equal_degree(g, d, rng, irreducibles);
      for (const auto& q : irreducibles) merged[q] += mult;
    }
  }
  result.factors.assign(merged.begin(), merged.end());
  return result;
}

FpPoly expand(const Factorization& fac, std::uint32_t p) {
  FpPoly r = FpPoly::constant(p, fac.unit);
  for (const auto& [g, e] : fac.factors) r = r * pow(g, BigInt(e));
  return r;
}

bool is_irreducible(const FpPoly& f) {
  if (f.degree() < 1) return false;
  if (f.degree() == 1) return true;
  const std::uint32_t p = f.p();
  const FpPoly m = monic(f);
  const auto n = static_cast<unsigned long>(m.degree());
  const FpPoly x = FpPoly::variable(p);
  // frob[i] = t^(p^i) mod m
  std::vector<FpPoly> frob{x % m};
  for (unsigned long i = 1; i <= n; ++i) frob.push_back(powmod(frob.back(), BigInt(p), m));
  if (!(frob[n] == x % m)) return false;
  for (unsigned long q : prime_factors(n)) {
    if (!gcd(m, frob[n / q] - x).is_one()) return false;
  }
  return true;
}

BigInt count_irreducible(std::uint32_t p, unsigned d) {
  if (d == 0) throw Error("irreducible count needs degree >= 1");
  auto mobius = [](unsigned n) {
    int mu = 1;
    for (unsigned q = 2; q * q <= n; ++q) {
      if (n % q == 0) {
        n /= q;
        if (n % q == 0) return 0;
        mu = -mu;
      }
    }
    if (n > 1) mu = -mu;
    return mu;
  };
  BigInt total = 0;
  for (unsigned e = 1; e <= d; ++e)
    if (d % e == 0) total += mobius(d / e) * ipow(BigInt(p), e);
  return total / d;
}

FpPoly random_monic(std::uint32_t p, unsigned degree, std::mt19937_64& rng) {
  std::vector<std::uint32_t> v(degree + 1);
  for (unsigned i = 0; i < degree; ++i) v[i] = static_cast<std::uint32_t>(rng() % p);
  v[degree] = 1;
  return FpPoly(p, v);
}

FpPoly random_irreducible(std::uint32_t p, unsigned degree, std::mt19937_64& rng) {
  if (degree == 0) throw Error("irreducible polynomials have degree >= 1");
  while (true) {
    FpPoly f = random_monic(p, degree, rng);
    if (is_irreducible(f)) return f;
  }
}

}  // namespace retset
