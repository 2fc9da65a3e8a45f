#include "retset/seq_algebra.hpp"

#include <algorithm>
#include <numeric>

namespace retset {

namespace {

// Linear-time order computations below stay cheap up to this modulus.
const BigInt kMaxPeriodModulus = BigInt(1) << 26;

BigInt lcm(const BigInt& a, const BigInt& b) {
  BigInt r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

BigInt gcd(const BigInt& a, const BigInt& b) {
  BigInt r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

BigInt ratio_base(const PArithSeq& P) { return ipow(BigInt(P.p), P.k); }

Rational singleton_value(const PArithSeq& P) { return P.a == 0 ? P.b : P.a + P.b; }

bool is_natural(const Rational& x) { return is_integer(x) && x >= 0; }

// {P(r + T j) : j >= 0}
PArithSeq sub_sequence(const PArithSeq& P, unsigned long r, unsigned long T) {
  return {P.a * Rational(ipow(ratio_base(P), r)), P.b, P.k * T, P.p};
}

void check_prime(const PArithSeq& P) {
  if (!is_prime(P.p)) throw InputError("p-arithmetic sequence needs a prime p");
}

// The residues (A q^n + B) mod M are periodic from n0 = ceil(v_p(M) / k)
// with period ord_{M'}(q), M' the prime-to-p part of M.
struct Periodicity {
  unsigned long start = 0;
  unsigned long period = 1;
};

Periodicity periodicity(const BigInt& M, unsigned long p, unsigned long k) {
  const long e = valuation(M, p);
  const BigInt rest = strip_prime(M, p);
  if (rest > kMaxPeriodModulus) throw Error("modulus " + rest.get_str() + " too large for period computation");
  const BigInt T = multiplicative_order(ipow(BigInt(p), k), rest);
  return {static_cast<unsigned long>((e + static_cast<long>(k) - 1) / static_cast<long>(k)), T.get_ui()};
}

// pattern[i] = ((A q^(from + i) + B) mod M == 0) for 0 <= i < count
std::vector<bool> residue_pattern(const BigInt& A, const BigInt& B, const BigInt& M, const BigInt& q,
                                  unsigned long from, unsigned long count) {
  std::vector<bool> out(count);
  BigInt x = floor_mod(A, M);
  BigInt qm = floor_mod(q, M);
  BigInt step;
  mpz_powm_ui(step.get_mpz_t(), qm.get_mpz_t(), from, M.get_mpz_t());
  x = (x * step) % M;
  for (unsigned long i = 0; i < count; ++i) {
    out[i] = floor_mod(x + B, M) == 0;
    x = (x * qm) % M;
  }
  return out;
}

unsigned long cyclic_period(const std::vector<bool>& pattern) {
  const std::size_t T = pattern.size();
  for (std::size_t d = 1; d < T; ++d) {
    if (T % d != 0) continue;
    bool ok = true;
    for (std::size_t i = 0; i < T && ok; ++i) ok = pattern[i] == pattern[(i + d) % T];
    if (ok) return d;
  }
  return std::max<std::size_t>(T, 1);
}

BigInt common_denominator(const PArithSeq& P) { return lcm(P.a.get_den(), P.b.get_den()); }

// The n with (A q^n + B) = 0 mod M and P(n) >= lower, where A, B scale P by
// its common denominator.  P must be non-singleton.
IndexSet select(const PArithSeq& P, const BigInt& B, const BigInt& M, const Rational& lower) {
  IndexSet out;
  const BigInt D = common_denominator(P);
  const BigInt A = BigInt(P.a * Rational(D));
  const BigInt q = ratio_base(P);
  if (P.a < 0) {
    for (unsigned long n = 0;; ++n) {
      const Rational v = P.value(n);
      if (v < lower) break;
      if (residue_pattern(A, B, M, q, n, 1)[0]) out.finite.insert(BigInt(v));
    }
    return out;
  }
  unsigned long n1 = 0;
  while (P.value(n1) < lower) ++n1;
  const Periodicity per = periodicity(M, P.p, P.k);
  const unsigned long start = std::max(per.start, n1);
  if (start > 0) {
    auto head = residue_pattern(A, B, M, q, 0, start);
    for (unsigned long n = 0; n < start; ++n)
      if (head[n] && P.value(n) >= lower) out.finite.insert(BigInt(P.value(n)));
  }
  auto pattern = residue_pattern(A, B, M, q, start, per.period);
  const unsigned long T = cyclic_period(pattern);
  for (unsigned long i = 0; i < T; ++i)
    if (pattern[i]) out.parith.push_back(sub_sequence(P, start + i, T));
  return out;
}

std::vector<PArithSeq> sorted_unique(std::vector<PArithSeq> v) {
  std::sort(v.begin(), v.end(), [](const PArithSeq& x, const PArithSeq& y) {
    if (x.k != y.k) return x.k < y.k;
    if (x.a != y.a) return x.a < y.a;
    return x.b < y.b;
  });
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

void append(IndexSet& into, const IndexSet& from) {
  into.finite.insert(from.finite.begin(), from.finite.end());
  into.aps.insert(into.aps.end(), from.aps.begin(), from.aps.end());
  into.parith.insert(into.parith.end(), from.parith.begin(), from.parith.end());
}

// Both arguments clipped: a > 0, k > 0, integer values.
IndexSet intersect_clipped(const PArithSeq& P1, const PArithSeq& P2) {
  IndexSet out;
  const unsigned long p = P1.p;
  if (P1.b == P2.b) {
    auto e = exact_log(P2.a / P1.a, p);
    if (!e) return out;
    // a1 p^(k1 n) = a2 p^(k2 m)  <=>  k1 n - k2 m = e
    const long k1 = static_cast<long>(P1.k), k2 = static_cast<long>(P2.k);
    const long g = std::gcd(k1, k2);
    if (*e % g != 0) return out;
    const long stride = k2 / g;
    long n = *e > 0 ? (*e + k1 - 1) / k1 : 0;
    for (long i = 0; i < stride; ++i, ++n) {
      if ((k1 * n - *e) % k2 == 0) {
        out.parith.push_back(sub_sequence(P1, static_cast<unsigned long>(n), static_cast<unsigned long>(stride)));
        return out;
      }
    }
    return out;
  }
  // u1 p^X - u2 p^Y = c with p-adic units u1, u2: either min(X, Y) = v_p(c)
  // or X = Y and (u1 - u2) p^X = c.
  const Rational c = P2.b - P1.b;
  const long v1 = valuation(P1.a, p), v2 = valuation(P2.a, p), gamma = valuation(c, p);
  const Rational u1 = P1.a / rpow(Rational(p), v1), u2 = P2.a / rpow(Rational(p), v2);
  auto try_exponent = [&](const PArithSeq& P, long X, long v, const PArithSeq& other) {
    const long d = X - v;
    if (d < 0 || d % static_cast<long>(P.k) != 0) return;
    const Rational x = P.value(static_cast<unsigned long>(d / static_cast<long>(P.k)));
    if (is_natural(x) && member(other, BigInt(x))) out.finite.insert(BigInt(x));
  };
  try_exponent(P1, gamma, v1, P2);
  try_exponent(P2, gamma, v2, P1);
  if (u1 != u2) {
    const Rational t = c / (u1 - u2);
    if (t > 0) {
      if (auto X = exact_log(t, p)) try_exponent(P1, *X, v1, P2);
    }
  }
  return out;
}

bool clipped(const PArithSeq& P) {
  return P.a > 0 && P.k > 0 && contains(ArithProg{1, 0}, P);
}

// {m k + l + j m0} for j < m / m0 is {m0 k + l}; likewise for p-arithmetic
// components whose leading coefficients step by p^k0.
void merge_siblings(IndexSet& S) {
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < S.aps.size() && !changed; ++i) {
      const ArithProg A = S.aps[i];
      for (BigInt m0 = 1; m0 < A.m && !changed; ++m0) {
        if (A.m % m0 != 0) continue;
        std::vector<std::size_t> idx{i};
        for (BigInt l = A.l + m0; l < A.l + A.m; l += m0) {
          auto it = std::find(S.aps.begin(), S.aps.end(), ArithProg{A.m, l});
          if (it == S.aps.end()) break;
          idx.push_back(static_cast<std::size_t>(it - S.aps.begin()));
        }
        if (BigInt(static_cast<unsigned long>(idx.size())) * m0 != A.m) continue;
        std::sort(idx.rbegin(), idx.rend());
        for (auto j : idx) S.aps.erase(S.aps.begin() + static_cast<long>(j));
        S.aps.push_back({m0, A.l});
        changed = true;
      }
    }
    for (std::size_t i = 0; i < S.parith.size() && !changed; ++i) {
      const PArithSeq P = S.parith[i];
      for (unsigned long k0 = 1; k0 < P.k && !changed; ++k0) {
        if (P.k % k0 != 0) continue;
        const Rational step(ipow(BigInt(P.p), k0));
        std::vector<std::size_t> idx{i};
        Rational a = P.a;
        for (unsigned long j = 1; j < P.k / k0; ++j) {
          a *= step;
          auto it = std::find(S.parith.begin(), S.parith.end(), PArithSeq{a, P.b, P.k, P.p});
          if (it == S.parith.end()) break;
          idx.push_back(static_cast<std::size_t>(it - S.parith.begin()));
        }
        if (idx.size() * k0 != P.k) continue;
        std::sort(idx.rbegin(), idx.rend());
        for (auto j : idx) S.parith.erase(S.parith.begin() + static_cast<long>(j));
        S.parith.push_back({P.a, P.b, k0, P.p});
        changed = true;
      }
    }
  }
}

}  // namespace

Rational PArithSeq::value(unsigned long n) const {
  if (k == 0) return a + b;
  return a * Rational(ipow(ipow(BigInt(p), k), n)) + b;
}

IndexSet IndexSet::of(const ArithProg& ap) {
  if (ap.l < 0 || ap.m < 0) throw InputError("arithmetic progression with negative parameters");
  IndexSet s;
  if (ap.m == 0) {
    s.finite.insert(ap.l);
  } else {
    s.aps.push_back(ap);
  }
  return s;
}

IndexSet IndexSet::of_finite(std::set<BigInt> values) {
  if (!values.empty() && *values.begin() < 0) throw InputError("index sets hold nonnegative integers");
  IndexSet s;
  s.finite = std::move(values);
  return s;
}

bool member(const ArithProg& A, const BigInt& x) {
  if (A.m == 0) return x == A.l;
  return x >= A.l && floor_mod(x - A.l, A.m) == 0;
}

bool member(const PArithSeq& P, const BigInt& x) {
  if (P.is_singleton()) return singleton_value(P) == Rational(x);
  const Rational r = (Rational(x) - P.b) / P.a;
  auto e = exact_log(r, P.p);
  return e && *e >= 0 && *e % static_cast<long>(P.k) == 0;
}

bool member(const IndexSet& S, const BigInt& x) {
  if (S.finite.count(x)) return true;
  for (const auto& A : S.aps)
    if (member(A, x)) return true;
  for (const auto& P : S.parith)
    if (member(P, x)) return true;
  return false;
}

IndexSet clip_to_naturals(const PArithSeq& P) {
  check_prime(P);
  IndexSet out;
  if (P.is_singleton()) {
    const Rational v = singleton_value(P);
    if (is_natural(v)) out.finite.insert(BigInt(v));
    return out;
  }
  const BigInt D = common_denominator(P);
  const BigInt B = BigInt(P.b * Rational(D));
  out = select(P, B, D, 0);
  out.parith = sorted_unique(std::move(out.parith));
  return out;
}

IndexSet intersect(const ArithProg& A, const ArithProg& B) {
  IndexSet out;
  if (A.m == 0 || B.m == 0) {
    const ArithProg& single = A.m == 0 ? A : B;
    const ArithProg& other = A.m == 0 ? B : A;
    if (member(other, single.l)) out.finite.insert(single.l);
    return out;
  }
  const BigInt g = gcd(A.m, B.m);
  if (floor_mod(B.l - A.l, g) != 0) return out;
  // x = A.l + A.m t with A.m t = B.l - A.l (mod B.m)
  const BigInt mg = B.m / g;
  BigInt inv;
  const BigInt am = A.m / g;
  mpz_invert(inv.get_mpz_t(), am.get_mpz_t(), mg.get_mpz_t());
  if (mg == 1) inv = 0;
  const BigInt t = floor_mod(((B.l - A.l) / g) * inv, mg);
  const BigInt L = A.m * mg;
  BigInt x = A.l + A.m * t;
  const BigInt lo = std::max(A.l, B.l);
  if (x < lo) x += ceil_div(lo - x, L) * L;
  out.aps.push_back({L, x});
  return out;
}

IndexSet intersect_ap_parith(const ArithProg& A, const PArithSeq& P) {
  const IndexSet clipped_set = clip_to_naturals(P);
  IndexSet out;
  for (const auto& x : clipped_set.finite)
    if (member(A, x)) out.finite.insert(x);
  for (const auto& C : clipped_set.parith) {
    if (A.m == 0) {
      if (member(C, A.l)) out.finite.insert(A.l);
      continue;
    }
    const BigInt D = common_denominator(C);
    const BigInt B = BigInt(C.b * Rational(D)) - A.l * D;
    append(out, select(C, B, D * A.m, Rational(A.l)));
  }
  out.parith = sorted_unique(std::move(out.parith));
  return out;
}

IndexSet intersect_parith(const PArithSeq& P1, const PArithSeq& P2) {
  if (P1.p != P2.p) throw InputError("p-arithmetic sequences over different primes");
  const IndexSet S1 = clip_to_naturals(P1), S2 = clip_to_naturals(P2);
  IndexSet out;
  for (const auto& x : S1.finite)
    if (member(S2, x)) out.finite.insert(x);
  for (const auto& x : S2.finite)
    if (member(S1, x)) out.finite.insert(x);
  for (const auto& C1 : S1.parith)
    for (const auto& C2 : S2.parith) append(out, intersect_clipped(C1, C2));
  out.parith = sorted_unique(std::move(out.parith));
  return out;
}

IndexSet unite(const IndexSet& X, const IndexSet& Y) {
  IndexSet out = X;
  append(out, Y);
  return canonicalize(std::move(out));
}

IndexSet intersect(const IndexSet& X, const IndexSet& Y) {
  IndexSet out;
  for (const auto& x : X.finite)
    if (member(Y, x)) out.finite.insert(x);
  for (const auto& y : Y.finite)
    if (member(X, y)) out.finite.insert(y);
  for (const auto& A : X.aps) {
    for (const auto& B : Y.aps) append(out, intersect(A, B));
    for (const auto& Q : Y.parith) append(out, intersect_ap_parith(A, Q));
  }
  for (const auto& P : X.parith) {
    for (const auto& B : Y.aps) append(out, intersect_ap_parith(B, P));
    for (const auto& Q : Y.parith) append(out, intersect_parith(P, Q));
  }
  return canonicalize(std::move(out));
}

bool contains(const ArithProg& outer, const ArithProg& inner) {
  if (inner.m == 0) return member(outer, inner.l);
  if (outer.m == 0) return false;
  return inner.m % outer.m == 0 && member(outer, inner.l);
}

bool contains(const ArithProg& outer, const PArithSeq& inner) {
  if (inner.is_singleton()) {
    const Rational v = singleton_value(inner);
    return is_integer(v) && member(outer, BigInt(v));
  }
  if (outer.m == 0 || inner.a < 0) return false;
  if (inner.value(0) < Rational(outer.l)) return false;
  const BigInt D = common_denominator(inner);
  const BigInt M = D * outer.m;
  const Periodicity per = periodicity(M, inner.p, inner.k);
  const auto pattern = residue_pattern(BigInt(inner.a * Rational(D)), BigInt(inner.b * Rational(D)) - outer.l * D, M,
                                       ratio_base(inner), 0, per.start + per.period);
  return std::all_of(pattern.begin(), pattern.end(), [](bool b) { return b; });
}

bool contains(const PArithSeq& outer, const PArithSeq& inner) {
  if (inner.is_singleton()) {
    const Rational v = singleton_value(inner);
    return is_natural(v) && member(outer, BigInt(v));
  }
  if (outer.is_singleton() || outer.p != inner.p || outer.b != inner.b) return false;
  auto e = exact_log(inner.a / outer.a, outer.p);
  return e && *e >= 0 && *e % static_cast<long>(outer.k) == 0 && inner.k % outer.k == 0;
}

IndexSet canonicalize(IndexSet S) {
  IndexSet out;
  out.finite = S.finite;
  for (const auto& A : S.aps) {
    if (A.m == 0) {
      if (A.l >= 0) out.finite.insert(A.l);
    } else {
      out.aps.push_back(A);
    }
  }
  for (const auto& P : S.parith) {
    if (clipped(P)) {
      out.parith.push_back(P);
    } else {
      append(out, clip_to_naturals(P));
    }
  }
  merge_siblings(out);
  // Extend progressions backwards over finite elements.
  for (auto& A : out.aps) {
    while (A.l >= A.m && out.finite.count(A.l - A.m)) {
      out.finite.erase(A.l - A.m);
      A.l -= A.m;
    }
  }
  for (auto& P : out.parith) {
    const Rational q(ratio_base(P));
    for (;;) {
      const Rational prev = P.a / q + P.b;
      if (!is_natural(prev) || !out.finite.count(BigInt(prev)) || !clipped({P.a / q, P.b, P.k, P.p})) break;
      out.finite.erase(BigInt(prev));
      P.a /= q;
    }
  }

  std::sort(out.aps.begin(), out.aps.end(),
            [](const ArithProg& x, const ArithProg& y) { return x.m != y.m ? x.m < y.m : x.l < y.l; });
  out.aps.erase(std::unique(out.aps.begin(), out.aps.end()), out.aps.end());
  std::vector<ArithProg> aps;
  for (std::size_t i = 0; i < out.aps.size(); ++i) {
    bool covered = false;
    for (std::size_t j = 0; j < out.aps.size() && !covered; ++j)
      covered = j != i && contains(out.aps[j], out.aps[i]);
    if (!covered) aps.push_back(out.aps[i]);
  }
  out.aps = std::move(aps);

  out.parith = sorted_unique(std::move(out.parith));
  std::vector<PArithSeq> par;
  for (std::size_t i = 0; i < out.parith.size(); ++i) {
    bool covered = false;
    for (const auto& A : out.aps)
      if (!covered) covered = contains(A, out.parith[i]);
    for (std::size_t j = 0; j < out.parith.size() && !covered; ++j)
      covered = j != i && contains(out.parith[j], out.parith[i]);
    if (!covered) par.push_back(out.parith[i]);
  }
  out.parith = std::move(par);

  std::set<BigInt> finite;
  IndexSet infinite{{}, out.aps, out.parith};
  for (const auto& x : out.finite)
    if (x >= 0 && !member(infinite, x)) finite.insert(x);
  out.finite = std::move(finite);
  return out;
}

IndexSet affine_image(const IndexSet& S, const BigInt& scale, const BigInt& shift) {
  if (scale < 1 || shift < 0) throw Error("affine image needs scale >= 1 and shift >= 0");
  IndexSet out;
  for (const auto& x : S.finite) out.finite.insert(scale * x + shift);
  for (const auto& A : S.aps) out.aps.push_back({scale * A.m, scale * A.l + shift});
  for (const auto& P : S.parith)
    out.parith.push_back({P.a * Rational(scale), P.b * Rational(scale) + Rational(shift), P.k, P.p});
  return out;
}

std::vector<BigInt> elements_upto(const IndexSet& S, const BigInt& bound) {
  std::set<BigInt> out;
  for (const auto& x : S.finite) {
    if (x > bound) break;
    out.insert(x);
  }
  for (const auto& A : S.aps) {
    if (A.m == 0) {
      if (A.l <= bound) out.insert(A.l);
      continue;
    }
    for (BigInt x = A.l; x <= bound; x += A.m) out.insert(x);
  }
  for (const auto& P : S.parith) {
    if (P.is_singleton()) {
      const Rational v = singleton_value(P);
      if (is_natural(v) && v <= Rational(bound)) out.insert(BigInt(v));
      continue;
    }
    for (unsigned long n = 0;; ++n) {
      const Rational v = P.value(n);
      if (P.a > 0 && v > Rational(bound)) break;
      if (P.a < 0 && v < 0) break;
      if (is_natural(v) && v <= Rational(bound)) out.insert(BigInt(v));
    }
  }
  return {out.begin(), out.end()};
}

bool equality_up_to(const IndexSet& X, const IndexSet& Y, const BigInt& bound) {
  return elements_upto(X, bound) == elements_upto(Y, bound);
}

std::string format(const ArithProg& A) {
  if (A.m == 0) return "{" + A.l.get_str() + "}";
  std::string s = "{";
  if (A.m != 1) s += A.m.get_str();
  s += "k";
  if (A.l != 0) s += " + " + A.l.get_str();
  return s + "}";
}

std::string format(const PArithSeq& P) {
  if (P.is_singleton()) return "{" + to_string(singleton_value(P)) + "}";
  std::string s = "{";
  if (P.a != 1) s += to_string(P.a) + "*";
  s += ratio_base(P).get_str() + "^n";
  if (P.b > 0) s += " + " + to_string(P.b);
  if (P.b < 0) s += " - " + to_string(Rational(-P.b));
  return s + "}";
}

std::string format(const IndexSet& S) {
  std::vector<std::string> parts;
  if (!S.finite.empty()) {
    std::string s = "{";
    bool first = true;
    for (const auto& x : S.finite) {
      if (!first) s += ", ";
      s += x.get_str();
      first = false;
    }
    parts.push_back(s + "}");
  }
  for (const auto& A : S.aps) parts.push_back(format(A));
  for (const auto& P : S.parith) parts.push_back(format(P));
  if (parts.empty()) return "{}";
  std::string out = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) out += " U " + parts[i];
  return out;
}

}  // namespace retset
