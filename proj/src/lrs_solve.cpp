#include "retset/lrs.hpp"

#include <cmath>
#include <functional>
#include <numeric>

namespace retset {

namespace {

constexpr unsigned kBits = 96;
// Cutoffs beyond this many terms fall back to bounded search.
constexpr unsigned long kMaxCutoff = 20000;

Interval rnd(const Interval& x) { return round_out(x, kBits); }
Interval pt(const Rational& x) { return Interval::point(x); }

// Lower bound of |x| over the interval.
Rational mignitude(const Interval& x) {
  if (x.lo > 0) return x.lo;
  if (x.hi < 0) return -x.hi;
  return 0;
}

bool contains_zero(const Interval& x) { return x.lo <= 0 && x.hi >= 0; }

long ceil_div_long(long a, long b) { return a >= 0 ? (a + b - 1) / b : -((-a) / b); }

int sign(const Rational& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

// Shrinks an isolating interval (lo, hi] of a simple root of h.
Interval refine(const QPoly& h, Interval r, unsigned bits) {
  if (evaluate(h, r.hi) == 0) return pt(r.hi);
  const int slo = sign(evaluate(h, r.lo));
  const Rational width(1, ipow(BigInt(2), bits));
  while (r.hi - r.lo > width) {
    const Rational mid = (r.lo + r.hi) / 2;
    const int s = sign(evaluate(h, mid));
    if (s == 0) return pt(mid);
    if (s == slo) {
      r.lo = mid;
    } else {
      r.hi = mid;
    }
  }
  return r;
}

Interval horner(const std::vector<Interval>& c, const Interval& x) {
  Interval acc = pt(0);
  for (std::size_t i = c.size(); i-- > 0;) acc = rnd(acc * x + c[i]);
  return acc;
}

// n0 such that s_n != 0 for every n >= n0, from s_n = alpha r^n + e_n with
// |e_n| <= K sigma^n |E_0|.
std::optional<unsigned long> certified_cutoff(const Lrs& s, const DominantRoot& dom) {
  const std::size_t d = s.order();
  const QPoly h = characteristic_polynomial(s);
  const Interval r = refine(h, dom.root, kBits);
  std::vector<Interval> q(d);
  q[d - 1] = pt(1);
  for (std::size_t i = d - 1; i >= 1; --i) q[i - 1] = rnd(pt(h[i]) + r * q[i]);
  Interval t0 = pt(0);
  for (std::size_t i = 0; i < d; ++i) t0 = rnd(t0 + q[i] * pt(s.init[i]));
  std::vector<Interval> dh;
  for (std::size_t i = 1; i <= d; ++i) dh.push_back(pt(Rational(static_cast<unsigned long>(i)) * h[i]));
  const Interval hp = horner(dh, r);
  if (contains_zero(hp)) return std::nullopt;
  const Interval alpha = rnd(t0 * inverse(hp));
  if (contains_zero(alpha)) return std::nullopt;
  if (d == 1) return 0;

  const std::size_t k = d - 1;
  Rational E = 0;
  Interval power = pt(1);
  for (std::size_t i = 0; i < k; ++i) {
    E = std::max(E, rnd(pt(s.init[i]) - alpha * power).magnitude());
    power = rnd(power * r);
  }
  // Companion matrix of q, powered until its norm drops below sigma^N.
  using IMatrix = std::vector<std::vector<Interval>>;
  IMatrix B(k, std::vector<Interval>(k, pt(0)));
  for (std::size_t i = 0; i + 1 < k; ++i) B[i][i + 1] = pt(1);
  for (std::size_t j = 0; j < k; ++j) B[k - 1][j] = rnd(pt(0) - q[j]);
  IMatrix P(k, std::vector<Interval>(k, pt(0)));
  for (std::size_t i = 0; i < k; ++i) P[i][i] = pt(1);
  Rational K = 1, sigma_pow = 1;
  bool found = false;
  for (int step = 1; step <= 400 && !found; ++step) {
    IMatrix next(k, std::vector<Interval>(k, pt(0)));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j)
        for (std::size_t l = 0; l < k; ++l) next[i][j] = rnd(next[i][j] + P[i][l] * B[l][j]);
    P = std::move(next);
    sigma_pow *= dom.sigma;
    Rational norm = 0;
    for (const auto& row : P) {
      Rational sum = 0;
      for (const auto& x : row) sum += x.magnitude();
      norm = std::max(norm, sum);
    }
    if (norm < sigma_pow) {
      found = true;
    } else {
      K = std::max(K, Rational(norm / sigma_pow));
    }
  }
  if (!found) return std::nullopt;

  const Rational rlo = mignitude(r), alo = mignitude(alpha);
  if (rlo <= dom.sigma) return std::nullopt;
  const Rational ratio = rlo / dom.sigma, target = K * E / alo;
  if (target < 1) return 0;
  const double guess = std::log(target.get_d()) / std::log(ratio.get_d());
  unsigned long n0 = std::isfinite(guess) && guess > 0 ? static_cast<unsigned long>(guess) : 0;
  if (n0 > kMaxCutoff) return std::nullopt;
  while (rpow(ratio, static_cast<long>(n0)) <= target) {
    if (++n0 > kMaxCutoff) return std::nullopt;
  }
  return n0;
}

struct Transient {
  unsigned long z = 0;  // s_n = tail_{n - z} for n >= z
  std::vector<Rational> head;
  Lrs tail;
};

Transient strip_transient(const Lrs& s) {
  QPoly h = characteristic_polynomial(s);
  Transient out;
  while (h.degree() > 0 && h[0] == 0) {
    h = h / QPoly::x();
    ++out.z;
  }
  const auto t = terms(s, out.z + static_cast<std::size_t>(h.degree()));
  out.head.assign(t.begin(), t.begin() + static_cast<long>(out.z));
  out.tail = from_polynomial(h, std::vector<Rational>(t.begin() + static_cast<long>(out.z), t.end()));
  return out;
}

// Number of section indices n with n M + l <= bound.
unsigned long section_count(const BigInt& bound, unsigned long M, unsigned long l) {
  if (bound < l) return 0;
  const BigInt q = (bound - l) / M;
  return q.get_ui() + 1;
}

std::string section_name(unsigned long M, unsigned long l) {
  return M == 1 ? "sequence" : "section n = " + std::to_string(l) + " mod " + std::to_string(M);
}

QPoly polynomial_part(const Lrs& tail) {
  std::vector<Rational> xs;
  for (std::size_t i = 0; i < tail.order(); ++i) xs.emplace_back(static_cast<unsigned long>(i));
  return interpolate(xs, tail.init);
}

bool is_polynomial_recurrence(const QPoly& h) {
  const CyclotomicSplit split = split_cyclotomic(h);
  return split.x_power == 0 && split.residual.degree() == 0 && split.factors.size() == 1 &&
         split.factors[0].first == 1;
}

// Zeros of a section, as section indices.
Solution section_zeros(const Lrs& s, unsigned long M, unsigned long l, const SearchBounds& bounds) {
  Solution out;
  if (s.order() == 0) {
    out.set = IndexSet::all();
    return out;
  }
  const Transient tr = strip_transient(s);
  for (unsigned long n = 0; n < tr.z; ++n)
    if (tr.head[n] == 0) out.set.finite.insert(n);
  const Lrs& tail = tr.tail;
  const BigInt z(tr.z);
  if (tail.order() == 0) {
    out.set.aps.push_back({1, z});
    return out;
  }
  const QPoly h = characteristic_polynomial(tail);
  if (is_polynomial_recurrence(h)) {
    for (const auto& x : integer_roots(polynomial_part(tail)))
      if (x >= 0) out.set.finite.insert(x + z);
    return out;
  }
  if (auto dom = dominant_root(h)) {
    if (auto n0 = certified_cutoff(tail, *dom)) {
      const auto t = terms(tail, *n0);
      for (unsigned long n = 0; n < *n0; ++n)
        if (t[n] == 0) out.set.finite.insert(BigInt(n) + z);
      return out;
    }
  }
  const unsigned long count = section_count(bounds.n, M, l);
  if (count > tr.z) {
    const auto t = terms(tail, count - tr.z);
    for (unsigned long n = 0; n < t.size(); ++n)
      if (t[n] == 0) out.set.finite.insert(BigInt(n) + z);
  }
  out.status = CertStatus::verified(bounds.n, section_name(M, l) + ": no dominant root certificate");
  return out;
}

// {n = alpha p^i + c : i >= i_lo, n a natural number, pred(i, n)}, where
// for i >= settle pred depends only on i mod i_period and n mod n_mod.
IndexSet power_family(const Rational& alpha, const Rational& c, unsigned long p, long i_lo, long settle,
                      unsigned long i_period, const BigInt& n_mod,
                      const std::function<bool(long, const BigInt&)>& pred) {
  IndexSet out;
  const Rational P(p);
  auto n_at = [&](long i) -> Rational { return alpha * rpow(P, i) + c; };
  auto ok = [&](long i, const Rational& n) { return is_integer(n) && n >= 0 && pred(i, BigInt(n)); };
  if (alpha == 0) throw Error("power family with zero coefficient");
  if (alpha < 0) {
    for (long i = i_lo;; ++i) {
      const Rational n = n_at(i);
      if (n < 0) break;
      if (ok(i, n)) out.finite.insert(BigInt(n));
    }
    return out;
  }
  BigInt D;
  mpz_lcm(D.get_mpz_t(), alpha.get_den().get_mpz_t(), c.get_den().get_mpz_t());
  const BigInt modulus = D * n_mod;
  const long e0 = valuation(modulus, p);
  const BigInt T0 = multiplicative_order(BigInt(p), strip_prime(modulus, p));
  const unsigned long T = std::lcm(T0.get_ui(), std::max<unsigned long>(i_period, 1));
  long start = std::max({i_lo, settle, e0, 0L});
  while (n_at(start) < 0) ++start;
  for (long i = i_lo; i < start; ++i) {
    const Rational n = n_at(i);
    if (ok(i, n)) out.finite.insert(BigInt(n));
  }
  for (long i = start; i < start + static_cast<long>(T); ++i) {
    const Rational n = n_at(i);
    if (ok(i, n)) out.parith.push_back({n - c, c, T, p});
  }
  return out;
}

// Smallest i with |w| p^i >= 1/den: below it w p^i + c cannot be an integer
// other than c itself.
long integrality_floor(const Rational& w, const Rational& c, unsigned long p) {
  const Rational need(1, c.get_den());
  long i = 0;
  while (abs(w) * rpow(Rational(p), i) >= need) --i;
  while (abs(w) * rpow(Rational(p), i) < need) ++i;
  return i;
}

// Q = A (x - c)^d with d = deg Q >= 1.
struct PowerShape {
  Rational A, c;
  unsigned long d = 0;
};

std::optional<PowerShape> power_shape(const QPoly& Q) {
  const long d = Q.degree();
  if (d < 1) return std::nullopt;
  const Rational A = Q.lead();
  const Rational c = -Q[static_cast<std::size_t>(d - 1)] / (Rational(d) * A);
  if (A * pow(QPoly::linear_root(c), static_cast<unsigned long>(d)) != Q) return std::nullopt;
  return PowerShape{A, c, static_cast<unsigned long>(d)};
}

// Solutions y of y^d = tau p^e with y = s w p^((e + v) / d), as the pairs
// (s w, v) where v = v_p(tau).
std::vector<Rational> root_coefficients(const Rational& tau, unsigned long d, unsigned long p) {
  const long v = valuation(tau, p);
  const Rational unit = tau / rpow(Rational(p), v);
  auto w = exact_root(Rational(abs(unit)), d);
  if (!w) return {};
  if (d % 2 == 1) return {unit > 0 ? *w : Rational(-*w)};
  if (unit < 0) return {};
  return {*w, -*w};
}

bool in_target(const Rational& value, const Rational& a, const Rational& b, unsigned long k, unsigned long p,
               long m_bound = -1) {
  auto e = exact_log((value - b) / a, p);
  if (!e || *e < 0 || *e % static_cast<long>(k) != 0) return false;
  return m_bound < 0 || *e / static_cast<long>(k) <= m_bound;
}

std::optional<RatVector> solve_linear(RatMatrix A, RatVector b) {
  const Eigen::Index n = A.rows();
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index piv = col;
    while (piv < n && A(piv, col) == 0) ++piv;
    if (piv == n) return std::nullopt;
    A.row(col).swap(A.row(piv));
    std::swap(b(col), b(piv));
    for (Eigen::Index r = 0; r < n; ++r) {
      if (r == col || A(r, col) == 0) continue;
      const Rational f = A(r, col) / A(col, col);
      A.row(r) -= f * A.row(col);
      b(r) -= f * b(col);
    }
  }
  RatVector x(n);
  for (Eigen::Index i = 0; i < n; ++i) x(i) = b(i) / A(i, i);
  return x;
}

// tail_n = b0 + Q(n) lambda^n with lambda = +-p^gamma.
struct ExpShape {
  Rational b0;
  QPoly Q;
  BigInt lambda;
  unsigned long gamma = 0;
};

std::optional<ExpShape> exp_shape(const Lrs& tail, unsigned long p) {
  QPoly h = characteristic_polynomial(tail);
  unsigned long e1 = 0;
  for (;;) {
    auto [q, r] = divmod(h, QPoly::linear_root(1));
    if (!r.is_zero()) break;
    h = q;
    ++e1;
  }
  const long e2 = h.degree();
  if (e1 > 1 || e2 < 1) return std::nullopt;
  const Rational lambda = -h[static_cast<std::size_t>(e2 - 1)] / Rational(e2);
  if (!is_integer(lambda) || lambda == 0 || pow(QPoly::linear_root(lambda), static_cast<unsigned long>(e2)) != h)
    return std::nullopt;
  auto g = exact_log(Rational(abs(lambda)), p);
  if (!g || *g < 1) return std::nullopt;
  const Eigen::Index n = static_cast<Eigen::Index>(e1) + e2;
  RatMatrix A(n, n);
  RatVector rhs(n);
  for (Eigen::Index row = 0; row < n; ++row) {
    const Rational lp = rpow(lambda, static_cast<long>(row));
    if (e1 == 1) A(row, e2) = 1;
    for (long i = 0; i < e2; ++i) A(row, i) = rpow(Rational(row), i) * lp;
    rhs(row) = tail.init[static_cast<std::size_t>(row)];
  }
  auto x = solve_linear(A, rhs);
  if (!x) return std::nullopt;
  std::vector<Rational> qc(static_cast<std::size_t>(e2));
  for (long i = 0; i < e2; ++i) qc[static_cast<std::size_t>(i)] = (*x)(i);
  return ExpShape{e1 == 1 ? (*x)(e2) : Rational(0), QPoly(qc), BigInt(lambda), static_cast<unsigned long>(*g)};
}

IndexSet bounded_parith_search(const Lrs& tail, unsigned long z, unsigned long M, unsigned long l,
                               const Rational& a, const Rational& b, unsigned long k, unsigned long p,
                               const SearchBounds& bounds) {
  IndexSet out;
  const unsigned long count = section_count(bounds.n, M, l);
  if (count <= z) return out;
  const auto t = terms(tail, count - z);
  for (unsigned long n = 0; n < t.size(); ++n)
    if (in_target(t[n], a, b, k, p, bounds.m)) out.finite.insert(BigInt(n + z));
  return out;
}

// Section-index solutions of s_n = b + a p^(k m), k > 0, a != 0.
Solution section_parith(const Lrs& s, unsigned long M, unsigned long l, const Rational& a, const Rational& b,
                        unsigned long k, unsigned long p, const SearchBounds& bounds) {
  Solution out;
  if (s.order() == 0) {
    if (in_target(0, a, b, k, p)) out.set = IndexSet::all();
    return out;
  }
  const Transient tr = strip_transient(s);
  for (unsigned long n = 0; n < tr.z; ++n)
    if (in_target(tr.head[n], a, b, k, p)) out.set.finite.insert(n);
  const Lrs& tail = tr.tail;
  const BigInt z(tr.z);
  auto add_shifted = [&](const IndexSet& S) {
    IndexSet shifted_set = affine_image(S, 1, z);
    out.set.finite.insert(shifted_set.finite.begin(), shifted_set.finite.end());
    out.set.aps.insert(out.set.aps.end(), shifted_set.aps.begin(), shifted_set.aps.end());
    out.set.parith.insert(out.set.parith.end(), shifted_set.parith.begin(), shifted_set.parith.end());
  };
  if (tail.order() == 0) {
    if (in_target(0, a, b, k, p)) out.set.aps.push_back({1, z});
    return out;
  }
  const QPoly h = characteristic_polynomial(tail);
  if (is_polynomial_recurrence(h)) {
    const QPoly P = polynomial_part(tail);
    if (P.degree() < 1) {
      if (in_target(P[0], a, b, k, p)) out.set.aps.push_back({1, z});
      return out;
    }
    Solution sol = poly_power_form(P, a, b, k, p, bounds);
    add_shifted(sol.set);
    out.status = sol.status;
    return out;
  }
  const auto shape = exp_shape(tail, p);
  const auto downgrade = [&](const std::string& why) {
    add_shifted(bounded_parith_search(tail, tr.z, M, l, a, b, k, p, bounds));
    out.status = CertStatus::verified(bounds.n, section_name(M, l) + ": " + why);
    return out;
  };
  if (!shape) return downgrade("no structured form");
  const bool alternating = shape->lambda < 0;
  const long gamma = static_cast<long>(shape->gamma);
  const long kk = static_cast<long>(k);
  if (shape->b0 != b) {
    if (shape->Q.degree() > 0) return downgrade("offset differs and Q is not constant");
    // q0 lambda^n - a p^(k m) = diff: either min of the two valuations is
    // v_p(diff), or they agree and the units fix it.
    const Rational q0 = shape->Q[0], diff = b - shape->b0;
    const long vq = valuation(q0, p), va = valuation(a, p), vc = valuation(diff, p);
    const Rational uq = q0 / rpow(Rational(p), vq), ua = a / rpow(Rational(p), va);
    std::set<long> candidates;
    if ((vc - vq) >= 0 && (vc - vq) % gamma == 0) candidates.insert((vc - vq) / gamma);
    if ((vc - va) >= 0 && (vc - va) % kk == 0) {
      const long m = (vc - va) / kk;
      const Rational r = (b + a * rpow(Rational(p), kk * m) - shape->b0) / q0;
      if (r != 0) {
        if (auto e = exact_log(Rational(abs(r)), p); e && *e >= 0 && *e % gamma == 0) candidates.insert(*e / gamma);
      }
    }
    for (int sg : {1, -1}) {
      if (sg == -1 && !alternating) continue;
      const Rational u1 = sg * uq;
      if (u1 == ua) continue;
      const Rational t = diff / (u1 - ua);
      if (t <= 0) continue;
      if (auto X = exact_log(t, p); X && *X - vq >= 0 && (*X - vq) % gamma == 0) candidates.insert((*X - vq) / gamma);
    }
    for (long n : candidates) {
      const Rational v = shape->b0 + q0 * rpow(Rational(shape->lambda), n);
      if (in_target(v, a, b, k, p)) out.set.finite.insert(BigInt(n) + z);
    }
    return out;
  }
  std::vector<int> sigmas = alternating ? std::vector<int>{1, -1} : std::vector<int>{1};
  if (shape->Q.degree() == 0) {
    // q0 sigma p^(gamma n) = a p^(k m)
    for (int sg : sigmas) {
      auto e = exact_log(sg * shape->Q[0] / a, p);
      if (!e) continue;
      const long g = std::gcd(gamma, kk);
      if (*e % g != 0) continue;
      long n0 = 0;
      while ((*e + gamma * n0) % kk != 0) ++n0;
      IndexSet S = IndexSet::of({BigInt(kk / g), BigInt(n0)});
      if (alternating) S = intersect(S, IndexSet::of({2, sg == 1 ? 0 : 1}));
      const long lower = *e >= 0 ? 0 : (-*e + gamma - 1) / gamma;
      S = intersect(S, IndexSet::of({1, BigInt(lower)}));
      add_shifted(S);
    }
    return out;
  }
  const auto ps = power_shape(shape->Q);
  if (!ps) return downgrade("Q is not of the form A (x - c)^d");
  // (n - c)^d = sigma (a / A) p^j, j = k m - gamma n
  const Rational tau = a / ps->A;
  const long vt = valuation(tau, p), d = static_cast<long>(ps->d);
  for (int sg : sigmas) {
    for (const Rational& w : root_coefficients(sg * tau, ps->d, p)) {
      auto j_of = [&](long i) { return d * i - vt; };
      auto pred = [&](long i, const BigInt& n) {
        if (alternating && (floor_mod(n, 2) == 0) != (sg == 1)) return false;
        const BigInt total = BigInt(j_of(i)) + gamma * n;
        return total >= 0 && floor_mod(total, BigInt(kk)) == 0;
      };
      const long i_lo = integrality_floor(w, ps->c, p);
      long settle = i_lo;
      if (w > 0) {
        while (Rational(j_of(settle)) + gamma * (ps->c + w * rpow(Rational(p), settle)) < 0) ++settle;
      }
      add_shifted(power_family(w, ps->c, p, i_lo, settle, static_cast<unsigned long>(kk),
                               BigInt(std::lcm(2L, kk)), pred));
    }
  }
  return out;
}

}  // namespace

std::optional<DominantRoot> dominant_root(const QPoly& f) {
  if (f.degree() < 1) return std::nullopt;
  const QPoly h = monic(f);
  if (h[0] == 0) throw Error("dominant root test needs h(0) != 0");
  const long d = h.degree();
  if (d == 1) {
    const Rational r = -h[0];
    return DominantRoot{pt(r), abs(r) / 2};
  }
  for (unsigned bits : {8u, 16u, 32u, 64u}) {
    const auto roots = isolate_real_roots(h, Rational(1, ipow(BigInt(2), bits)));
    if (roots.empty()) return std::nullopt;
    std::size_t best = 0;
    for (std::size_t i = 1; i < roots.size(); ++i)
      if (Interval{roots[i].first, roots[i].second}.magnitude() >
          Interval{roots[best].first, roots[best].second}.magnitude())
        best = i;
    const Interval cand{roots[best].first, roots[best].second};
    const Rational L = mignitude(cand);
    if (L == 0) continue;
    for (unsigned j = 1; j <= 16; ++j) {
      const Rational sigma = L * (1 - Rational(1, ipow(BigInt(2), j)));
      const auto inside = roots_inside_unit_disk(scale_argument(h, sigma));
      if (inside && *inside == d - 1) return DominantRoot{cand, sigma};
    }
  }
  return std::nullopt;
}

CertStatus CertStatus::verified(const BigInt& bound, std::string note) {
  CertStatus s;
  s.kind = Kind::verified_to_bound;
  s.bound = bound;
  s.notes.push_back(std::move(note));
  return s;
}

CertStatus combine(const CertStatus& x, const CertStatus& y) {
  if (x.proved()) return y;
  if (y.proved()) return x;
  CertStatus out = x;
  out.bound = std::min(x.bound, y.bound);
  out.notes.insert(out.notes.end(), y.notes.begin(), y.notes.end());
  return out;
}

std::string to_string(const CertStatus& s) {
  return s.proved() ? "proved" : "verified_to_bound(" + s.bound.get_str() + ")";
}

Solution solve_eq_const(const Lrs& u, const Rational& c, const SearchBounds& bounds) {
  u.validate();
  // w = u - c satisfies (x - 1) f.
  const QPoly g = characteristic_polynomial(u) * QPoly::linear_root(1);
  std::vector<Rational> init = terms(u, u.order() + 1);
  for (auto& x : init) x -= c;
  const Lrs w = from_polynomial(g, init);
  const NonDegSplit split = decompose_nondeg(w);
  Solution out;
  for (const auto& sec : split.sections) {
    Solution part = section_zeros(sec.seq, split.M, sec.offset, bounds);
    out.set = unite(out.set, affine_image(part.set, split.M, sec.offset));
    out.status = combine(out.status, part.status);
  }
  out.set = canonicalize(out.set);
  return out;
}

Solution poly_power_form(const QPoly& P, const Rational& a, const Rational& b, unsigned long k, unsigned long p,
                         const SearchBounds& bounds) {
  if (a == 0) throw InputError("p-arithmetic target with a = 0");
  if (P.degree() < 1) throw InputError("poly_power_form needs deg P >= 1");
  if (!is_prime(p)) throw InputError("p must be prime");
  Solution out;
  if (k == 0) {
    for (const auto& x : integer_roots(P - QPoly::constant(a + b)))
      if (x >= 0) out.set.finite.insert(x);
    return out;
  }
  const QPoly Q = (1 / a) * (P - QPoly::constant(b));
  const auto ps = power_shape(Q);
  if (!ps) {
    for (long n = 0; n <= bounds.n; ++n)
      if (in_target(evaluate(P, Rational(n)), a, b, k, p, bounds.m)) out.set.finite.insert(n);
    out.status = CertStatus::verified(bounds.n, "polynomial " + format(P) + " is not a shifted power");
    return out;
  }
  // A (n - c)^d = p^(k m): n = c + s w p^i with d i + v_p(A) = k m.
  const long d = static_cast<long>(ps->d), vA = valuation(ps->A, p);
  const long kk = static_cast<long>(k);
  for (const Rational& w : root_coefficients(1 / ps->A, ps->d, p)) {
    // 1/A = p^(-vA) * unit, so y = s w p^((k m - vA) / d).
    auto pred = [&](long i, const BigInt&) {
      const long km = d * i + vA;
      return km >= 0 && km % kk == 0;
    };
    const long i_lo = std::max(integrality_floor(w, ps->c, p), ceil_div_long(-vA, d));
    const unsigned long i_period = k / std::gcd(k, ps->d);
    out.set = unite(out.set, power_family(w, ps->c, p, i_lo, i_lo, i_period, 1, pred));
  }
  out.set = canonicalize(out.set);
  return out;
}

Solution solve_eq_parith(const Lrs& u, const Rational& a, const Rational& b, unsigned long k, unsigned long p,
                         const SearchBounds& bounds) {
  u.validate();
  if (!is_prime(p)) throw InputError("p must be prime");
  if (a == 0 || k == 0) return solve_eq_const(u, a == 0 ? b : a + b, bounds);
  if (!is_integer_valued(u)) throw InputError("solve_eq_parith needs an integer-valued sequence");
  const NonDegSplit split = decompose_nondeg(u);
  Solution out;
  for (const auto& sec : split.sections) {
    Solution part = section_parith(sec.seq, split.M, sec.offset, a, b, k, p, bounds);
    out.set = unite(out.set, affine_image(canonicalize(part.set), split.M, sec.offset));
    out.status = combine(out.status, part.status);
  }
  out.set = canonicalize(out.set);
  return out;
}

}  // namespace retset
