#include "retset/qpoly.hpp"

#include "retset/linalg.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace retset {

QPoly::QPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

void QPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

QPoly operator+(const QPoly& a, const QPoly& b) {
  std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a[i] + b[i];
  return QPoly(std::move(c));
}

QPoly operator-(const QPoly& a) {
  QPoly r = a;
  for (auto& x : r.c_) x = -x;
  return r;
}

QPoly operator-(const QPoly& a, const QPoly& b) { return a + (-b); }

QPoly operator*(const QPoly& a, const QPoly& b) {
  if (a.is_zero() || b.is_zero()) return QPoly();
  std::vector<Rational> c(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  }
  return QPoly(std::move(c));
}

QPoly operator*(const Rational& k, const QPoly& a) {
  std::vector<Rational> c = a.coeffs();
  for (auto& x : c) x *= k;
  return QPoly(std::move(c));
}

std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b) {
  if (b.is_zero()) throw Error("polynomial division by zero");
  if (a.degree() < b.degree()) return {QPoly(), a};
  std::vector<Rational> rem = a.coeffs();
  const std::size_t db = static_cast<std::size_t>(b.degree());
  std::vector<Rational> quo(rem.size() - db);
  const Rational lead = b.lead();
  for (std::size_t i = rem.size(); i-- > db;) {
    if (rem[i] == 0) continue;
    const Rational q = rem[i] / lead;
    quo[i - db] = q;
    for (std::size_t j = 0; j <= db; ++j) rem[i - db + j] -= q * b[j];
  }
  rem.resize(db);
  return {QPoly(std::move(quo)), QPoly(std::move(rem))};
}

QPoly operator/(const QPoly& a, const QPoly& b) { return divmod(a, b).first; }
QPoly operator%(const QPoly& a, const QPoly& b) { return divmod(a, b).second; }

QPoly monic(const QPoly& a) {
  if (a.is_zero()) return a;
  return Rational(1 / a.lead()) * a;
}

QPoly gcd(QPoly a, QPoly b) {
  while (!b.is_zero()) {
    QPoly r = a % b;
    a = std::move(b);
    b = monic(r);
  }
  return monic(a);
}

QPoly derivative(const QPoly& a) {
  if (a.degree() < 1) return QPoly();
  std::vector<Rational> c(static_cast<std::size_t>(a.degree()));
  for (std::size_t i = 1; i <= c.size(); ++i) c[i - 1] = a[i] * static_cast<long>(i);
  return QPoly(std::move(c));
}

QPoly pow(const QPoly& a, unsigned long e) {
  QPoly r = QPoly::constant(1), b = a;
  while (e > 0) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e > 0) b = b * b;
  }
  return r;
}

QPoly squarefree_part(const QPoly& f) {
  if (f.degree() < 1) return monic(f);
  return monic(f / gcd(f, derivative(f)));
}

Rational evaluate(const QPoly& f, const Rational& x) {
  Rational acc = 0;
  for (std::size_t i = f.coeffs().size(); i-- > 0;) acc = acc * x + f.coeffs()[i];
  return acc;
}

QPoly scale_argument(const QPoly& f, const Rational& c) {
  std::vector<Rational> out = f.coeffs();
  Rational power = 1;
  for (auto& x : out) {
    x *= power;
    power *= c;
  }
  return QPoly(std::move(out));
}

QPoly shift_argument(const QPoly& f, const Rational& c) {
  // Horner in the shifted variable.
  QPoly acc;
  const QPoly lin({c, 1});
  for (std::size_t i = f.coeffs().size(); i-- > 0;) acc = acc * lin + QPoly::constant(f.coeffs()[i]);
  return acc;
}

std::string format(const QPoly& f) {
  if (f.is_zero()) return "0";
  std::string out;
  for (long i = f.degree(); i >= 0; --i) {
    const Rational c = f[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    if (!out.empty()) out += c < 0 ? " - " : " + ";
    else if (c < 0) out += "-";
    const Rational a = abs(c);
    if (i == 0 || a != 1) out += to_string(a) + (i > 0 ? "*" : "");
    if (i > 0) out += i == 1 ? "x" : "x^" + std::to_string(i);
  }
  return out;
}

QPoly interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys) {
  if (xs.size() != ys.size()) throw Error("interpolation needs as many values as nodes");
  // Newton divided differences.
  std::vector<Rational> d = ys;
  for (std::size_t j = 1; j < xs.size(); ++j)
    for (std::size_t i = xs.size() - 1; i >= j; --i) {
      if (xs[i] == xs[i - j]) throw Error("repeated interpolation node");
      d[i] = (d[i] - d[i - 1]) / (xs[i] - xs[i - j]);
    }
  QPoly out;
  for (std::size_t i = xs.size(); i-- > 0;) out = out * QPoly::linear_root(xs[i]) + QPoly::constant(d[i]);
  return out;
}

unsigned long euler_phi(unsigned long m) {
  unsigned long r = m;
  for (unsigned long q : prime_factors(m)) r = r / q * (q - 1);
  return r;
}

const QPoly& cyclotomic(unsigned long m) {
  static std::mutex mutex;
  static std::map<unsigned long, QPoly> cache;
  if (m == 0) throw Error("cyclotomic index must be positive");
  {
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
  }
  std::vector<Rational> c(m + 1);
  c[0] = -1;
  c[m] = 1;
  QPoly f(std::move(c));
  for (unsigned long d = 1; d < m; ++d)
    if (m % d == 0) f = f / cyclotomic(d);
  std::lock_guard<std::mutex> lock(mutex);
  return cache.emplace(m, f).first->second;
}

CyclotomicSplit split_cyclotomic(const QPoly& f) {
  if (f.is_zero()) throw Error("cyclotomic split of the zero polynomial");
  CyclotomicSplit out;
  QPoly g = monic(f);
  while (g.degree() > 0 && g[0] == 0) {
    g = g / QPoly::x();
    ++out.x_power;
  }
  const unsigned long bound = 2 * static_cast<unsigned long>(g.degree() * g.degree()) + 2;
  for (unsigned long m = 1; m <= bound && g.degree() > 0; ++m) {
    if (euler_phi(m) > static_cast<unsigned long>(g.degree())) continue;
    unsigned long mult = 0;
    while (g.degree() >= static_cast<long>(euler_phi(m))) {
      auto [q, r] = divmod(g, cyclotomic(m));
      if (!r.is_zero()) break;
      g = q;
      ++mult;
    }
    if (mult > 0) out.factors.emplace_back(m, mult);
  }
  out.residual = g;
  return out;
}

Rational resultant(const QPoly& f, const QPoly& g) {
  if (f.is_zero() || g.is_zero()) return 0;
  const long m = f.degree(), n = g.degree();
  if (m == 0 && n == 0) return 1;
  if (m == 0) return rpow(f.lead(), n);
  if (n == 0) return rpow(g.lead(), m);
  const Eigen::Index size = m + n;
  RatMatrix S = RatMatrix::Zero(size, size);
  for (long r = 0; r < n; ++r)
    for (long i = 0; i <= m; ++i) S(r, r + i) = f[static_cast<std::size_t>(m - i)];
  for (long r = 0; r < m; ++r)
    for (long i = 0; i <= n; ++i) S(n + r, r + i) = g[static_cast<std::size_t>(n - i)];
  return determinant(S);
}

namespace {

std::vector<QPoly> sturm_sequence(const QPoly& f) {
  std::vector<QPoly> seq{f, derivative(f)};
  while (!seq.back().is_zero()) {
    QPoly r = seq[seq.size() - 2] % seq.back();
    if (r.is_zero()) break;
    seq.push_back(-r);
  }
  if (seq.back().is_zero()) seq.pop_back();
  return seq;
}

long sign_variations(const std::vector<QPoly>& seq, const Rational& x) {
  long count = 0;
  int prev = 0;
  for (const auto& s : seq) {
    const int sg = sgn(evaluate(s, x));
    if (sg == 0) continue;
    if (prev != 0 && sg != prev) ++count;
    prev = sg;
  }
  return count;
}

}  // namespace

long count_real_roots(const QPoly& f, const Rational& a, const Rational& b) {
  if (f.degree() < 1) return 0;
  const auto seq = sturm_sequence(squarefree_part(f));
  return sign_variations(seq, a) - sign_variations(seq, b);
}

Rational root_bound(const QPoly& f) {
  Rational m = 0;
  for (long i = 0; i < f.degree(); ++i) m = std::max(m, Rational(abs(f[static_cast<std::size_t>(i)] / f.lead())));
  return m + 1;
}

std::vector<std::pair<Rational, Rational>> isolate_real_roots(const QPoly& f, const Rational& width) {
  std::vector<std::pair<Rational, Rational>> out;
  if (f.degree() < 1) return out;
  const QPoly g = squarefree_part(f);
  const auto seq = sturm_sequence(g);
  const Rational B = root_bound(g);
  struct Job {
    Rational lo, hi;
    long vlo, vhi;
  };
  std::vector<Job> stack{{-B, B, sign_variations(seq, -B), sign_variations(seq, B)}};
  while (!stack.empty()) {
    Job j = stack.back();
    stack.pop_back();
    const long n = j.vlo - j.vhi;
    if (n == 0) continue;
    if (n == 1 && j.hi - j.lo <= width) {
      out.emplace_back(j.lo, j.hi);
      continue;
    }
    Rational mid = (j.lo + j.hi) / 2;
    // Keep split points off the roots so each interval stays half-open-safe.
    for (int k = 3; evaluate(g, mid) == 0; ++k) mid = j.lo + (j.hi - j.lo) / k;
    const long vm = sign_variations(seq, mid);
    stack.push_back({mid, j.hi, vm, j.vhi});
    stack.push_back({j.lo, mid, j.vlo, vm});
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<BigInt> integer_roots(const QPoly& f) {
  std::vector<BigInt> out;
  for (const auto& [lo, hi] : isolate_real_roots(f, Rational(1, 2))) {
    BigInt c = floor_div(hi.get_num(), hi.get_den());
    if (Rational(c) > lo && evaluate(f, Rational(c)) == 0) out.push_back(c);
  }
  return out;
}

std::optional<long> roots_inside_unit_disk(const QPoly& f) {
  if (f.is_zero()) throw Error("Schur-Cohn count of the zero polynomial");
  QPoly g = f;
  long inside_offset = 0;
  // Z(g) after the transformations is tracked as sign * Z + offset.
  int sign = 1;
  while (g.degree() > 0) {
    const long n = g.degree();
    const Rational a0 = g[0], an = g.lead();
    const Rational delta = a0 * a0 - an * an;
    if (delta == 0) return std::nullopt;
    std::vector<Rational> rev(g.coeffs().rbegin(), g.coeffs().rend());
    QPoly t = a0 * g - an * QPoly(rev);
    if (t.is_zero()) return std::nullopt;
    if (delta < 0) {
      // Z(g) = n - Z(t)
      inside_offset += sign * n;
      sign = -sign;
    }
    g = t;
  }
  return inside_offset;
}

Rational Interval::magnitude() const { return std::max(abs(lo), abs(hi)); }

Interval round_out(const Interval& a, unsigned bits) {
  const BigInt scale = ipow(BigInt(2), bits);
  const Rational lo_s = a.lo * scale, hi_s = a.hi * scale;
  Interval r{Rational(floor_div(lo_s.get_num(), lo_s.get_den()), scale),
             Rational(ceil_div(hi_s.get_num(), hi_s.get_den()), scale)};
  r.lo.canonicalize();
  r.hi.canonicalize();
  return r;
}

Interval operator+(const Interval& a, const Interval& b) { return {a.lo + b.lo, a.hi + b.hi}; }
Interval operator-(const Interval& a, const Interval& b) { return {a.lo - b.hi, a.hi - b.lo}; }

Interval operator*(const Interval& a, const Interval& b) {
  const Rational c[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  return {*std::min_element(c, c + 4), *std::max_element(c, c + 4)};
}

Interval inverse(const Interval& a) {
  if (a.lo <= 0 && a.hi >= 0) throw Error("interval inverse across zero");
  return {1 / a.hi, 1 / a.lo};
}

}  // namespace retset
