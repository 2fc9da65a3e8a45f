#include "retset/lrs.hpp"

#include <map>
#include <numeric>

namespace retset {

void Lrs::validate() const {
  if (coeffs.size() != init.size()) throw InputError("recurrence needs as many initial terms as coefficients");
}

QPoly characteristic_polynomial(const Lrs& u) {
  std::vector<Rational> c = u.coeffs;
  c.push_back(1);
  return QPoly(std::move(c));
}

Lrs from_polynomial(const QPoly& monic_poly, std::vector<Rational> init) {
  if (monic_poly.lead() != 1) throw Error("recurrence polynomial must be monic");
  Lrs u;
  u.coeffs.assign(monic_poly.coeffs().begin(), monic_poly.coeffs().end() - 1);
  u.init = std::move(init);
  u.validate();
  return u;
}

std::vector<Rational> terms(const Lrs& u, std::size_t count) {
  u.validate();
  const std::size_t m = u.order();
  std::vector<Rational> out(u.init.begin(), u.init.begin() + static_cast<long>(std::min(m, count)));
  out.reserve(count);
  while (out.size() < count) {
    const std::size_t n = out.size() - m;
    Rational next = 0;
    for (std::size_t i = 0; i < m; ++i) next -= u.coeffs[i] * out[n + i];
    out.push_back(next);
  }
  return out;
}

Rational eval(const Lrs& u, const BigInt& n) {
  u.validate();
  if (n < 0) throw InputError("sequence index must be nonnegative");
  const std::size_t m = u.order();
  if (m == 0) return 0;
  if (n < BigInt(static_cast<unsigned long>(8 * m + 64))) return terms(u, n.get_ui() + 1).back();
  RatMatrix C = RatMatrix::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
  for (std::size_t i = 0; i + 1 < m; ++i) C(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i + 1)) = 1;
  for (std::size_t j = 0; j < m; ++j) C(static_cast<Eigen::Index>(m - 1), static_cast<Eigen::Index>(j)) = -u.coeffs[j];
  const RatMatrix P = matrix_power(C, n);
  Rational out = 0;
  for (std::size_t j = 0; j < m; ++j) out += P(0, static_cast<Eigen::Index>(j)) * u.init[j];
  return out;
}

Lrs shifted(const Lrs& u, std::size_t shift) {
  auto t = terms(u, shift + u.order());
  return {u.coeffs, std::vector<Rational>(t.begin() + static_cast<long>(shift), t.end())};
}

Lrs berlekamp_massey(const std::vector<Rational>& seq) {
  std::vector<Rational> C{1}, B{1};
  std::size_t L = 0, shift = 1;
  Rational b = 1;
  for (std::size_t n = 0; n < seq.size(); ++n) {
    Rational d = seq[n];
    for (std::size_t i = 1; i <= L; ++i) d += C[i] * seq[n - i];
    if (d == 0) {
      ++shift;
      continue;
    }
    const Rational coef = d / b;
    std::vector<Rational> T = C;
    if (C.size() < B.size() + shift) C.resize(B.size() + shift);
    for (std::size_t i = 0; i < B.size(); ++i) C[i + shift] -= coef * B[i];
    if (2 * L <= n) {
      L = n + 1 - L;
      B = std::move(T);
      b = d;
      shift = 1;
    } else {
      ++shift;
    }
  }
  C.resize(L + 1);
  Lrs out;
  for (std::size_t j = 0; j < L; ++j) out.coeffs.push_back(C[L - j]);
  out.init.assign(seq.begin(), seq.begin() + static_cast<long>(std::min(L, seq.size())));
  out.init.resize(L);
  return out;
}

Lrs minimal(const Lrs& u) { return berlekamp_massey(terms(u, 2 * u.order())); }

bool is_integer_valued(const Lrs& u) {
  // An integer sequence has an integral minimal recurrence (Fatou).
  const Lrs mu = minimal(u);
  for (const auto& c : mu.coeffs)
    if (!is_integer(c)) return false;
  for (const auto& x : mu.init)
    if (!is_integer(x)) return false;
  return true;
}

std::pair<BigInt, BigInt> period_mod(const Lrs& u, const BigInt& M) {
  if (M < 2) throw InputError("period modulus must be at least 2");
  if (!fits_int64(M)) throw InputError("period modulus too large");
  const Lrs mu = minimal(u);
  if (!is_integer_valued(mu)) throw InputError("period_mod needs an integer-valued sequence");
  const std::size_t m = mu.order();
  if (m == 0) return {0, 1};
  const std::int64_t mod = to_int64(M);
  std::vector<std::int64_t> c(m), x0(m);
  for (std::size_t i = 0; i < m; ++i) {
    c[i] = to_int64(floor_mod(BigInt(mu.coeffs[i]), M));
    x0[i] = to_int64(floor_mod(BigInt(mu.init[i]), M));
  }
  using State = std::vector<std::int64_t>;
  auto f = [&](const State& s) {
    State t(s.begin() + 1, s.end());
    __int128 next = 0;
    for (std::size_t i = 0; i < m; ++i) next -= static_cast<__int128>(c[i]) * s[i];
    std::int64_t r = static_cast<std::int64_t>(next % mod);
    if (r < 0) r += mod;
    t.push_back(r);
    return t;
  };
  // Brent's cycle detection on the state vector.
  unsigned long power = 1, lam = 1;
  State tortoise = x0, hare = f(x0);
  while (tortoise != hare) {
    if (power == lam) {
      tortoise = hare;
      power *= 2;
      lam = 0;
    }
    hare = f(hare);
    ++lam;
  }
  tortoise = hare = x0;
  for (unsigned long i = 0; i < lam; ++i) hare = f(hare);
  unsigned long mu_len = 0;
  while (tortoise != hare) {
    tortoise = f(tortoise);
    hare = f(hare);
    ++mu_len;
  }
  return {BigInt(mu_len), BigInt(lam)};
}

std::string to_string(Section::Kind kind) {
  switch (kind) {
    case Section::Kind::zero: return "zero";
    case Section::Kind::polynomial: return "polynomial";
    case Section::Kind::dominant_root: return "dominant_root";
    case Section::Kind::general: return "general";
  }
  return "general";
}

namespace {

QPoly strip_x(QPoly f) {
  while (f.degree() > 0 && f[0] == 0) f = f / QPoly::x();
  return f;
}

unsigned long lcm_orders(const CyclotomicSplit& s, unsigned long acc) {
  for (const auto& [m, mult] : s.factors) acc = std::lcm(acc, m);
  return acc;
}

}  // namespace

QPoly ratio_polynomial(const QPoly& f) {
  const long d = f.degree();
  if (d < 1) return QPoly::constant(1);
  if (f[0] == 0) throw Error("ratio polynomial needs f(0) != 0");
  // deg_x Res_y(f(y), f(x y)) = d^2; sample at x = 1 .. d^2 + 1 where f(x y)
  // keeps degree d.
  std::vector<Rational> xs, ys;
  for (long i = 1; i <= d * d + 1; ++i) {
    xs.emplace_back(i);
    ys.push_back(resultant(f, scale_argument(f, Rational(i))));
  }
  return interpolate(xs, ys);
}

unsigned long degeneracy_stride(const QPoly& f) {
  const QPoly g = squarefree_part(strip_x(f));
  if (g.degree() < 1) return 1;
  unsigned long M = lcm_orders(split_cyclotomic(g), 1);
  M = lcm_orders(split_cyclotomic(ratio_polynomial(g)), M);
  return M;
}

namespace {

Section::Kind classify_section(const Lrs& s) {
  if (s.order() == 0) return Section::Kind::zero;
  const QPoly h = strip_x(characteristic_polynomial(s));
  if (h.degree() == 0) return Section::Kind::zero;
  const CyclotomicSplit split = split_cyclotomic(h);
  if (split.residual.degree() == 0 && split.factors.size() == 1 && split.factors[0].first == 1)
    return Section::Kind::polynomial;
  if (dominant_root(h)) return Section::Kind::dominant_root;
  return Section::Kind::general;
}

}  // namespace

NonDegSplit decompose_nondeg(const Lrs& u) {
  u.validate();
  const Lrs mu = minimal(u);
  NonDegSplit out;
  out.M = degeneracy_stride(characteristic_polynomial(mu));
  const std::size_t d = mu.order();
  const auto all = terms(mu, (2 * d + 1) * out.M);
  for (unsigned long l = 0; l < out.M; ++l) {
    std::vector<Rational> sec;
    for (std::size_t j = 0; j < 2 * d; ++j) sec.push_back(all[j * out.M + l]);
    Section s;
    s.offset = l;
    s.seq = berlekamp_massey(sec);
    s.kind = classify_section(s.seq);
    out.sections.push_back(std::move(s));
  }
  return out;
}

std::string format(const Lrs& u) {
  std::string s = format(characteristic_polynomial(u)) + " | ";
  for (std::size_t i = 0; i < u.init.size(); ++i) s += (i ? ", " : "") + to_string(u.init[i]);
  return s;
}

}  // namespace retset
