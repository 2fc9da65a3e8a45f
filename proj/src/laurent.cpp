#include "retset/laurent.hpp"

#include <algorithm>
#include <numeric>

namespace retset {

LaurentPoly LaurentPoly::constant(std::size_t nvars, const FpRational& c) {
  return monomial(nvars, c, Exponent(nvars, 0));
}

LaurentPoly LaurentPoly::variable(std::uint32_t p, std::size_t nvars, std::size_t index) {
  if (index >= nvars) throw InputError("variable index out of range");
  Exponent e(nvars, 0);
  e[index] = 1;
  return monomial(nvars, FpRational::constant(p, 1), e);
}

LaurentPoly LaurentPoly::monomial(std::size_t nvars, const FpRational& c, Exponent e) {
  if (e.size() != nvars) throw Error("exponent length does not match variable count");
  LaurentPoly r(c.p(), nvars);
  r.add_term(e, c);
  return r;
}

bool LaurentPoly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  const auto& e = terms_.begin()->first;
  return std::all_of(e.begin(), e.end(), [](long x) { return x == 0; });
}

FpRational LaurentPoly::constant_value() const {
  if (!is_constant()) throw Error("Laurent polynomial is not constant");
  if (terms_.empty()) return FpRational::constant(p_, 0);
  return terms_.begin()->second;
}

void LaurentPoly::add_term(const Exponent& e, const FpRational& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
    return;
  }
  it->second = it->second + c;
  if (it->second.is_zero()) terms_.erase(it);
}

void LaurentPoly::check_compatible(const LaurentPoly& other) const {
  if (p_ != other.p_ || nvars_ != other.nvars_)
    throw Error("Laurent polynomials over different rings");
}

LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
  a.check_compatible(b);
  LaurentPoly r = a;
  for (const auto& [e, c] : b.terms_) r.add_term(e, c);
  return r;
}

LaurentPoly operator-(const LaurentPoly& a) {
  LaurentPoly r = a;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) { return a + (-b); }

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  a.check_compatible(b);
  LaurentPoly r(a.p_, a.nvars_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      Exponent e(a.nvars_);
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

LaurentPoly LaurentPoly::inverse() const {
  if (!is_single_term()) throw DivisionByZero("only single-term Laurent polynomials are invertible");
  const auto& [e, c] = *terms_.begin();
  Exponent neg(e.size());
  for (std::size_t i = 0; i < e.size(); ++i) neg[i] = -e[i];
  return monomial(nvars_, c.inverse(), neg);
}

FpRational LaurentPoly::evaluate(const TorusPoint& x) const {
  if (x.size() != nvars_) throw Error("point dimension does not match variable count");
  FpRational total = FpRational::constant(p_, 0);
  for (const auto& [e, c] : terms_) {
    FpRational term = c;
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0) term = term * pow(x[i], BigInt(e[i]));
    total = total + term;
  }
  return total;
}

LaurentPoly pow(const LaurentPoly& a, long e) {
  if (e < 0) return pow(a.inverse(), -e);
  LaurentPoly result = LaurentPoly::constant(a.nvars(), FpRational::constant(a.p(), 1));
  if (a.is_single_term()) {
    // Direct power keeps large exponents cheap.
    const auto& [ex, c] = *a.terms().begin();
    Exponent scaled(ex.size());
    for (std::size_t i = 0; i < ex.size(); ++i) scaled[i] = ex[i] * e;
    return LaurentPoly::monomial(a.nvars(), pow(c, BigInt(e)), scaled);
  }
  LaurentPoly base = a;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

std::string format(const LaurentPoly& f) {
  if (f.is_zero()) return "0";
  std::vector<std::pair<Exponent, FpRational>> terms(f.terms().begin(), f.terms().end());
  auto total = [](const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0L); };
  std::stable_sort(terms.begin(), terms.end(), [&](const auto& a, const auto& b) {
    const long da = total(a.first), db = total(b.first);
    if (da != db) return da < db;
    return a.first > b.first;
  });
  std::string out;
  for (const auto& [e, c] : terms) {
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += "x" + std::to_string(i + 1);
      if (e[i] != 1) mono += "^" + std::to_string(e[i]);
    }
    std::string coef = format(c);
    const bool compound = c.num().nonzero_terms() > 1 && c.is_polynomial();
    std::string term;
    if (mono.empty()) {
      term = compound && terms.size() > 1 ? "(" + coef + ")" : coef;
    } else if (c.is_one()) {
      term = mono;
    } else {
      term = (compound ? "(" + coef + ")" : coef) + "*" + mono;
    }
    if (!out.empty()) out += " + ";
    out += term;
  }
  return out;
}

}  // namespace retset
