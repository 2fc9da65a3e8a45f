#include "retset/fp_poly.hpp"

#include <algorithm>
#include <bit>

namespace retset {

// ---------------------------------------------------------------- PrimeField

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  if (!is_prime(p)) throw InputError("modulus " + std::to_string(p) + " is not prime");
  if (p >= (1u << 16)) throw InputError("prime modulus must be below 65536");
}

std::uint32_t PrimeField::reduce(const BigInt& x) const {
  return static_cast<std::uint32_t>(floor_mod(x, BigInt(p_)).get_ui());
}

std::uint32_t PrimeField::reduce(std::int64_t x) const {
  std::int64_t r = x % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return static_cast<std::uint32_t>(r);
}

std::uint32_t PrimeField::inv(std::uint32_t a) const {
  if (a % p_ == 0) throw DivisionByZero("inverse of zero in F_" + std::to_string(p_));
  return pow(a, BigInt(p_ - 2));
}

std::uint32_t PrimeField::pow(std::uint32_t a, const BigInt& e) const {
  BigInt base = a, mod = p_, r;
  if (e < 0) return pow(inv(a), -e);
  mpz_powm(r.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), mod.get_mpz_t());
  return static_cast<std::uint32_t>(r.get_ui());
}

std::uint32_t PrimeField::primitive_root() const {
  if (p_ == 2) return 1;
  auto factors = prime_factors(p_ - 1);
  for (std::uint32_t g = 2; g < p_; ++g) {
    bool ok = std::all_of(factors.begin(), factors.end(), [&](unsigned long q) {
      return pow(g, BigInt(static_cast<unsigned long>((p_ - 1) / q))) != 1;
    });
    if (ok) return g;
  }
  throw Error("no primitive root found");  // unreachable for prime p
}

std::uint32_t PrimeField::dlog(std::uint32_t a, std::uint32_t generator) const {
  a %= p_;
  if (a == 0) throw DivisionByZero("discrete log of zero");
  std::uint32_t x = 1;
  for (std::uint32_t k = 0; k + 1 < p_ || k == 0; ++k) {
    if (x == a) return k;
    x = mul(x, generator);
  }
  throw Error("element outside the cyclic group generated by " + std::to_string(generator));
}

// -------------------------------------------------------------------- FpPoly

namespace {

constexpr std::size_t words_for(std::size_t bits) { return (bits + 63) / 64; }

// dst ^= src << shift, dst sized by the caller.
void xor_shifted(std::vector<std::uint64_t>& dst, const std::vector<std::uint64_t>& src,
                 std::size_t shift) {
  const std::size_t w = shift / 64;
  const unsigned b = shift % 64;
  if (b == 0) {
    for (std::size_t j = 0; j < src.size(); ++j) dst[w + j] ^= src[j];
    return;
  }
  for (std::size_t j = 0; j < src.size(); ++j) {
    dst[w + j] ^= src[j] << b;
    if (w + j + 1 < dst.size()) dst[w + j + 1] ^= src[j] >> (64 - b);
  }
}

}  // namespace

FpPoly::FpPoly(std::uint32_t p) : p_(p) {}

FpPoly::FpPoly(std::uint32_t p, const std::vector<std::uint32_t>& coeffs) : p_(p) {
  if (p == 2) {
    bits_.assign(words_for(coeffs.size()), 0);
    for (std::size_t i = 0; i < coeffs.size(); ++i)
      if (coeffs[i] % 2) bits_[i / 64] |= std::uint64_t{1} << (i % 64);
    len_ = coeffs.size();
  } else {
    coeffs_.resize(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs_[i] = coeffs[i] % p;
    len_ = coeffs.size();
  }
  trim();
}

FpPoly FpPoly::constant(std::uint32_t p, std::uint32_t c) { return FpPoly(p, {c}); }

FpPoly FpPoly::monomial(std::uint32_t p, std::uint32_t c, long degree) {
  if (degree < 0) throw Error("negative monomial degree");
  if (degree > kDegreeCap) throw DegreeCapExceeded("monomial degree above cap");
  std::vector<std::uint32_t> v(static_cast<std::size_t>(degree) + 1, 0);
  v.back() = c;
  return FpPoly(p, v);
}

void FpPoly::trim() {
  if (p_ == 2) {
    std::size_t w = bits_.size();
    while (w > 0 && bits_[w - 1] == 0) --w;
    bits_.resize(w);
    len_ = w == 0 ? 0 : (w - 1) * 64 + (64 - std::countl_zero(bits_[w - 1]));
  } else {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    len_ = coeffs_.size();
  }
}

void FpPoly::check_same_field(const FpPoly& other) const {
  if (p_ != other.p_)
    throw Error("polynomials over different fields F_" + std::to_string(p_) + " and F_" +
                std::to_string(other.p_));
}

std::uint32_t FpPoly::operator[](std::size_t i) const {
  if (i >= len_) return 0;
  if (p_ == 2) return static_cast<std::uint32_t>((bits_[i / 64] >> (i % 64)) & 1u);
  return coeffs_[i];
}

std::size_t FpPoly::nonzero_terms() const {
  if (p_ == 2) {
    std::size_t n = 0;
    for (auto w : bits_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }
  return static_cast<std::size_t>(
      std::count_if(coeffs_.begin(), coeffs_.end(), [](std::uint32_t c) { return c != 0; }));
}

std::vector<std::uint32_t> FpPoly::coefficients() const {
  if (p_ != 2) return coeffs_;
  std::vector<std::uint32_t> v(len_);
  for (std::size_t i = 0; i < len_; ++i) v[i] = (*this)[i];
  return v;
}

bool operator==(const FpPoly& a, const FpPoly& b) {
  if (a.p_ != b.p_ || a.len_ != b.len_) return false;
  return a.p_ == 2 ? a.bits_ == b.bits_ : a.coeffs_ == b.coeffs_;
}

std::strong_ordering operator<=>(const FpPoly& a, const FpPoly& b) {
  if (auto c = a.p_ <=> b.p_; c != 0) return c;
  if (auto c = a.len_ <=> b.len_; c != 0) return c;
  for (std::size_t i = 0; i < a.len_; ++i)
    if (auto c = a[i] <=> b[i]; c != 0) return c;
  return std::strong_ordering::equal;
}

FpPoly operator+(const FpPoly& a, const FpPoly& b) {
  a.check_same_field(b);
  FpPoly r(a.p_);
  if (a.p_ == 2) {
    r.bits_ = a.bits_.size() >= b.bits_.size() ? a.bits_ : b.bits_;
    const auto& other = a.bits_.size() >= b.bits_.size() ? b.bits_ : a.bits_;
    for (std::size_t i = 0; i < other.size(); ++i) r.bits_[i] ^= other[i];
  } else {
    r.coeffs_.assign(std::max(a.len_, b.len_), 0);
    for (std::size_t i = 0; i < a.len_; ++i) r.coeffs_[i] = a.coeffs_[i];
    for (std::size_t i = 0; i < b.len_; ++i) r.coeffs_[i] = (r.coeffs_[i] + b.coeffs_[i]) % a.p_;
  }
  r.trim();
  return r;
}

FpPoly operator-(const FpPoly& a) {
  if (a.p_ == 2) return a;
  FpPoly r = a;
  for (auto& c : r.coeffs_) c = c == 0 ? 0 : a.p_ - c;
  return r;
}

FpPoly operator-(const FpPoly& a, const FpPoly& b) { return a + (-b); }

FpPoly operator*(const FpPoly& a, const FpPoly& b) {
  a.check_same_field(b);
  if (a.is_zero() || b.is_zero()) return FpPoly(a.p_);
  if (static_cast<long>(a.len_ + b.len_) - 2 > kDegreeCap)
    throw DegreeCapExceeded("product degree exceeds 2^25");
  const bool a_sparser = a.nonzero_terms() <= b.nonzero_terms();
  const FpPoly& sparse = a_sparser ? a : b;
  const FpPoly& dense = a_sparser ? b : a;
  FpPoly r(a.p_);
  if (a.p_ == 2) {
    r.bits_.assign(words_for(a.len_ + b.len_) + 1, 0);
    for (std::size_t w = 0; w < sparse.bits_.size(); ++w) {
      std::uint64_t word = sparse.bits_[w];
      while (word) {
        const unsigned bit = static_cast<unsigned>(std::countr_zero(word));
        xor_shifted(r.bits_, dense.bits_, w * 64 + bit);
        word &= word - 1;
      }
    }
  } else {
    std::vector<std::uint64_t> acc(a.len_ + b.len_ - 1, 0);
    for (std::size_t i = 0; i < sparse.len_; ++i) {
      const std::uint64_t s = sparse.coeffs_[i];
      if (s == 0) continue;
      for (std::size_t j = 0; j < dense.len_; ++j) acc[i + j] += s * dense.coeffs_[j];
    }
    r.coeffs_.resize(acc.size());
    for (std::size_t i = 0; i < acc.size(); ++i)
      r.coeffs_[i] = static_cast<std::uint32_t>(acc[i] % a.p_);
  }
  r.trim();
  return r;
}

FpPoly scale(const FpPoly& a, std::uint32_t c) {
  c %= a.p_;
  if (c == 0) return FpPoly(a.p_);
  if (a.p_ == 2) return a;
  FpPoly r = a;
  for (auto& x : r.coeffs_)
    x = static_cast<std::uint32_t>((static_cast<std::uint64_t>(x) * c) % a.p_);
  return r;
}

FpPoly shift_up(const FpPoly& a, std::size_t k) {
  if (a.is_zero() || k == 0) return a;
  if (static_cast<long>(a.len_ + k) - 1 > kDegreeCap)
    throw DegreeCapExceeded("shifted degree exceeds 2^25");
  FpPoly r(a.p_);
  if (a.p_ == 2) {
    r.bits_.assign(words_for(a.len_ + k) + 1, 0);
    xor_shifted(r.bits_, a.bits_, k);
  } else {
    r.coeffs_.assign(k, 0);
    r.coeffs_.insert(r.coeffs_.end(), a.coeffs_.begin(), a.coeffs_.end());
  }
  r.trim();
  return r;
}

FpPoly stretch(const FpPoly& a, std::size_t q) {
  if (q == 1 || a.is_constant()) return a;
  if (static_cast<double>(a.degree()) * static_cast<double>(q) > static_cast<double>(kDegreeCap))
    throw DegreeCapExceeded("stretched degree exceeds 2^25");
  FpPoly r(a.p_);
  const std::size_t len = (a.len_ - 1) * q + 1;
  if (a.p_ == 2) {
    r.bits_.assign(words_for(len), 0);
    for (std::size_t i = 0; i < a.len_; ++i)
      if (a[i]) r.bits_[(i * q) / 64] |= std::uint64_t{1} << ((i * q) % 64);
  } else {
    r.coeffs_.assign(len, 0);
    for (std::size_t i = 0; i < a.len_; ++i) r.coeffs_[i * q] = a.coeffs_[i];
  }
  r.trim();
  return r;
}

std::pair<FpPoly, FpPoly> divmod(const FpPoly& a, const FpPoly& b) {
  a.check_same_field(b);
  if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
  if (a.len_ < b.len_) return {FpPoly(a.p_), a};
  const std::size_t db = b.len_ - 1;
  if (a.p_ == 2) {
    FpPoly q(2), r = a;
    q.bits_.assign(words_for(a.len_ - db), 0);
    std::vector<std::uint64_t> work = r.bits_;
    for (std::size_t i = a.len_; i-- > db;) {
      if ((work[i / 64] >> (i % 64)) & 1u) {
        xor_shifted(work, b.bits_, i - db);
        q.bits_[(i - db) / 64] |= std::uint64_t{1} << ((i - db) % 64);
      }
    }
    r.bits_ = std::move(work);
    r.trim();
    q.trim();
    return {q, r};
  }
  const PrimeField F(a.p_);
  const std::uint32_t inv_lead = F.inv(b.lead());
  std::vector<std::uint32_t> rem = a.coeffs_;
  std::vector<std::uint32_t> quo(a.len_ - db, 0);
  for (std::size_t i = a.len_; i-- > db;) {
    const std::uint32_t c = F.mul(rem[i], inv_lead);
    if (c == 0) continue;
    quo[i - db] = c;
    for (std::size_t j = 0; j <= db; ++j) rem[i - db + j] = F.sub(rem[i - db + j], F.mul(c, b.coeffs_[j]));
  }
  rem.resize(db);
  return {FpPoly(a.p_, quo), FpPoly(a.p_, rem)};
}

FpPoly operator/(const FpPoly& a, const FpPoly& b) { return divmod(a, b).first; }
FpPoly operator%(const FpPoly& a, const FpPoly& b) { return divmod(a, b).second; }

FpPoly monic(const FpPoly& a) {
  if (a.is_zero()) return a;
  return scale(a, PrimeField(a.p()).inv(a.lead()));
}

FpPoly derivative(const FpPoly& a) {
  if (a.degree() < 1) return FpPoly(a.p());
  std::vector<std::uint32_t> v(static_cast<std::size_t>(a.degree()));
  for (std::size_t i = 1; i <= static_cast<std::size_t>(a.degree()); ++i)
    v[i - 1] = static_cast<std::uint32_t>((static_cast<std::uint64_t>(a[i]) * (i % a.p())) % a.p());
  return FpPoly(a.p(), v);
}

FpPoly gcd(FpPoly a, FpPoly b) {
  while (!b.is_zero()) {
    FpPoly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

std::optional<FpPoly> inverse_mod(const FpPoly& a, const FpPoly& m) {
  const std::uint32_t p = m.p();
  FpPoly r0 = m, r1 = a % m;
  FpPoly s0(p), s1 = FpPoly::constant(p, 1);
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    FpPoly s = s0 - q * s1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (r0.degree() != 0) return std::nullopt;
  return scale(s0, PrimeField(p).inv(r0.lead())) % m;
}

std::uint32_t evaluate(const FpPoly& a, std::uint32_t x) {
  const PrimeField F(a.p());
  std::uint32_t acc = 0;
  for (long i = a.degree(); i >= 0; --i) acc = F.add(F.mul(acc, x), a[static_cast<std::size_t>(i)]);
  return acc;
}

FpPoly pow(const FpPoly& a, const BigInt& e) {
  const std::uint32_t p = a.p();
  if (e < 0) throw Error("negative polynomial exponent");
  if (e == 0) return FpPoly::constant(p, 1);
  if (a.is_zero()) return a;
  if (a.is_constant()) return FpPoly::constant(p, PrimeField(p).pow(a[0], e));
  if (BigInt(a.degree()) * e > kDegreeCap)
    throw DegreeCapExceeded("power degree " + BigInt(BigInt(a.degree()) * e).get_str() +
                            " exceeds 2^25");
  std::vector<FpPoly> small{FpPoly::constant(p, 1)};
  for (std::uint32_t d = 1; d < p; ++d) small.push_back(small.back() * a);
  FpPoly result = FpPoly::constant(p, 1);
  BigInt rest = e;
  std::size_t place = 1;  // p^i
  while (rest > 0) {
    const unsigned long digit = BigInt(rest % p).get_ui();
    rest /= p;
    if (digit != 0) result = result * stretch(small[digit], place);
    if (rest > 0) place *= p;
  }
  return result;
}

FpPoly powmod(const FpPoly& base, const BigInt& e, const FpPoly& m) {
  if (m.degree() < 1) throw Error("powmod modulus must have positive degree");
  if (e < 0) throw Error("powmod with negative exponent");
  FpPoly result = FpPoly::constant(m.p(), 1);
  FpPoly b = base % m;
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = (result * result) % m;
    if (mpz_tstbit(e.get_mpz_t(), i)) result = (result * b) % m;
  }
  return result % m;
}

std::string format(const FpPoly& a) {
  if (a.is_zero()) return "0";
  std::string out;
  for (long i = a.degree(); i >= 0; --i) {
    const std::uint32_t c = a[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    if (!out.empty()) out += " + ";
    std::string coef = std::to_string(c);
    if (i == 0) {
      out += coef;
    } else {
      if (c != 1) out += coef + "*";
      out += "t";
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out;
}

// ---------------------------------------------------------------- FpRational

FpRational::FpRational(FpPoly num) : num_(std::move(num)), den_(FpPoly::constant(num_.p(), 1)) {}

FpRational::FpRational(FpPoly num, FpPoly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw DivisionByZero("rational function with zero denominator");
  if (num_.p() != den_.p()) throw Error("numerator and denominator over different fields");
  if (num_.is_zero()) {
    den_ = FpPoly::constant(num_.p(), 1);
    return;
  }
  FpPoly g = gcd(num_, den_);
  if (!g.is_one()) {
    num_ = num_ / g;
    den_ = den_ / g;
  }
  const std::uint32_t lc = den_.lead();
  if (lc != 1) {
    const std::uint32_t inv = PrimeField(num_.p()).inv(lc);
    num_ = scale(num_, inv);
    den_ = scale(den_, inv);
  }
}

FpRational FpRational::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of the zero function");
  return FpRational(den_, num_);
}

FpRational operator+(const FpRational& a, const FpRational& b) {
  if (a.den_ == b.den_) return FpRational(a.num_ + b.num_, a.den_);
  return FpRational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

FpRational operator-(const FpRational& a) {
  FpRational r = a;
  r.num_ = -r.num_;
  return r;
}

FpRational operator-(const FpRational& a, const FpRational& b) { return a + (-b); }

FpRational operator*(const FpRational& a, const FpRational& b) {
  return FpRational(a.num_ * b.num_, a.den_ * b.den_);
}

FpRational operator/(const FpRational& a, const FpRational& b) {
  if (b.is_zero()) throw DivisionByZero("division by the zero function");
  return FpRational(a.num_ * b.den_, a.den_ * b.num_);
}

FpRational pow(const FpRational& a, const BigInt& e) {
  if (e < 0) return pow(a.inverse(), -e);
  // Coprime inputs stay coprime, so no gcd is needed.
  return FpRational(pow(a.num(), e), pow(a.den(), e));
}

std::string format(const FpRational& a) {
  auto wrap = [](const FpPoly& f) {
    std::string s = format(f);
    return f.nonzero_terms() > 1 ? "(" + s + ")" : s;
  };
  if (a.is_polynomial()) return format(a.num());
  return wrap(a.num()) + "/" + wrap(a.den());
}

}  // namespace retset
