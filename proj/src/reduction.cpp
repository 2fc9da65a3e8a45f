#include "retset/reduction.hpp"

#include <numeric>

namespace retset {

namespace {

using Index = Eigen::Index;

std::size_t width_of(const GroupContext& ctx) { return ctx.basis->size(); }

PointRep wide(const PointRep& v, std::size_t s) {
  if (v.width() > s) throw Error("basis mismatch: point uses primes outside the session basis");
  return widen(v, s);
}

BigInt as_int(const Rational& x) {
  if (!is_integer(x)) throw Error("recurrence term is not an integer");
  return BigInt(x);
}

// (x - 1) * minimal polynomial of A
QPoly q_polynomial(const CayleyRelation& rel) {
  std::vector<Rational> c(rel.c.begin(), rel.c.end());
  c.emplace_back(1);
  return QPoly(std::move(c)) * QPoly::linear_root(1);
}

// The sequence n -> e . w_n - shift, sharing the recurrence of the w_j.
Lrs combine_coordinates(const std::vector<Lrs>& w, const IntVector& e, const BigInt& shift) {
  const std::size_t m = w.front().order();
  std::vector<Rational> init(m, Rational(-shift));
  for (std::size_t j = 0; j < w.size(); ++j) {
    const BigInt& ej = e(static_cast<Index>(j));
    if (ej == 0) continue;
    for (std::size_t n = 0; n < m; ++n) init[n] += Rational(ej) * w[j].init[n];
  }
  return {w.front().coeffs, std::move(init)};
}

BigInt dot(const IntVector& a, const IntVector& b) {
  BigInt s = 0;
  for (Index i = 0; i < a.size(); ++i) s += a(i) * b(i);
  return s;
}

// {n : z_n = 0 mod M} from the eventual period of z mod M.
IndexSet congruence_zeros(const Lrs& z, const BigInt& M) {
  if (M == 1) return IndexSet::all();
  const auto [pre, per] = period_mod(z, M);
  const auto t = terms(z, BigInt(pre + per).get_ui());
  IndexSet out;
  for (unsigned long n = 0; n < t.size(); ++n) {
    if (floor_mod(BigInt(t[n]), M) != 0) continue;
    if (n < pre) {
      out.finite.insert(BigInt(n));
    } else {
      out.aps.push_back({per, BigInt(n)});
    }
  }
  return canonicalize(out);
}

void meet(Solution& acc, const Solution& part, const std::string& label) {
  acc.set = canonicalize(intersect(acc.set, part.set));
  CertStatus st = part.status;
  for (auto& note : st.notes) note = label + ": " + note;
  acc.status = combine(acc.status, st);
}

std::string coordinate_label(const GroupContext& ctx, std::size_t j) {
  const std::size_t n = ctx.dim(), s = width_of(ctx);
  if (j < n) return "torsion of x" + std::to_string(j + 1);
  const std::size_t i = (j - n) / s, q = (j - n) % s;
  return "exponent of " + format(ctx.basis->primes()[q]) + " in x" + std::to_string(i + 1);
}

}  // namespace

GroupContext make_context(const MonomialAffineMap& phi, const TorusPoint& alpha, SupportBasis& basis) {
  GroupContext ctx;
  ctx.basis = &basis;
  if (phi.A.rows() != phi.A.cols() || phi.A.rows() != static_cast<Index>(alpha.size()) ||
      phi.y.size() != alpha.size())
    throw InputError("map and starting point have different dimensions");
  ctx.phi = {phi.A, encode(phi.y, basis), basis.p()};
  ctx.alpha = encode(alpha, basis);
  ctx.relation = cayley_recurrence(phi.A);
  const std::size_t s = basis.size();
  ctx.phi.y = widen(ctx.phi.y, s);
  ctx.alpha = widen(ctx.alpha, s);
  PointRep a = ctx.alpha, y = ctx.phi.y, sum = zero_rep(ctx.dim(), s);
  for (std::size_t i = 0; i < ctx.relation.ell; ++i) {
    ctx.phi0_alpha.push_back(a);
    sum = sum + y;
    ctx.q.push_back(sum);
    a = apply_matrix(phi.A, a);
    y = apply_matrix(phi.A, y);
  }
  return ctx;
}

OrbitSequences build_orbit_sequences(const GroupContext& ctx) {
  const std::size_t ell = ctx.relation.ell;
  if (ell < 1) throw Error("orbit sequences need l >= 1");
  std::vector<Rational> c(ctx.relation.c.begin(), ctx.relation.c.end());
  c.emplace_back(1);
  const QPoly v_poly(c);
  const QPoly u_poly = q_polynomial(ctx.relation);
  OrbitSequences seqs;
  for (std::size_t i = 0; i < ell; ++i) {
    std::vector<Rational> init(ell, Rational(0));
    init[i] = 1;
    seqs.v.push_back(from_polynomial(v_poly, init));
  }
  for (std::size_t i = 1; i <= ell; ++i) {
    std::vector<Rational> init(ell + 1, Rational(0));
    init[i] = 1;
    seqs.u.push_back(from_polynomial(u_poly, init));
  }
  PointRep x = ctx.alpha;
  for (std::size_t n = 0; n <= 2 * ell + 4; ++n) {
    if (!same_point(reconstruct(ctx, seqs, n), wide(x, width_of(ctx)), ctx.phi.p)) throw Error("orbit sequences fail to reconstruct the orbit");
    x = step(ctx.phi, x);
  }
  return seqs;
}

PointRep reconstruct(const GroupContext& ctx, const OrbitSequences& seqs, const BigInt& n) {
  const std::size_t s = width_of(ctx);
  PointRep out = zero_rep(ctx.dim(), s);
  for (std::size_t i = 0; i < seqs.u.size(); ++i) out = out + as_int(eval(seqs.u[i], n)) * wide(ctx.q[i], s);
  for (std::size_t i = 0; i < seqs.v.size(); ++i)
    out = out + as_int(eval(seqs.v[i], n)) * wide(ctx.phi0_alpha[i], s);
  return out;
}

std::vector<Lrs> coordinate_sequences(const GroupContext& ctx, const OrbitSequences& seqs) {
  const QPoly f = q_polynomial(ctx.relation);
  const std::size_t m = static_cast<std::size_t>(f.degree());
  std::vector<IntVector> W;
  for (std::size_t n = 0; n < m; ++n) W.push_back(flatten(reconstruct(ctx, seqs, n)));
  std::vector<Lrs> out;
  for (Index j = 0; j < W.front().size(); ++j) {
    std::vector<Rational> init;
    for (const auto& w : W) init.emplace_back(w(j));
    out.push_back(from_polynomial(f, std::move(init)));
  }
  return out;
}

Solution solve_coset(const GroupContext& ctx, const OrbitSequences& seqs, const PointRep& R, const Subgroup& H,
                     const SearchBounds& bounds) {
  if (R.dim() != ctx.dim() || H.dim() != ctx.dim()) throw Error("basis mismatch: point dimension");
  if (H.width() != width_of(ctx)) throw Error("basis mismatch: subgroup built over a different basis size");
  const auto w = coordinate_sequences(ctx, seqs);
  const IntVector r = flatten(wide(R, width_of(ctx)));
  const auto cond = H.conditions();
  Solution out{IndexSet::all(), {}};
  for (std::size_t i = 0; i < cond.equalities.size(); ++i) {
    const IntVector& e = cond.equalities[i];
    if (e.isZero()) continue;
    const Lrs z = combine_coordinates(w, e, dot(e, r));
    meet(out, solve_eq_const(z, 0, bounds), "lattice equation " + std::to_string(i + 1));
    if (out.set.empty()) return out;
  }
  for (const auto& [c, M] : cond.congruences) {
    const Lrs z = combine_coordinates(w, c, dot(c, r));
    meet(out, {congruence_zeros(z, M), {}}, "congruence mod " + M.get_str());
    if (out.set.empty()) return out;
  }
  return out;
}

unsigned long torsion_period(const PointRep& R2, std::uint32_t p, unsigned long k) {
  const BigInt q = ipow(BigInt(p), k);
  BigInt s = 1;
  for (Index i = 0; i < R2.tors.size(); ++i) {
    BigInt g;
    const BigInt t = floor_mod(R2.tors(i), BigInt(p - 1));
    mpz_gcd(g.get_mpz_t(), t.get_mpz_t(), BigInt(p - 1).get_mpz_t());
    const BigInt order_of_point = BigInt(p - 1) / g;
    const BigInt o = multiplicative_order(floor_mod(q, order_of_point), order_of_point);
    mpz_lcm(s.get_mpz_t(), s.get_mpz_t(), o.get_mpz_t());
  }
  return s.get_ui();
}

Solution solve_forbit(const GroupContext& ctx, const OrbitSequences& seqs, const PointRep& R1, const PointRep& R2,
                      unsigned long k, const SearchBounds& bounds) {
  if (R1.dim() != ctx.dim() || R2.dim() != ctx.dim()) throw Error("basis mismatch: point dimension");
  const std::uint32_t p = ctx.phi.p;
  if (torsion_period(R2, p, k) != 1) throw Error("torsion part of the orbit generator is not fixed by p^k");
  const std::size_t s = width_of(ctx), n = ctx.dim();
  const auto w = coordinate_sequences(ctx, seqs);
  const IntVector r1 = flatten(wide(R1, s)), r2 = flatten(wide(R2, s));
  const std::size_t total = static_cast<std::size_t>(r1.size());
  Solution out{IndexSet::all(), {}};
  auto unit = [&](std::size_t j) {
    IntVector e = IntVector::Zero(static_cast<Index>(total));
    e(static_cast<Index>(j)) = 1;
    return e;
  };
  // Torsion coordinates: p^(k m) acts trivially mod p - 1.
  if (p > 2) {
    for (std::size_t j = 0; j < n; ++j) {
      const Lrs z = combine_coordinates(w, unit(j), r1(static_cast<Index>(j)) + r2(static_cast<Index>(j)));
      meet(out, {congruence_zeros(z, BigInt(p - 1)), {}}, coordinate_label(ctx, j));
    }
  }
  // Exponent coordinates: w_j = r1_j + p^(k m) r2_j.  The first j with
  // r2_j != 0 carries the p-power equation; the others are tied to it.
  std::optional<std::size_t> pivot;
  for (std::size_t j = n; j < total; ++j) {
    const Index J = static_cast<Index>(j);
    if (r2(J) == 0) {
      meet(out, solve_eq_const(w[j], Rational(r1(J)), bounds), coordinate_label(ctx, j));
    } else if (!pivot) {
      pivot = j;
      meet(out, solve_eq_parith(w[j], Rational(r2(J)), Rational(r1(J)), k, p, bounds), coordinate_label(ctx, j));
    } else {
      // r2_pivot (w_j - r1_j) = r2_j (w_pivot - r1_pivot)
      const Index P = static_cast<Index>(*pivot);
      IntVector e = IntVector::Zero(static_cast<Index>(total));
      e(J) = r2(P);
      e(P) -= r2(J);
      const Lrs z = combine_coordinates(w, e, r2(P) * r1(J) - r2(J) * r1(P));
      meet(out, solve_eq_const(z, 0, bounds), coordinate_label(ctx, j));
    }
    if (out.set.empty()) return out;
  }
  return out;
}

Solution simplify_if_infinite_ap(const Solution& S, const ApHooks& hooks) {
  if (S.set.aps.empty()) return S;
  BigInt start = 0, L = 1;
  for (const auto& A : S.set.aps) {
    start = std::max(start, A.l);
    mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), A.m.get_mpz_t());
  }
  if (!S.set.finite.empty()) start = std::max(start, *S.set.finite.rbegin());
  const auto members = elements_upto(S.set, start + 4 * L);
  BigInt a0 = L;
  for (std::size_t i = 1; i < members.size(); ++i) a0 = std::min(a0, BigInt(members[i] - members[i - 1]));
  std::set<BigInt> residues;
  for (const auto& x : members) residues.insert(floor_mod(x, a0));
  IndexSet candidate;
  for (const auto& j : residues) candidate.aps.push_back({a0, j});
  candidate = canonicalize(candidate);
  if (S.status.proved()) {
    // A proved set only changes representation.
    if (equality_up_to(candidate, S.set, start + 4 * L + a0)) return {candidate, S.status};
    return S;
  }
  for (const auto& A : candidate.aps) {
    const BigInt count = (hooks.horizon - A.l) / A.m + 1;
    const std::size_t samples = std::max<std::size_t>(hooks.samples, 2);
    for (std::size_t i = 0; i < samples; ++i) {
      const BigInt idx = count * BigInt(static_cast<unsigned long>(i)) / BigInt(static_cast<unsigned long>(samples));
      if (!hooks.check(A.l + idx * A.m)) return S;
    }
  }
  Solution out{candidate, combine(S.status, CertStatus::verified(hooks.horizon,
                                                                    "progression with gap " + a0.get_str() +
                                                                        " checked on sampled members"))};
  return out;
}

}  // namespace retset
